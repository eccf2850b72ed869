// SPDX-License-Identifier: Apache-2.0
//
// beamsel: beamspace MIMO beam selection library and simulator
// Copyright (C) 2026 The beamsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "beamsel/errors.hpp"
#include "beamsel/linalg.hpp"
#include "beamsel/rankone.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

using namespace beamsel;

namespace {

const double kSqrt2 = std::sqrt(2.0);

RealVector vec(std::initializer_list<double> v)
{
    RealVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        out[i++] = x;
    return out;
}

// Random strictly descending poles with positive weights.
SecularProblem random_problem(int k, Direction dir, std::mt19937_64 &gen)
{
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_real_distribution<double> w(0.01, 3.0);
    SecularProblem p;
    p.direction = dir;
    p.poles.resize(k);
    p.weights.resize(k);
    for (int i = 0; i < k; ++i) {
        p.poles[i] = u(gen);
        p.weights[i] = w(gen);
    }
    std::sort(p.poles.data(), p.poles.data() + k, std::greater<>());
    return p;
}

// Gram of h augmented by one row whose rank-one vector is r (r r^H added).
ComplexMatrix plus_outer(const ComplexMatrix &g, const ComplexVector &r) { return g + r * r.adjoint(); }

// Largest |<q_i, ref_i>| shortfall, only over well separated eigenvalues.
double phase_mismatch(const RealVector &vals, const ComplexMatrix &v, const ComplexMatrix &g)
{
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
    const Eigen::Index k = vals.size();
    const double top = std::max(std::abs(vals[0]), 1.0);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        const double gap_up = i > 0 ? vals[i - 1] - vals[i] : top;
        const double gap_dn = i + 1 < k ? vals[i] - vals[i + 1] : top;
        if (std::min(gap_up, gap_dn) < 1e-3 * top)
            continue;
        const ComplexVector ref = es.eigenvectors().col(k - 1 - i);
        worst = std::max(worst, 1.0 - std::abs(ref.dot(v.col(i))));
    }
    return worst;
}

} // namespace

TEST_SUITE("rankone") {

TEST_CASE("secular roots of the 2x2 downdate and update")
{
    SecularProblem down{vec({3.0, 1.0}), vec({1.0, 1.0}), Direction::downdate};
    auto r = secular_roots(down);
    CHECK(std::abs(r[0] - (1.0 + kSqrt2)) < 1e-12);
    CHECK(std::abs(r[1] - (1.0 - kSqrt2)) < 1e-12);
    ComplexMatrix g(2, 2);
    g << 2.0, -1.0, -1.0, 0.0;
    const auto [hi, lo] = oracle::eig2(g);
    CHECK(std::abs(r[0] - hi) < 1e-12);
    CHECK(std::abs(r[1] - lo) < 1e-12);

    SecularProblem up{vec({2.0, 0.0}), vec({1.0, 1.0}), Direction::update};
    r = secular_roots(up);
    CHECK(std::abs(r[0] - (2.0 + kSqrt2)) < 1e-12);
    CHECK(std::abs(r[1] - (2.0 - kSqrt2)) < 1e-12);
    g << 3.0, 1.0, 1.0, 1.0;
    const auto [uhi, ulo] = oracle::eig2(g);
    CHECK(std::abs(r[0] - uhi) < 1e-12);
    CHECK(std::abs(r[1] - ulo) < 1e-12);
}

TEST_CASE("zero weights leave the poles as roots")
{
    for (auto dir : {Direction::downdate, Direction::update}) {
        SecularProblem p{vec({5.0, 2.0, 1.0}), vec({0.0, 0.0, 0.0}), dir};
        const auto r = secular_roots(p);
        CHECK(r[0] == 5.0);
        CHECK(r[1] == 2.0);
        CHECK(r[2] == 1.0);
    }
}

TEST_CASE("broken preconditions raise BracketFailure")
{
    SecularProblem unsorted{vec({1.0, 3.0}), vec({1.0, 1.0}), Direction::downdate};
    CHECK_THROWS_AS(secular_roots(unsorted), BracketFailure);
    SecularProblem negative{vec({3.0, 1.0}), vec({1.0, -1.0}), Direction::update};
    CHECK_THROWS_AS(secular_roots(negative), BracketFailure);
    SecularProblem ragged{vec({3.0, 1.0}), vec({1.0}), Direction::update};
    CHECK_THROWS_AS(secular_roots(ragged), BracketFailure);
}

TEST_CASE("secular residual bound on random problems")
{
    std::mt19937_64 gen(101);
    for (int rep = 0; rep < 300; ++rep) {
        const auto dir = rep % 2 ? Direction::update : Direction::downdate;
        const auto p = random_problem(1 + rep % 16, dir, gen);
        const auto roots = secular_roots(p);
        for (double x : roots) {
            double scale = 1.0;
            for (Eigen::Index i = 0; i < p.poles.size(); ++i)
                scale += p.weights[i] / std::abs(p.poles[i] - x);
            CHECK(std::abs(secular_function(p, x)) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("interlacing is strict for non-deflated roots")
{
    std::mt19937_64 gen(202);
    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const auto dir = rep % 2 ? Direction::update : Direction::downdate;
        const int k = 1 + rep % 16;
        const auto p = random_problem(k, dir, gen);
        const auto r = secular_roots(p);
        const double w = p.weights.sum();
        if (k == 1) {
            // One component: the root is the bracket end d -/+ |z|^2 itself.
            const double exact = dir == Direction::downdate ? p.poles[0] - w : p.poles[0] + w;
            if (std::abs(r[0] - exact) > 8 * std::numeric_limits<double>::epsilon() * (std::abs(p.poles[0]) + w))
                ++violations;
            continue;
        }
        for (int i = 0; i < k; ++i) {
            if (dir == Direction::downdate) {
                const double lower = i + 1 < k ? p.poles[i + 1] : p.poles[k - 1] - w;
                if (!(lower < r[i] && r[i] < p.poles[i]))
                    ++violations;
            } else {
                const double upper = i > 0 ? p.poles[i - 1] : p.poles[0] + w;
                if (!(p.poles[i] < r[i] && r[i] < upper))
                    ++violations;
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("downdate secular function decreases across each bracket")
{
    std::mt19937_64 gen(303);
    for (int rep = 0; rep < 200; ++rep) {
        const int k = 1 + rep % 12;
        const auto p = random_problem(k, Direction::downdate, gen);
        const double w = p.weights.sum();
        for (int i = 0; i < k; ++i) {
            const double hi = p.poles[i];
            const double lo = i + 1 < k ? p.poles[i + 1] : p.poles[k - 1] - w;
            const double shrink = 1e-9 * (hi - lo);
            if (i + 1 < k)
                CHECK(secular_function(p, lo + shrink) > 0.0);
            else // no pole below the last bracket: f(d_K - W) >= 0 only
                CHECK(secular_function(p, lo) >= -1e-12);
            CHECK(secular_function(p, hi - shrink) < 0.0);
            double prev = secular_function(p, lo + shrink);
            for (int s = 1; s <= 20; ++s) {
                const double x = lo + shrink + (hi - lo - 2 * shrink) * s / 20.0;
                const double f = secular_function(p, x);
                CHECK(f < prev);
                prev = f;
            }
        }
    }
}

TEST_CASE("eigvec_from_root examples")
{
    ComplexVector z(2);
    z << 1.0, 1.0;
    auto q = eigvec_from_root(vec({3.0, 1.0}), z, 1.0 + kSqrt2);
    CHECK(std::abs(q.norm() - 1.0) < 1e-12);
    // Sign fixed so the first entry is positive.
    q *= std::conj(q[0]) / std::abs(q[0]);
    CHECK(std::abs(q[0] - Complex(0.92388, 0.0)) < 1e-5);
    CHECK(std::abs(q[1] - Complex(-0.38268, 0.0)) < 1e-5);

    ComplexVector z1(2);
    z1 << 1.0, 0.0;
    q = eigvec_from_root(vec({3.0, 1.0}), z1, 2.0);
    CHECK(std::abs(std::abs(q[0]) - 1.0) < 1e-14);
    CHECK(q[1] == Complex(0.0));

    // Update direction, checked against a direct solve of diag(2,0) + z z^H.
    ComplexMatrix g(2, 2);
    g << 3.0, 1.0, 1.0, 1.0;
    const double root = 2.0 + kSqrt2;
    q = eigvec_from_root(vec({2.0, 0.0}), z, root);
    CHECK(oracle::residual(g, root, q) <= 1e-8 * root);
    const ComplexMatrix down = ComplexMatrix(vec({3.0, 1.0}).cast<Complex>().asDiagonal()) - z * z.adjoint();
    CHECK(oracle::residual(down, 1.0 + kSqrt2, eigvec_from_root(vec({3.0, 1.0}), z, 1.0 + kSqrt2)) <
          1e-8 * (1.0 + kSqrt2));
}

TEST_CASE("eigvec_from_root on a pole raises SingularShift")
{
    ComplexVector z(2);
    z << 1.0, 1.0;
    CHECK_THROWS_AS(eigvec_from_root(vec({3.0, 1.0}), z, 3.0), SingularShift);
    CHECK_THROWS_AS(eigvec_from_root(vec({3.0, 1.0}), z, 1.0 + 1e-16), SingularShift);
}

TEST_CASE("zero vector leaves the system unchanged")
{
    std::mt19937_64 gen(4);
    const auto sys = hermitian_eig(gram(oracle::random_matrix(6, 3, gen)));
    const ComplexVector zero = ComplexVector::Zero(3);
    for (const auto &res : {downdate_eigs(sys, zero), update_eigs(sys, zero)}) {
        CHECK((res.new_values - sys.values).norm() == 0.0);
        CHECK((res.new_vectors - sys.vectors).norm() == 0.0);
        CHECK(res.deflated_indices.size() == 3);
    }
}

TEST_CASE("downdate of the last row recovers the identity")
{
    ComplexMatrix h(3, 2);
    h << 1.0, 0.0, 0.0, 1.0, 1.0, 1.0;
    const auto sys = hermitian_eig(gram(h));
    const auto res = downdate_eigs(sys, h.row(2).adjoint());
    CHECK(std::abs(res.new_values[0] - 1.0) < 1e-12);
    CHECK(std::abs(res.new_values[1] - 1.0) < 1e-12);
    CHECK((reconstruct(to_eigen_system(res)) - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("update with disjoint support goes through deflation")
{
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    const auto sys = hermitian_eig(d);
    ComplexVector h(2);
    h << 0.0, 1.0;
    const auto res = update_eigs(sys, h);
    CHECK(res.new_values[0] == doctest::Approx(1.0));
    CHECK(res.new_values[1] == doctest::Approx(1.0));
    CHECK(res.deflated_indices.size() == 1);
    CHECK(orthonormality_error(res.new_vectors) < 1e-12);
}

TEST_CASE("coincident poles are merged before root finding")
{
    std::mt19937_64 gen(12);
    const auto sys = hermitian_eig(ComplexMatrix::Identity(4, 4));
    const ComplexVector h = oracle::random_vector(4, gen);
    const auto res = update_eigs(sys, h);
    CHECK(std::abs(res.new_values[0] - (1.0 + h.squaredNorm())) < 1e-12);
    for (int i = 1; i < 4; ++i)
        CHECK(std::abs(res.new_values[i] - 1.0) < 1e-12);
    const ComplexMatrix g = plus_outer(ComplexMatrix::Identity(4, 4), h);
    CHECK((reconstruct(to_eigen_system(res)) - g).norm() < 1e-10);
    CHECK(reduced_secular_problem(sys, h, Direction::update).poles.size() == 1);
}

TEST_CASE("random downdates and updates match a full eigensolve")
{
    std::mt19937_64 gen(42);
    std::uniform_int_distribution<int> kd(1, 8);
    for (int rep = 0; rep < 200; ++rep) {
        const int k = kd(gen);
        const int n = std::uniform_int_distribution<int>(2, 16)(gen);
        const ComplexMatrix h = oracle::random_matrix(n, k, gen);
        const auto sys = hermitian_eig(gram(h));
        const double top = std::max(sys.values[0], 1e-300);

        const int j = std::uniform_int_distribution<int>(0, n - 1)(gen);
        ComplexMatrix rest(n - 1, k);
        for (int r = 0, c = 0; r < n; ++r)
            if (r != j)
                rest.row(c++) = h.row(r);
        const ComplexMatrix g_down = oracle::gram(rest);
        const auto down = downdate_eigs(sys, h.row(j).adjoint());
        const auto ref_down = oracle::eigenvalues(g_down);
        CHECK((down.new_values - ref_down).cwiseAbs().maxCoeff() <= 1e-8 * top);
        CHECK(orthonormality_error(down.new_vectors) < 1e-10);
        for (int i = 0; i < k; ++i)
            CHECK(oracle::residual(g_down, down.new_values[i], down.new_vectors.col(i)) <= 1e-7 * top);
        CHECK(phase_mismatch(down.new_values, down.new_vectors, g_down) < 1e-8);
        CHECK(downdate_values(sys, h.row(j).adjoint()) == down.new_values);

        const ComplexVector extra = oracle::random_vector(k, gen);
        const ComplexMatrix g_up = plus_outer(oracle::gram(h), extra);
        const auto up = update_eigs(sys, extra);
        const double top_up = up.new_values[0];
        CHECK((up.new_values - oracle::eigenvalues(g_up)).cwiseAbs().maxCoeff() <= 1e-8 * top_up);
        CHECK(orthonormality_error(up.new_vectors) < 1e-10);
        for (int i = 0; i < k; ++i)
            CHECK(oracle::residual(g_up, up.new_values[i], up.new_vectors.col(i)) <= 1e-7 * top_up);
        CHECK(phase_mismatch(up.new_values, up.new_vectors, g_up) < 1e-8);
        CHECK(update_values(sys, extra) == up.new_values);
    }
}

TEST_CASE("update then downdate of the same vector round-trips")
{
    std::mt19937_64 gen(77);
    for (int rep = 0; rep < 200; ++rep) {
        const int k = 1 + rep % 8;
        const auto sys = hermitian_eig(gram(oracle::random_matrix(k + 3, k, gen)));
        const ComplexVector h = oracle::random_vector(k, gen);
        const auto back = downdate_eigs(to_eigen_system(update_eigs(sys, h)), h);
        CHECK((back.new_values - sys.values).cwiseAbs().maxCoeff() <= 1e-6 * sys.values[0]);
    }
}

TEST_CASE("removing a vector that is not part of the matrix is rejected")
{
    const auto sys = hermitian_eig(ComplexMatrix::Identity(2, 2));
    ComplexVector h(2);
    h << 2.0, 0.0;
    CHECK_THROWS_AS(downdate_eigs(sys, h), PsdViolation);
    CHECK_THROWS_AS(downdate_values(sys, h), PsdViolation);
    CHECK_THROWS_AS(update_eigs(sys, ComplexVector::Ones(3)), DimensionMismatch);
}

TEST_CASE("secular solve plus eigenvectors costs O(K^2)")
{
    std::mt19937_64 gen(9);
    auto cost = [&](int k) {
        std::uint64_t total = 0;
        for (int rep = 0; rep < 50; ++rep) {
            const auto p = random_problem(k, rep % 2 ? Direction::update : Direction::downdate, gen);
            ComplexVector z = p.weights.cwiseSqrt().cast<Complex>();
            OpCounter ops;
            const auto roots = secular_roots(p, &ops);
            for (double r : roots)
                eigvec_from_root(p.poles, z, r, &ops);
            total += ops.count();
        }
        return static_cast<double>(total);
    };
    const double ratio = cost(16) / cost(8);
    CHECK(ratio >= 2.0);
    CHECK(ratio <= 6.0);
}

}
