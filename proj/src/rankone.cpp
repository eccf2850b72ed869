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

#include "beamsel/rankone.hpp"

#include "beamsel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace beamsel {

namespace {

constexpr double kDeflateRelative = 1e-12;
constexpr double kPoleMergeRelative = 1e-12;
constexpr double kPsdSlack = 1e-8;
constexpr double kOrthoTolerance = 1e-10;
constexpr double kSingularShift = 1e-14;
constexpr int kMaxBisection = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double direction_sign(Direction d) { return d == Direction::downdate ? -1.0 : 1.0; }

// Root expressed as poles[origin] + offset. Keeping the offset separate
// preserves (d_i - root) to full relative precision near the origin pole.
struct ShiftedRoot {
    Eigen::Index origin;
    double offset;
};

// 1 + sign * sum w_i / (delta_i - tau), delta_i = d_i - d_origin
double shifted_secular(const RealVector &delta, const RealVector &weights, double sign, double tau)
{
    double acc = 0.0;
    for (Eigen::Index i = 0; i < delta.size(); ++i)
        acc += weights[i] / (delta[i] - tau);
    return 1.0 + sign * acc;
}

void check_active(const RealVector &poles, const RealVector &weights)
{
    if (poles.size() != weights.size())
        throw BracketFailure("secular problem: poles and weights differ in length");
    for (Eigen::Index i = 0; i < poles.size(); ++i) {
        if (!std::isfinite(poles[i]) || !std::isfinite(weights[i]) || weights[i] < 0.0)
            throw BracketFailure("secular problem: invalid pole or weight at index " + std::to_string(i));
        if (i > 0 && !(poles[i] < poles[i - 1]))
            throw BracketFailure("secular problem: poles not strictly descending at index " + std::to_string(i));
    }
}

double bisect_offset(const RealVector &delta, const RealVector &weights, double sign, double lo, double hi,
                     Eigen::Index n, OpCounter *ops)
{
    const bool increasing = sign > 0.0;
    for (int iter = 0; iter < kMaxBisection; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi))
            break;
        if (hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi)))
            break;
        const double f = shifted_secular(delta, weights, sign, mid);
        tally(ops, static_cast<std::uint64_t>(n));
        if (std::isnan(f))
            throw BracketFailure("secular bisection produced NaN");
        if (f == 0.0)
            return mid;
        if ((f > 0.0) == increasing)
            hi = mid;
        else
            lo = mid;
    }
    return lo + 0.5 * (hi - lo);
}

// poles strictly descending, weights strictly positive.
std::vector<ShiftedRoot> solve_active(const RealVector &poles, const RealVector &weights, Direction direction,
                                      OpCounter *ops)
{
    const Eigen::Index n = poles.size();
    std::vector<ShiftedRoot> roots;
    roots.reserve(static_cast<std::size_t>(n));
    if (n == 0)
        return roots;

    const double sign = direction_sign(direction);
    const double total_weight = weights.sum();
    RealVector delta(n);

    auto shift_to = [&](Eigen::Index origin) {
        for (Eigen::Index i = 0; i < n; ++i)
            delta[i] = poles[i] - poles[origin];
        tally(ops, static_cast<std::uint64_t>(n));
    };

    for (Eigen::Index k = 0; k < n; ++k) {
        const bool outer = direction == Direction::downdate ? (k == n - 1) : (k == 0);
        if (outer) {
            // Downdate: (d_n - W, d_n). Update: (d_1, d_1 + W).
            shift_to(k);
            const double lo = direction == Direction::downdate ? -total_weight : 0.0;
            const double hi = direction == Direction::downdate ? 0.0 : total_weight;
            roots.push_back({k, bisect_offset(delta, weights, sign, lo, hi, n, ops)});
            continue;
        }

        const Eigen::Index upper = direction == Direction::downdate ? k : k - 1;
        const Eigen::Index lower = upper + 1;

        // Decide which pole the root is closer to by probing the midpoint.
        shift_to(upper);
        const double half = 0.5 * delta[lower]; // negative
        const double f_mid = shifted_secular(delta, weights, sign, half);
        tally(ops, static_cast<std::uint64_t>(n));
        if (std::isnan(f_mid))
            throw BracketFailure("secular function is NaN at bracket midpoint " + std::to_string(k));
        if (f_mid == 0.0) {
            roots.push_back({upper, half});
            continue;
        }
        const bool root_above_mid = direction == Direction::downdate ? f_mid > 0.0 : f_mid < 0.0;
        if (root_above_mid) {
            roots.push_back({upper, bisect_offset(delta, weights, sign, half, 0.0, n, ops)});
        } else {
            shift_to(lower);
            const double lower_half = 0.5 * (poles[upper] - poles[lower]);
            roots.push_back({lower, bisect_offset(delta, weights, sign, 0.0, lower_half, n, ops)});
        }
    }
    return roots;
}

double root_value(const RealVector &poles, const ShiftedRoot &r) { return poles[r.origin] + r.offset; }

// Eigenvector of diag(poles) +/- z z^H over the active coordinates.
ComplexVector shifted_eigvec(const RealVector &poles, const ComplexVector &z, const ShiftedRoot &r,
                             OpCounter *ops)
{
    const Eigen::Index n = poles.size();
    ComplexVector q(n);
    for (Eigen::Index i = 0; i < n; ++i)
        q[i] = z[i] / ((poles[i] - poles[r.origin]) - r.offset);
    tally(ops, static_cast<std::uint64_t>(2 * n));
    return q / q.norm();
}

void modified_gram_schmidt(ComplexMatrix &q, OpCounter *ops)
{
    const Eigen::Index n = q.cols();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            const Complex proj = q.col(i).dot(q.col(j));
            q.col(j) -= proj * q.col(i);
        }
        q.col(j) /= q.col(j).norm();
    }
    tally(ops, static_cast<std::uint64_t>(q.rows() * n * n));
}

// Projected and deflated problem, optionally carrying the rotated basis.
struct Prepared {
    RealVector poles;
    ComplexVector z;
    RealVector weights;
    ComplexMatrix vectors;
    std::vector<Eigen::Index> active;
    std::vector<Eigen::Index> deflated;
};

Prepared prepare(const EigenSystem &sys, const ComplexVector &h, bool with_vectors, OpCounter *ops)
{
    const Eigen::Index k = sys.dim();
    if (h.size() != k)
        throw DimensionMismatch("rank-one update: vector length " + std::to_string(h.size()) +
                                " does not match system order " + std::to_string(k));

    Prepared p;
    p.poles = sys.values;
    p.z = sys.vectors.adjoint() * h;
    tally(ops, static_cast<std::uint64_t>(k * k));
    p.weights = p.z.cwiseAbs2();
    if (with_vectors)
        p.vectors = sys.vectors;

    const double znorm = std::sqrt(p.weights.sum());
    if (znorm == 0.0) {
        p.weights.setZero();
        p.z.setZero();
        for (Eigen::Index i = 0; i < k; ++i)
            p.deflated.push_back(i);
        return p;
    }

    // Merge runs of coincident poles: a Householder reflector on the run moves
    // all of its z weight onto the first member.
    const double pole_tol = kPoleMergeRelative * std::max(k > 0 ? std::abs(p.poles[0]) : 0.0, 1.0);
    Eigen::Index start = 0;
    while (start < k) {
        Eigen::Index end = start + 1;
        while (end < k && std::abs(p.poles[end - 1] - p.poles[end]) <= pole_tol)
            ++end;
        const Eigen::Index m = end - start;
        if (m > 1) {
            const ComplexVector zs = p.z.segment(start, m);
            const double s = zs.norm();
            if (s > 0.0) {
                const Complex phase = zs[0] == Complex{0.0, 0.0} ? Complex{1.0, 0.0} : zs[0] / std::abs(zs[0]);
                const Complex alpha = -phase * s;
                if (with_vectors) {
                    ComplexVector v = zs;
                    v[0] -= alpha;
                    const double vn2 = v.squaredNorm();
                    const ComplexVector vs_v = p.vectors.middleCols(start, m) * v;
                    p.vectors.middleCols(start, m) -= (2.0 / vn2) * vs_v * v.adjoint();
                    tally(ops, static_cast<std::uint64_t>(2 * k * m));
                }
                p.z.segment(start, m).setZero();
                p.z[start] = alpha;
                p.weights.segment(start, m).setZero();
                p.weights[start] = s * s;
            }
        }
        start = end;
    }

    for (Eigen::Index i = 0; i < k; ++i) {
        if (std::abs(p.z[i]) <= kDeflateRelative * znorm) {
            p.z[i] = 0.0;
            p.weights[i] = 0.0;
        }
        if (p.weights[i] > 0.0)
            p.active.push_back(i);
        else
            p.deflated.push_back(i);
    }
    return p;
}

RealVector gather(const RealVector &v, const std::vector<Eigen::Index> &idx)
{
    RealVector out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = v[idx[i]];
    return out;
}

ComplexVector gather(const ComplexVector &v, const std::vector<Eigen::Index> &idx)
{
    ComplexVector out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = v[idx[i]];
    return out;
}

// Unsorted eigenvalues: active roots first, then deflated poles.
RealVector raw_values(const Prepared &p, const RealVector &active_poles, const std::vector<ShiftedRoot> &roots)
{
    RealVector values(p.poles.size());
    Eigen::Index c = 0;
    for (const auto &r : roots)
        values[c++] = root_value(active_poles, r);
    for (Eigen::Index i : p.deflated)
        values[c++] = p.poles[i];
    return values;
}

std::vector<Eigen::Index> descending_order(const RealVector &values)
{
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return values[a] > values[b]; });
    return order;
}

void finish_values(RealVector &values, const RealVector &old_values, Direction direction)
{
    if (direction != Direction::downdate || values.size() == 0)
        return;
    const double top = std::max(old_values.size() > 0 ? old_values.maxCoeff() : 0.0, 0.0);
    for (auto &v : values) {
        if (v < -kPsdSlack * top)
            throw PsdViolation("downdate: eigenvalue " + std::to_string(v) +
                               " below PSD slack; vector is not a row of the represented matrix");
        if (v < 0.0)
            v = 0.0;
    }
}

RealVector values_only(const EigenSystem &sys, const ComplexVector &h, Direction direction, OpCounter *ops)
{
    const Prepared p = prepare(sys, h, false, ops);
    const RealVector active_poles = gather(p.poles, p.active);
    const RealVector active_weights = gather(p.weights, p.active);
    const auto roots = solve_active(active_poles, active_weights, direction, ops);
    RealVector raw = raw_values(p, active_poles, roots);
    const auto order = descending_order(raw);
    RealVector values(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        values[static_cast<Eigen::Index>(i)] = raw[order[i]];
    finish_values(values, sys.values, direction);
    return values;
}

UpdateResult full_update(const EigenSystem &sys, const ComplexVector &h, Direction direction, OpCounter *ops)
{
    const Prepared p = prepare(sys, h, true, ops);
    const Eigen::Index k = sys.dim();
    const auto n = static_cast<Eigen::Index>(p.active.size());

    const RealVector active_poles = gather(p.poles, p.active);
    const RealVector active_weights = gather(p.weights, p.active);
    const ComplexVector active_z = gather(p.z, p.active);
    const auto roots = solve_active(active_poles, active_weights, direction, ops);

    // Eigenvectors of the active block, then back to the full basis.
    ComplexMatrix qa(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
        qa.col(c) = shifted_eigvec(active_poles, active_z, roots[static_cast<std::size_t>(c)], ops);
    if (n > 0) {
        tally(ops, static_cast<std::uint64_t>(n * n * n));
        if (orthonormality_error(qa) > kOrthoTolerance)
            modified_gram_schmidt(qa, ops);
    }

    ComplexMatrix va(k, n);
    for (Eigen::Index c = 0; c < n; ++c)
        va.col(c) = p.vectors.col(p.active[static_cast<std::size_t>(c)]);

    ComplexMatrix raw_vectors(k, k);
    if (n > 0) {
        raw_vectors.leftCols(n) = va * qa;
        tally(ops, static_cast<std::uint64_t>(k * n * n));
    }
    Eigen::Index c = n;
    for (Eigen::Index i : p.deflated)
        raw_vectors.col(c++) = p.vectors.col(i);

    const RealVector raw = raw_values(p, active_poles, roots);
    const auto order = descending_order(raw);

    UpdateResult result;
    result.new_values.resize(k);
    result.new_vectors.resize(k, k);
    for (std::size_t i = 0; i < order.size(); ++i) {
        result.new_values[static_cast<Eigen::Index>(i)] = raw[order[i]];
        result.new_vectors.col(static_cast<Eigen::Index>(i)) = raw_vectors.col(order[i]);
    }
    finish_values(result.new_values, sys.values, direction);
    result.deflated_indices = p.deflated;
    return result;
}

} // namespace

double secular_function(const SecularProblem &problem, double x)
{
    double acc = 0.0;
    for (Eigen::Index i = 0; i < problem.poles.size(); ++i)
        acc += problem.weights[i] / (problem.poles[i] - x);
    return 1.0 + direction_sign(problem.direction) * acc;
}

RealVector secular_roots(const SecularProblem &problem, OpCounter *ops)
{
    if (problem.poles.size() != problem.weights.size())
        throw BracketFailure("secular problem: poles and weights differ in length");

    std::vector<Eigen::Index> active;
    std::vector<Eigen::Index> passive;
    for (Eigen::Index i = 0; i < problem.poles.size(); ++i) {
        if (problem.weights[i] == 0.0)
            passive.push_back(i);
        else
            active.push_back(i);
    }
    const RealVector poles = gather(problem.poles, active);
    const RealVector weights = gather(problem.weights, active);
    check_active(poles, weights);

    const auto roots = solve_active(poles, weights, problem.direction, ops);
    RealVector out(problem.poles.size());
    Eigen::Index c = 0;
    for (const auto &r : roots)
        out[c++] = root_value(poles, r);
    for (Eigen::Index i : passive)
        out[c++] = problem.poles[i];
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

ComplexVector eigvec_from_root(const RealVector &poles, const ComplexVector &z, double root, OpCounter *ops)
{
    if (poles.size() != z.size())
        throw DimensionMismatch("eigvec_from_root: poles and z differ in length");
    ComplexVector q(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        if (z[i] == Complex{0.0, 0.0}) {
            q[i] = 0.0;
            continue;
        }
        const double gap = poles[i] - root;
        if (gap == 0.0 || std::abs(gap) < kSingularShift * std::abs(poles[i]))
            throw SingularShift("eigvec_from_root: root coincides with pole " + std::to_string(i));
        q[i] = z[i] / gap;
    }
    tally(ops, static_cast<std::uint64_t>(2 * z.size()));
    const double norm = q.norm();
    if (norm == 0.0)
        throw SingularShift("eigvec_from_root: zero vector");
    return q / norm;
}

SecularProblem reduced_secular_problem(const EigenSystem &sys, const ComplexVector &h, Direction direction,
                                       OpCounter *ops)
{
    const Prepared p = prepare(sys, h, false, ops);
    return SecularProblem{gather(p.poles, p.active), gather(p.weights, p.active), direction};
}

UpdateResult downdate_eigs(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops)
{
    return full_update(sys, h, Direction::downdate, ops);
}

UpdateResult update_eigs(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops)
{
    return full_update(sys, h, Direction::update, ops);
}

RealVector downdate_values(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops)
{
    return values_only(sys, h, Direction::downdate, ops);
}

RealVector update_values(const EigenSystem &sys, const ComplexVector &h, OpCounter *ops)
{
    return values_only(sys, h, Direction::update, ops);
}

} // namespace beamsel
