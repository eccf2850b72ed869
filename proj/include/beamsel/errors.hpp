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

#ifndef BEAMSEL_ERRORS_HPP
#define BEAMSEL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beamsel {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failures map to CLI exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NonHermitianInput : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class BracketFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularShift : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A downdate drove the spectrum below -1e-8 * d_1: the removed vector was
// not part of the represented Gram matrix.
class PsdViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RankDeficient : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Caller supplied inconsistent shapes or budgets.
class UsageError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public UsageError {
public:
    using UsageError::UsageError;
};

class InvalidBudget : public UsageError {
public:
    using UsageError::UsageError;
};

class BudgetTooLarge : public UsageError {
public:
    using UsageError::UsageError;
};

// Configuration problems map to CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

class ParseError : public ConfigError {
public:
    ParseError(std::string source, std::size_t line, const std::string &what)
        : ConfigError(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line) {}

    const std::string &source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

class ConstraintError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace beamsel

#endif
