// Copyright (C) 2026 The risho authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace risho {

// Argument validation failures use std::invalid_argument, evaluation outside
// a function's domain uses std::domain_error. The two types below cover the
// failure modes that callers are expected to branch on.

/// Adaptive quadrature ran out of refinement budget before meeting its tolerance.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string &what, double achieved_error)
        : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
          achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

/// The closed-form focusing gain is undefined when observing at the focal depth.
class SingularFocus : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A Gaussian density was requested for a zero-variance cascade.
class DegenerateDistribution : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace risho
