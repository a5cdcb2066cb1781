/*
 Copyright 2026 The ppadp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/


#pragma once

#include <stdexcept>
#include <string>

namespace ppadp {

/// Vector/matrix sizes do not agree with the model they are used with.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Physically meaningless model parameters (e.g. a singular inertia matrix).
class InvalidParameters : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A state left the open domain of a log-barrier penalty.
///
/// `index` is the offending component and `margin` its normalized distance
/// (1 is the boundary). Reference-term violations set `reference_term`.
class ConstraintViolation : public std::runtime_error {
public:
    ConstraintViolation(int index, double margin, bool reference_term)
        : std::runtime_error(make_message(index, margin, reference_term)),
          index_(index), margin_(margin), reference_term_(reference_term) {}

    int index() const noexcept { return index_; }
    double margin() const noexcept { return margin_; }
    bool reference_term() const noexcept { return reference_term_; }

private:
    static std::string make_message(int index, double margin, bool reference_term) {
        return std::string(reference_term ? "reference" : "error") +
               " barrier violated at component " + std::to_string(index + 1) +
               " (margin " + std::to_string(margin) + ")";
    }

    int index_;
    double margin_;
    bool reference_term_;
};

/// Integration produced non-finite values.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ppadp
