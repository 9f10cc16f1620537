// Copyright 2026 The trimode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace trimode {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (non-finite, wrong parity, out of range).
class InvalidParameter : public Error {
   public:
    using Error::Error;
};

/// Iterative numerics failed to converge or produced a non-finite value.
class NumericError : public Error {
   public:
    using Error::Error;
};

/// Fock-space truncation is too small for the requested state or operator.
class TruncationError : public NumericError {
   public:
    using NumericError::NumericError;
};

/// Formula evaluated at a parameter where it is singular (e.g. lambda = 0 in u/v ratios).
class SingularParameter : public InvalidParameter {
   public:
    using InvalidParameter::InvalidParameter;
};

/// Ratio with a vanishing denominator (zero mean photon number in P_k).
class DomainError : public NumericError {
   public:
    using NumericError::NumericError;
};

/// A closed form that should be real came out with a large imaginary part.
class FormulaInconsistency : public NumericError {
   public:
    FormulaInconsistency(const std::string& what, double residue)
        : NumericError(what), residue_(residue) {}
    double residue() const noexcept { return residue_; }

   private:
    double residue_;
};

}  // namespace trimode
