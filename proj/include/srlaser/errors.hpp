// Copyright 2026 The srlaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace srl {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or unsupported configuration (e.g. triangle with 5 atoms).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two atoms share a position, so the pair coupling diverges.
class SingularGeometryError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different Hilbert spaces or have the wrong size.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The Liouvillian kernel is not one-dimensional (or the solve did not converge).
class MultiplicityError : public Error {
 public:
  using Error::Error;
};

/// Adaptive time stepping collapsed.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// Correlation function still large at the end of the tau window.
class WindowingError : public Error {
 public:
  using Error::Error;
};

/// Lorentzian fit did not converge.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace srl
