// Copyright 2026 The qgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_ERRORS_HPP
#define QGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgame {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain (bad eps, non-PD input to log, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A state on (or numerically at) the boundary of the full-rank interior.
class BoundaryState : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// The marginal constraints leave no admissible direction.
class FullyConstrained : public Error {
 public:
  using Error::Error;
};

class NumericalDegeneracy : public Error {
 public:
  using Error::Error;
};

/// Entropy production rate is below threshold, so entropy time is not a
/// valid coordinate at this point.
class StationaryPoint : public Error {
 public:
  using Error::Error;
};

class NonLocalGenerator : public Error {
 public:
  using Error::Error;
};

class StiffRegion : public Error {
 public:
  using Error::Error;
};

}  // namespace qgame

#endif  // QGAME_ERRORS_HPP
