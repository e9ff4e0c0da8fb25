// Copyright 2026 The ar2d Authors.
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

#ifndef AR2D_ERRORS_HPP_
#define AR2D_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ar2d {

/// Base class of all ar2d errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside the domain of the requested identity or formula.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A request exceeds a configured memory or size cap.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

/// An iterative computation did not reach its tolerance within its cap.
class NonConvergenceError : public Error {
 public:
  explicit NonConvergenceError(const std::string& what) : Error(what) {}
};

/// A normal-equation matrix failed the relative singularity test.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

/// An operation that needs the innovation array was called without one.
class MissingNoiseError : public Error {
 public:
  explicit MissingNoiseError(const std::string& what) : Error(what) {}
};

/// Malformed or schema-violating configuration input.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace ar2d

#endif  // AR2D_ERRORS_HPP_
