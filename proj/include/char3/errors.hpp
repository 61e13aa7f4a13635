/* Copyright 2026 The char3lab Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CHAR3_ERRORS_HPP_
#define CHAR3_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace char3 {

/// Base of every error the library throws. `kind()` is a stable name used in
/// reports ("DivisionByZero", "PrecisionExhausted", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define CHAR3_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what = "") : Error(#Name, what) {} \
  };

CHAR3_DEFINE_ERROR(InvalidArgument)
CHAR3_DEFINE_ERROR(ReducibleModulus)
CHAR3_DEFINE_ERROR(DivisionByZero)
CHAR3_DEFINE_ERROR(NotASquare)
CHAR3_DEFINE_ERROR(NoEmbedding)
CHAR3_DEFINE_ERROR(PrecisionExhausted)
CHAR3_DEFINE_ERROR(LimitDoesNotExist)
CHAR3_DEFINE_ERROR(ShapeMismatch)
CHAR3_DEFINE_ERROR(IndexOutOfRange)
CHAR3_DEFINE_ERROR(CoincidentNodes)
CHAR3_DEFINE_ERROR(CoincidentValues)
CHAR3_DEFINE_ERROR(TooLarge)
CHAR3_DEFINE_ERROR(NotSkew)
CHAR3_DEFINE_ERROR(PoleAtPoint)
CHAR3_DEFINE_ERROR(SingularJacobian)
CHAR3_DEFINE_ERROR(SingularSystem)
CHAR3_DEFINE_ERROR(RegionViolation)
CHAR3_DEFINE_ERROR(NotFound)
CHAR3_DEFINE_ERROR(ParseError)

#undef CHAR3_DEFINE_ERROR

}  // namespace char3

#endif  // CHAR3_ERRORS_HPP_
