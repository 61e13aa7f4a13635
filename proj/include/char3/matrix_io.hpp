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

#ifndef CHAR3_MATRIX_IO_HPP_
#define CHAR3_MATRIX_IO_HPP_

#include "char3/linalg.hpp"
#include "json.hpp"

namespace char3 {

/// {"field": "3^q/[...]", "rows": r, "cols": c, "entries": [...]}, entries
/// row-major as element texts; integers are accepted on input.
nlohmann::ordered_json matrix_to_json(const FqMatrix& m);
/// Throws ParseError on a malformed record or a wrong entry count.
FqMatrix matrix_from_json(const nlohmann::ordered_json& j);

}  // namespace char3

#endif  // CHAR3_MATRIX_IO_HPP_
