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

#include "char3/matrix_io.hpp"

#include <string>

namespace char3 {

nlohmann::ordered_json matrix_to_json(const FqMatrix& m) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) entries.push_back(m(i, j).to_string());
  return {{"field", m.field_ptr()->to_string()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

FqMatrix matrix_from_json(const nlohmann::ordered_json& j) {
  try {
    const Field& f = parse_field(j.at("field").get<std::string>());
    const size_t rows = j.at("rows").get<size_t>(), cols = j.at("cols").get<size_t>();
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols)
      throw ParseError("matrix record needs rows·cols = " + std::to_string(rows * cols) + " entries");
    FqMatrix m(&f, rows, cols);
    for (size_t k = 0; k < entries.size(); ++k) {
      const auto& e = entries[k];
      m(k / cols, k % cols) =
          e.is_number_integer() ? f.from_int(e.get<long long>()) : parse_element(f, e.get<std::string>());
    }
    return m;
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ParseError(std::string("malformed matrix record: ") + e.what());
  }
}

}  // namespace char3
