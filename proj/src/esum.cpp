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


#include "char3/esum.hpp"

namespace char3 {

namespace {

std::string side(const std::vector<int>& orders) {
  if (orders.empty()) return "∅";
  if (orders.size() == 1) return std::to_string(orders[0]);
  std::string s = "<";
  for (size_t i = 0; i < orders.size(); ++i) s += (i ? "," : "") + std::to_string(orders[i]);
  return s + ">";
}

}  // namespace

std::string ExtensionDegree::to_string() const { return "(" + side(left) + "," + side(right) + ")"; }

}  // namespace char3
