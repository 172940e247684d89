// Copyright 2026 The ldpboost Authors
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

#include "ldpb/format.hpp"

#include <charconv>
#include <system_error>

#include "ldpb/errors.hpp"

namespace ldpb {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, const std::string& context) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(),
                                   value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw DomainError(context + ": cannot parse number from '" +
                      std::string(token) + "'");
  }
  return value;
}

}  // namespace ldpb
