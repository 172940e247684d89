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

#ifndef LDPB_FORMAT_HPP_
#define LDPB_FORMAT_HPP_

#include <string>
#include <string_view>

namespace ldpb {

// Shortest round-trip decimal form, locale independent (std::to_chars).
std::string format_double(double value);

// Locale-independent parse of a full token; raises DomainError otherwise.
double parse_double(std::string_view token, const std::string& context);

}  // namespace ldpb

#endif  // LDPB_FORMAT_HPP_
