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

#ifndef LDPB_MODEL_IO_HPP_
#define LDPB_MODEL_IO_HPP_

#include <map>
#include <string>

#include "ldpb/boosting.hpp"
#include "ldpb/data.hpp"

namespace ldpb {

// A trained ensemble together with the preprocessing that produced its
// training matrix, so raw tables evaluate through the identical pipeline.
struct LoadedModel {
  Ensemble ensemble;
  DatasetEncoding encoding;
  std::map<std::string, std::string> meta;
};

// JSON round trip; `meta` carries free-form provenance strings (mechanism,
// budget, seed, ...). Numeric fields survive byte for byte.
void save_model(const std::string& path, const Ensemble& ensemble,
                const DatasetEncoding& encoding,
                const std::map<std::string, std::string>& meta);

LoadedModel load_model(const std::string& path);

}  // namespace ldpb

#endif  // LDPB_MODEL_IO_HPP_
