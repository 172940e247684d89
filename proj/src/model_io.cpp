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

#include "ldpb/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "ldpb/errors.hpp"

namespace ldpb {

namespace {

using nlohmann::json;

json member_to_json(const WeightedMember& member) {
  json out;
  out["alpha"] = member.alpha;
  if (const auto* stump = std::get_if<Stump>(&member.model)) {
    out["kind"] = "stump";
    out["attribute"] = stump->attribute;
    out["label_low"] = stump->label_low;
    out["label_high"] = stump->label_high;
  } else if (const auto* ncc = std::get_if<CentroidModel>(&member.model)) {
    out["kind"] = "centroids";
    out["dim"] = ncc->dim;
    out["class_count"] = ncc->class_count;
    out["centroids"] = ncc->centroids;
    out["counts"] = ncc->counts;
  } else {
    const auto& linear = std::get<LinearModel>(member.model);
    out["kind"] = "linear";
    out["dim"] = linear.dim;
    out["class_count"] = linear.class_count;
    out["params"] = linear.params;
  }
  return out;
}

WeightedMember member_from_json(const json& in) {
  WeightedMember member;
  member.alpha = in.at("alpha").get<double>();
  const std::string kind = in.at("kind").get<std::string>();
  if (kind == "stump") {
    Stump stump;
    stump.attribute = in.at("attribute").get<std::size_t>();
    stump.label_low = in.at("label_low").get<int>();
    stump.label_high = in.at("label_high").get<int>();
    member.model = stump;
  } else if (kind == "centroids") {
    CentroidModel ncc;
    ncc.dim = in.at("dim").get<std::size_t>();
    ncc.class_count = in.at("class_count").get<int>();
    ncc.centroids = in.at("centroids").get<std::vector<double>>();
    ncc.counts = in.at("counts").get<std::vector<std::size_t>>();
    if (ncc.centroids.size() !=
            static_cast<std::size_t>(ncc.class_count) * ncc.dim ||
        ncc.counts.size() != static_cast<std::size_t>(ncc.class_count)) {
      throw DomainError("model file: centroid member has inconsistent sizes");
    }
    member.model = std::move(ncc);
  } else if (kind == "linear") {
    LinearModel linear;
    linear.dim = in.at("dim").get<std::size_t>();
    linear.class_count = in.at("class_count").get<int>();
    linear.params = in.at("params").get<std::vector<double>>();
    if (linear.params.size() !=
        static_cast<std::size_t>(linear.class_count) * (linear.dim + 1)) {
      throw DomainError("model file: linear member has inconsistent sizes");
    }
    member.model = std::move(linear);
  } else {
    throw DomainError("model file: unknown member kind '" + kind + "'");
  }
  return member;
}

json encoding_to_json(const DatasetEncoding& enc) {
  json out;
  out["schema"] = json::parse(schema_to_string(enc.schema));
  json one_hot = json::array();
  for (const auto& col : enc.one_hot) one_hot.push_back(col.categories);
  out["one_hot"] = one_hot;
  out["feature_names"] = enc.feature_names;
  out["normalization"] = {
      {"center", enc.normalization.center},
      {"half_width", enc.normalization.half_width},
      {"declared", enc.normalization.declared},
      {"warnings", enc.normalization.warnings},
  };
  out["label_mean"] = enc.label_mean;
  return out;
}

DatasetEncoding encoding_from_json(const json& in) {
  DatasetEncoding enc;
  enc.schema = schema_from_string(in.at("schema").dump());
  for (const auto& cats : in.at("one_hot")) {
    OneHotEncoding col;
    col.categories = cats.get<std::vector<std::string>>();
    enc.one_hot.push_back(std::move(col));
  }
  enc.feature_names = in.at("feature_names").get<std::vector<std::string>>();
  const auto& norm = in.at("normalization");
  enc.normalization.center = norm.at("center").get<std::vector<double>>();
  enc.normalization.half_width =
      norm.at("half_width").get<std::vector<double>>();
  enc.normalization.declared = norm.at("declared").get<bool>();
  enc.normalization.warnings =
      norm.at("warnings").get<std::vector<std::string>>();
  enc.label_mean = in.at("label_mean").get<double>();
  if (enc.one_hot.size() != enc.schema.features.size() ||
      enc.normalization.center.size() != enc.feature_names.size() ||
      enc.normalization.half_width.size() != enc.feature_names.size()) {
    throw DomainError("model file: encoding block has inconsistent sizes");
  }
  return enc;
}

}  // namespace

void save_model(const std::string& path, const Ensemble& ensemble,
                const DatasetEncoding& encoding,
                const std::map<std::string, std::string>& meta) {
  json root;
  root["format"] = "ldpboost-model";
  root["version"] = 1;
  root["class_count"] = ensemble.class_count;
  root["context"] = {
      {"binarize_threshold", ensemble.context.binarizer.threshold},
      {"norm_order", ensemble.context.norm_order},
  };
  json members = json::array();
  for (const auto& member : ensemble.members) {
    members.push_back(member_to_json(member));
  }
  root["members"] = members;
  root["encoding"] = encoding_to_json(encoding);
  root["meta"] = meta;

  std::ofstream out(path);
  if (!out) throw DomainError("cannot write model file: " + path);
  out << root.dump(2) << '\n';
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw DomainError("model parse error in " + path + ": " + e.what());
  }
  if (root.value("format", "") != "ldpboost-model") {
    throw DomainError(path + " is not a model file");
  }
  LoadedModel loaded;
  try {
    loaded.ensemble.class_count = root.at("class_count").get<int>();
    loaded.ensemble.context.binarizer.threshold =
        root.at("context").at("binarize_threshold").get<double>();
    loaded.ensemble.context.norm_order =
        root.at("context").at("norm_order").get<int>();
    for (const auto& member : root.at("members")) {
      loaded.ensemble.members.push_back(member_from_json(member));
    }
    loaded.encoding = encoding_from_json(root.at("encoding"));
    if (root.contains("meta")) {
      loaded.meta =
          root.at("meta").get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    throw DomainError("model file " + path + " is malformed: " + e.what());
  }
  return loaded;
}

}  // namespace ldpb
