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

#include "ldpb/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ldpb/errors.hpp"
#include "ldpb/format.hpp"

namespace ldpb {

namespace {

using nlohmann::json;

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Working form between one-hot expansion and normalization.
struct NumericTable {
  std::vector<std::string> names;
  std::vector<double> cells;  // row-major n x names.size()
  std::size_t rows = 0;
};

int label_from_cell(double value, std::size_t row) {
  const double rounded = std::round(value);
  if (std::fabs(value - rounded) > 1e-9 || rounded < 0.0 || rounded > 1e6) {
    throw DomainError("labels must be small non-negative integers; row " +
                      std::to_string(row + 1) + " has '" +
                      format_double(value) + "'");
  }
  return static_cast<int>(rounded);
}

// Shared by fit- and transform-time encoding once per-column category maps
// are settled. Produces the expanded numeric matrix plus raw label values.
NumericTable expand_columns(const RawTable& table, const Schema& schema,
                            const std::vector<OneHotEncoding>& one_hot,
                            std::vector<double>& label_values) {
  std::vector<std::size_t> col_index;
  for (const auto& spec : schema.features) {
    const auto it = std::find(table.names.begin(), table.names.end(), spec.name);
    if (it == table.names.end()) {
      throw DomainError("schema column '" + spec.name + "' not found in table");
    }
    col_index.push_back(static_cast<std::size_t>(it - table.names.begin()));
  }
  const auto label_it =
      std::find(table.names.begin(), table.names.end(), schema.label);
  if (label_it == table.names.end()) {
    throw DomainError("label column '" + schema.label + "' not found in table");
  }
  const std::size_t label_col =
      static_cast<std::size_t>(label_it - table.names.begin());

  NumericTable out;
  out.rows = table.rows.size();
  for (std::size_t c = 0; c < schema.features.size(); ++c) {
    const auto& spec = schema.features[c];
    if (spec.kind == ColumnKind::kNumeric) {
      out.names.push_back(spec.name);
    } else {
      for (const auto& cat : one_hot[c].categories) {
        out.names.push_back(spec.name + "=" + cat);
      }
    }
  }
  out.cells.reserve(out.rows * out.names.size());
  label_values.reserve(out.rows);

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < schema.features.size(); ++c) {
      const auto& spec = schema.features[c];
      const std::string& cell = row[col_index[c]];
      if (spec.kind == ColumnKind::kNumeric) {
        out.cells.push_back(parse_double(
            cell, "column '" + spec.name + "' row " + std::to_string(r + 1)));
      } else {
        const auto encoded = one_hot_encode(one_hot[c], cell);
        out.cells.insert(out.cells.end(), encoded.begin(), encoded.end());
      }
    }
    label_values.push_back(parse_double(
        row[label_col],
        "label column '" + schema.label + "' row " + std::to_string(r + 1)));
  }
  return out;
}

std::vector<int> finalize_labels(const Schema& schema,
                                 std::span<const double> label_values,
                                 double* mean_out, bool use_stored_mean,
                                 double stored_mean) {
  if (schema.binarize_label_by_mean) {
    if (use_stored_mean) {
      std::vector<int> labels(label_values.size());
      for (std::size_t i = 0; i < label_values.size(); ++i) {
        labels[i] = label_values[i] > stored_mean ? 1 : 0;
      }
      if (mean_out) *mean_out = stored_mean;
      return labels;
    }
    auto [labels, mean] = binarize_label_by_mean(label_values);
    if (mean_out) *mean_out = mean;
    return labels;
  }
  std::vector<int> labels(label_values.size());
  for (std::size_t i = 0; i < label_values.size(); ++i) {
    labels[i] = label_from_cell(label_values[i], i);
  }
  if (mean_out) *mean_out = 0.0;
  return labels;
}

EncodedDataset apply_normalization(const NumericTable& numeric,
                                   const NormalizationSpec& norm,
                                   std::vector<int> labels) {
  EncodedDataset ds;
  ds.dim = numeric.names.size();
  ds.labels = std::move(labels);
  ds.features.resize(numeric.cells.size());
  for (std::size_t i = 0; i < numeric.rows; ++i) {
    for (std::size_t j = 0; j < ds.dim; ++j) {
      const double v = numeric.cells[i * ds.dim + j];
      if (norm.half_width[j] <= 0.0) {
        ds.features[i * ds.dim + j] = 0.0;
        continue;
      }
      const double lo = norm.center[j] - norm.half_width[j];
      const double hi = norm.center[j] + norm.half_width[j];
      const double clamped = std::min(std::max(v, lo), hi);
      ds.features[i * ds.dim + j] =
          (clamped - norm.center[j]) / norm.half_width[j];
    }
  }
  int max_label = 1;
  for (int y : ds.labels) max_label = std::max(max_label, y);
  ds.class_count = max_label + 1;
  return ds;
}

json schema_to_json(const Schema& schema) {
  json cols = json::array();
  for (const auto& spec : schema.features) {
    json col;
    col["name"] = spec.name;
    col["kind"] = spec.kind == ColumnKind::kNumeric ? "numeric" : "categorical";
    if (spec.bounds) col["bounds"] = {spec.bounds->first, spec.bounds->second};
    cols.push_back(col);
  }
  json root;
  root["columns"] = cols;
  root["label"] = schema.label;
  if (schema.binarize_label_by_mean) root["binarize_label_by_mean"] = true;
  return root;
}

}  // namespace

namespace {

Schema schema_from_json(const json& root) {
  Schema schema;
  schema.label = root.at("label").get<std::string>();
  schema.binarize_label_by_mean = root.value("binarize_label_by_mean", false);
  for (const auto& col : root.at("columns")) {
    ColumnSpec spec;
    spec.name = col.at("name").get<std::string>();
    const std::string kind = col.value("kind", "numeric");
    if (kind == "numeric") {
      spec.kind = ColumnKind::kNumeric;
    } else if (kind == "categorical") {
      spec.kind = ColumnKind::kCategorical;
    } else {
      throw DomainError("schema column '" + spec.name + "': unknown kind '" +
                        kind + "'");
    }
    if (col.contains("bounds")) {
      const auto& b = col.at("bounds");
      if (!b.is_array() || b.size() != 2) {
        throw DomainError("schema column '" + spec.name +
                          "': bounds must be [lo, hi]");
      }
      const double lo = b[0].get<double>();
      const double hi = b[1].get<double>();
      if (!(hi >= lo)) {
        throw DomainError("schema column '" + spec.name +
                          "': bounds must satisfy lo <= hi");
      }
      spec.bounds = std::make_pair(lo, hi);
    }
    schema.features.push_back(std::move(spec));
  }
  if (schema.features.empty()) throw DomainError("schema has no feature columns");
  return schema;
}

}  // namespace

Schema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open schema file: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw DomainError("schema parse error in " + path + ": " + e.what());
  }
  return schema_from_json(root);
}

void save_schema(const Schema& schema, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write schema file: " + path);
  out << schema_to_json(schema).dump(2) << '\n';
}

std::string schema_to_string(const Schema& schema) {
  return schema_to_json(schema).dump();
}

Schema schema_from_string(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("schema parse error: ") + e.what());
  }
  return schema_from_json(root);
}

RawTable load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open dataset file: " + path);
  RawTable table;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty dataset file: " + path);
  table.names = split_line(strip_cr(line));
  std::size_t row = 0;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    ++row;
    auto cells = split_line(line);
    if (cells.size() != table.names.size()) {
      throw DomainError(path + ": row " + std::to_string(row) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(table.names.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.rows.empty()) throw DomainError(path + ": no data rows");
  return table;
}

OneHotEncoding fit_one_hot(std::span<const std::string> values) {
  OneHotEncoding enc;
  for (const auto& v : values) {
    if (std::find(enc.categories.begin(), enc.categories.end(), v) ==
        enc.categories.end()) {
      enc.categories.push_back(v);
    }
  }
  return enc;
}

std::vector<double> one_hot_encode(const OneHotEncoding& enc,
                                   const std::string& value) {
  std::vector<double> out(enc.categories.size(), 0.0);
  const auto it = std::find(enc.categories.begin(), enc.categories.end(), value);
  if (it == enc.categories.end()) {
    throw DomainError("unseen category '" + value + "'");
  }
  out[static_cast<std::size_t>(it - enc.categories.begin())] = 1.0;
  return out;
}

std::pair<std::vector<int>, double> binarize_label_by_mean(
    std::span<const double> values) {
  if (values.empty()) throw DomainError("binarize_label_by_mean: empty input");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  std::vector<int> labels(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    labels[i] = values[i] > mean ? 1 : 0;
  }
  return {labels, mean};
}

std::pair<EncodedDataset, DatasetEncoding> encode_dataset(const RawTable& table,
                                                          const Schema& schema) {
  DatasetEncoding enc;
  enc.schema = schema;
  enc.one_hot.resize(schema.features.size());

  // First pass: fit category maps on the categorical columns.
  for (std::size_t c = 0; c < schema.features.size(); ++c) {
    if (schema.features[c].kind != ColumnKind::kCategorical) continue;
    const auto it = std::find(table.names.begin(), table.names.end(),
                              schema.features[c].name);
    if (it == table.names.end()) {
      throw DomainError("schema column '" + schema.features[c].name +
                        "' not found in table");
    }
    const std::size_t col = static_cast<std::size_t>(it - table.names.begin());
    std::vector<std::string> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) values.push_back(row[col]);
    enc.one_hot[c] = fit_one_hot(values);
  }

  std::vector<double> label_values;
  const NumericTable numeric =
      expand_columns(table, schema, enc.one_hot, label_values);
  enc.feature_names = numeric.names;

  // Normalization bounds: declared public bounds where the schema provides
  // them, otherwise computed from the data (recorded, with a caveat, since
  // data-derived bounds are technically a disclosure).
  NormalizationSpec& norm = enc.normalization;
  const std::size_t dim = numeric.names.size();
  norm.center.resize(dim);
  norm.half_width.resize(dim);
  norm.declared = true;

  std::size_t expanded = 0;
  for (std::size_t c = 0; c < schema.features.size(); ++c) {
    const auto& spec = schema.features[c];
    const std::size_t width =
        spec.kind == ColumnKind::kNumeric ? 1 : enc.one_hot[c].categories.size();
    for (std::size_t w = 0; w < width; ++w, ++expanded) {
      double lo, hi;
      if (spec.kind == ColumnKind::kNumeric && spec.bounds) {
        lo = spec.bounds->first;
        hi = spec.bounds->second;
      } else if (spec.kind == ColumnKind::kCategorical) {
        lo = 0.0;
        hi = 1.0;
      } else {
        norm.declared = false;
        lo = numeric.cells[expanded];
        hi = numeric.cells[expanded];
        for (std::size_t i = 0; i < numeric.rows; ++i) {
          const double v = numeric.cells[i * dim + expanded];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      norm.center[expanded] = 0.5 * (lo + hi);
      norm.half_width[expanded] = 0.5 * (hi - lo);
      if (norm.half_width[expanded] <= 0.0) {
        norm.half_width[expanded] = 0.0;
        norm.warnings.push_back("column '" + numeric.names[expanded] +
                                "' has zero width; emitted as constant 0");
      }
    }
  }

  auto labels = finalize_labels(schema, label_values, &enc.label_mean,
                                /*use_stored_mean=*/false, 0.0);
  EncodedDataset ds = apply_normalization(numeric, norm, std::move(labels));
  return {std::move(ds), std::move(enc)};
}

EncodedDataset encode_with(const RawTable& table, const DatasetEncoding& enc) {
  std::vector<double> label_values;
  const NumericTable numeric =
      expand_columns(table, enc.schema, enc.one_hot, label_values);
  if (numeric.names != enc.feature_names) {
    throw DomainError("table layout does not match the fitted encoding");
  }
  auto labels = finalize_labels(enc.schema, label_values, nullptr,
                                /*use_stored_mean=*/true, enc.label_mean);
  return apply_normalization(numeric, enc.normalization, std::move(labels));
}

SynthResult gen_synthetic(const SynthSpec& spec) {
  if (spec.n < 4) throw DomainError("gen_synthetic: need at least 4 samples");
  if (spec.informative == 0) {
    throw DomainError("gen_synthetic: need at least 1 informative column");
  }
  if (spec.separation < 0.0 || spec.combo_noise < 0.0) {
    throw DomainError("gen_synthetic: separation and combo noise must be >= 0");
  }
  const std::size_t d = spec.informative + spec.combos;
  const std::size_t n = spec.n;

  // Per-attribute mean scales and the fixed combination matrix come from
  // their own streams so that changing n leaves the geometry alone.
  Rng scale_rng(derive_seed(spec.seed, 0x5ca1e));
  std::vector<double> scale(spec.informative);
  for (double& s : scale) s = scale_rng.uniform(0.3, 1.0);

  Rng combo_rng(derive_seed(spec.seed, 0xc0b0));
  std::vector<double> mix(spec.combos * spec.informative);
  for (double& a : mix) {
    a = standard_normal(combo_rng) /
        std::sqrt(static_cast<double>(spec.informative));
  }

  Rng row_rng(derive_seed(spec.seed, 0x20b5));
  SynthResult out;
  out.raw.resize(n * d);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    labels[i] = label;
    const double sign = label == 1 ? 1.0 : -1.0;
    double* row = &out.raw[i * d];
    for (std::size_t j = 0; j < spec.informative; ++j) {
      row[j] = sign * spec.separation * scale[j] + standard_normal(row_rng);
    }
    for (std::size_t c = 0; c < spec.combos; ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < spec.informative; ++j) {
        acc += mix[c * spec.informative + j] * row[j];
      }
      if (spec.combo_noise > 0.0) {
        acc += spec.combo_noise * standard_normal(row_rng);
      }
      row[spec.informative + c] = acc;
    }
  }

  // Package through the regular encoding path with computed bounds.
  NumericTable numeric;
  numeric.rows = n;
  for (std::size_t j = 0; j < d; ++j) numeric.names.push_back("f" + std::to_string(j));
  numeric.cells = out.raw;

  DatasetEncoding enc;
  enc.schema.label = "label";
  enc.feature_names = numeric.names;
  NormalizationSpec& norm = enc.normalization;
  norm.center.resize(d);
  norm.half_width.resize(d);
  norm.declared = true;  // the sidecar re-declares these bounds as public
  for (std::size_t j = 0; j < d; ++j) {
    double lo = out.raw[j];
    double hi = out.raw[j];
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, out.raw[i * d + j]);
      hi = std::max(hi, out.raw[i * d + j]);
    }
    norm.center[j] = 0.5 * (lo + hi);
    norm.half_width[j] = 0.5 * (hi - lo);
    ColumnSpec col;
    col.name = numeric.names[j];
    col.bounds = std::make_pair(lo, hi);
    enc.schema.features.push_back(std::move(col));
  }
  out.dataset = apply_normalization(numeric, norm, std::move(labels));
  out.encoding = std::move(enc);
  return out;
}

void save_dataset_csv(const SynthResult& synth, const std::string& data_path,
                      const std::string& schema_path) {
  const std::size_t d = synth.encoding.feature_names.size();
  std::ofstream out(data_path);
  if (!out) throw DomainError("cannot write dataset file: " + data_path);
  for (std::size_t j = 0; j < d; ++j) out << synth.encoding.feature_names[j] << ',';
  out << synth.encoding.schema.label << '\n';
  for (std::size_t i = 0; i < synth.dataset.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out << format_double(synth.raw[i * d + j]) << ',';
    }
    out << synth.dataset.labels[i] << '\n';
  }
  save_schema(synth.encoding.schema, schema_path);
}

SplitResult train_test_split(const EncodedDataset& dataset,
                             double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("train_test_split: test fraction must be in (0, 1)");
  }
  const std::size_t n = dataset.size();
  std::vector<std::vector<std::size_t>> by_class(
      static_cast<std::size_t>(dataset.class_count));
  for (std::size_t i = 0; i < n; ++i) {
    by_class[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
  }

  Rng rng(derive_seed(seed, 0x5b117));
  std::vector<std::size_t> test_idx, train_idx;
  for (auto& members : by_class) {
    shuffle(members, rng);
    const std::size_t take = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(members.size())));
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < take ? test_idx : train_idx).push_back(members[i]);
    }
  }
  if (test_idx.empty() || train_idx.empty()) {
    throw DomainError("train_test_split: a side came out empty");
  }
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  auto subset = [&](const std::vector<std::size_t>& idx) {
    EncodedDataset part;
    part.dim = dataset.dim;
    part.class_count = dataset.class_count;
    part.features.reserve(idx.size() * dataset.dim);
    part.labels.reserve(idx.size());
    for (std::size_t i : idx) {
      const auto row = dataset.row(i);
      part.features.insert(part.features.end(), row.begin(), row.end());
      part.labels.push_back(dataset.labels[i]);
    }
    return part;
  };
  return SplitResult{subset(train_idx), subset(test_idx)};
}

}  // namespace ldpb
