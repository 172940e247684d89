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

#ifndef LDPB_DATA_HPP_
#define LDPB_DATA_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ldpb/random.hpp"

namespace ldpb {

enum class ColumnKind { kNumeric, kCategorical };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  // Declared public bounds; values outside are clamped (data-dependent
  // bounds would leak, so out-of-range cells must not widen them).
  std::optional<std::pair<double, double>> bounds;
};

struct Schema {
  std::vector<ColumnSpec> features;
  std::string label;
  bool binarize_label_by_mean = false;
};

Schema load_schema(const std::string& path);
void save_schema(const Schema& schema, const std::string& path);

// The same JSON representation as the schema files, as a string; used to
// embed schemas inside other documents.
std::string schema_to_string(const Schema& schema);
Schema schema_from_string(const std::string& text);

// Delimited text with a header row, comma separated, no quoting.
struct RawTable {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows;
};

// Malformed rows (wrong cell count) raise DomainError naming the 1-based
// data row.
RawTable load_csv(const std::string& path);

// Categories in order of first appearance; used to expand one categorical
// column into one indicator column per category.
struct OneHotEncoding {
  std::vector<std::string> categories;
};

OneHotEncoding fit_one_hot(std::span<const std::string> values);

// Indicator row for one value; unseen categories raise DomainError.
std::vector<double> one_hot_encode(const OneHotEncoding& enc,
                                   const std::string& value);

// Per-attribute affine map onto [-1, 1]: x -> (x - center) / half_width.
struct NormalizationSpec {
  std::vector<double> center;
  std::vector<double> half_width;
  bool declared = false;  // bounds came from the schema, not the data
  std::vector<std::string> warnings;
};

// Features are row-major n x dim in [-1, 1]; labels in 0..class_count-1.
struct EncodedDataset {
  std::vector<double> features;
  std::vector<int> labels;
  std::size_t dim = 0;
  int class_count = 0;

  std::size_t size() const { return labels.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features).subspan(i * dim, dim);
  }
};

// Everything needed to encode new rows exactly the way the training table
// was encoded (stored alongside trained models).
struct DatasetEncoding {
  Schema schema;
  std::vector<OneHotEncoding> one_hot;  // parallel to schema.features;
                                        // empty categories for numeric cols
  std::vector<std::string> feature_names;  // expanded column names
  NormalizationSpec normalization;
  double label_mean = 0.0;  // threshold used when binarizing the label
};

// Fits the encoding (category maps, bounds) on the table and applies it.
std::pair<EncodedDataset, DatasetEncoding> encode_dataset(const RawTable& table,
                                                          const Schema& schema);

// Applies a previously fitted encoding; unseen categories raise DomainError.
EncodedDataset encode_with(const RawTable& table, const DatasetEncoding& enc);

// Label 1 iff value > mean(values); returns the labels and the threshold.
std::pair<std::vector<int>, double> binarize_label_by_mean(
    std::span<const double> values);

// Two balanced classes over `informative` class-conditional Gaussian columns
// (per-attribute mean +/- separation * scale_j, unit variance) plus `combos`
// fixed seeded linear combinations of the informative block, optionally with
// additive noise. With combo_noise == 0 the pre-normalization feature matrix
// has rank exactly `informative`.
struct SynthSpec {
  std::size_t n = 10000;
  std::size_t informative = 10;
  std::size_t combos = 10;
  double separation = 0.6;
  double combo_noise = 0.0;
  std::uint64_t seed = 1;
};

struct SynthResult {
  EncodedDataset dataset;
  DatasetEncoding encoding;
  std::vector<double> raw;  // row-major pre-normalization features
};

SynthResult gen_synthetic(const SynthSpec& spec);

// Writes the raw (pre-normalization) feature matrix plus label column, and
// the schema sidecar carrying the computed public bounds.
void save_dataset_csv(const SynthResult& synth, const std::string& data_path,
                      const std::string& schema_path);

struct SplitResult {
  EncodedDataset train;
  EncodedDataset test;
};

// Seeded stratified split; both sides keep the original row order. Raises
// DomainError when either side would come out empty.
SplitResult train_test_split(const EncodedDataset& dataset,
                             double test_fraction, std::uint64_t seed);

}  // namespace ldpb

#endif  // LDPB_DATA_HPP_
