// Copyright 2026 The ft2ra Authors.
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

#ifndef FT2RA_REPORT_H_
#define FT2RA_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ft2ra/augment.h"
#include "ft2ra/eval.h"
#include "ft2ra/predictor.h"
#include "json.hpp"

namespace ft2ra {

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

struct Curve {
  std::string name;
  std::string x_label;
  std::string y_label = "token_accuracy";
  std::vector<CurvePoint> points;
};

// One evaluated configuration inside a sweep or comparison.
struct ReportRow {
  std::string method;
  nlohmann::json config;
  double token_accuracy = 0.0;
  std::optional<double> line_em;
  std::optional<double> line_es;
};

struct EvalReport {
  std::string method;
  nlohmann::json config = nlohmann::json::object();
  std::optional<double> token_accuracy;
  std::optional<double> line_em;
  std::optional<double> line_es;
  std::vector<ReportRow> rows;
  std::vector<Curve> curves;
  std::vector<TokenRecord> token_records;
  std::vector<LineRecord> line_records;

  // {method, config, metrics, rows, curves: [{name, x_label, y_label,
  // points: [{x, y}]}], samples: {token: [...], line: [...]}}
  nlohmann::json ToJson() const;

  // Fixed-width table, one line per row (or a single line for a plain
  // evaluation).
  std::string SummaryTable() const;

  // Writes each curve as "<prefix>.<index>.tsv" with a "# name" comment line
  // and an "x<TAB>y" header. Returns the paths written.
  std::vector<std::filesystem::path> WriteCurvesTsv(
      const std::filesystem::path& prefix) const;
};

nlohmann::json ConfigJson(const AugmentConfig& cfg);
nlohmann::json ConfigJson(const KnnLmConfig& cfg);
std::string DescribeConfig(const AugmentConfig& cfg);
std::string DescribeConfig(const KnnLmConfig& cfg);

}  // namespace ft2ra

#endif  // FT2RA_REPORT_H_
