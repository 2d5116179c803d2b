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

#include "ft2ra/report.h"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ft2ra {
namespace {

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string FormatPercent(const std::optional<double>& x) {
  if (!x) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *x);
  return buf;
}

std::string CompactConfig(const nlohmann::json& config) {
  std::string out;
  for (const auto& [key, value] : config.items()) {
    if (!out.empty()) out += ' ';
    out += key + '=' + (value.is_string() ? value.get<std::string>()
                                          : value.dump());
  }
  return out;
}

nlohmann::json OptionalJson(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json ConfigJson(const AugmentConfig& cfg) {
  nlohmann::json j = {
      {"eta_logits", cfg.eta_logits},
      {"iterations", cfg.iterations},
      {"neighbors", cfg.neighbors},
      {"strategy", cfg.strategy.Name()},
      {"reset_query_each_epoch", cfg.reset_query_each_epoch},
      {"persist_updates", cfg.persist_updates},
      {"metric", MetricName(cfg.metric)},
  };
  if (cfg.strategy.kind == WeightingKind::kSmaxT) {
    j["temperature"] = cfg.strategy.temperature;
  }
  return j;
}

nlohmann::json ConfigJson(const KnnLmConfig& cfg) {
  return {{"neighbors", cfg.neighbors},
          {"lambda", cfg.lambda},
          {"metric", MetricName(cfg.metric)}};
}

std::string DescribeConfig(const AugmentConfig& cfg) {
  std::string out = "ft2ra(N=" + std::to_string(cfg.neighbors) +
                    ",E=" + std::to_string(cfg.iterations) +
                    ",eta=" + FormatNumber(cfg.eta_logits) + "," +
                    cfg.strategy.Name();
  if (cfg.strategy.kind == WeightingKind::kSmaxT) {
    out += ",T=" + FormatNumber(cfg.strategy.temperature);
  }
  if (cfg.reset_query_each_epoch) out += ",reset";
  return out + ")";
}

std::string DescribeConfig(const KnnLmConfig& cfg) {
  return "knnlm(N=" + std::to_string(cfg.neighbors) +
         ",lambda=" + FormatNumber(cfg.lambda) + ")";
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json j;
  j["method"] = method;
  j["config"] = config;
  j["metrics"] = {{"token_accuracy", OptionalJson(token_accuracy)},
                  {"line_em", OptionalJson(line_em)},
                  {"line_es", OptionalJson(line_es)}};
  j["rows"] = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    j["rows"].push_back({{"method", row.method},
                         {"config", row.config},
                         {"token_accuracy", row.token_accuracy},
                         {"line_em", OptionalJson(row.line_em)},
                         {"line_es", OptionalJson(row.line_es)}});
  }
  j["curves"] = nlohmann::json::array();
  for (const Curve& curve : curves) {
    nlohmann::json points = nlohmann::json::array();
    for (const CurvePoint& p : curve.points) {
      points.push_back({{"x", p.x}, {"y", p.y}});
    }
    j["curves"].push_back({{"name", curve.name},
                           {"x_label", curve.x_label},
                           {"y_label", curve.y_label},
                           {"points", points}});
  }
  nlohmann::json token = nlohmann::json::array();
  for (const TokenRecord& r : token_records) {
    token.push_back({{"target", r.target},
                     {"predicted", r.predicted},
                     {"correct", r.correct}});
  }
  nlohmann::json line = nlohmann::json::array();
  for (const LineRecord& r : line_records) {
    line.push_back({{"completion", r.completion},
                    {"exact", r.exact},
                    {"edit_similarity", r.edit_similarity}});
  }
  j["samples"] = {{"token", token}, {"line", line}};
  return j;
}

std::string EvalReport::SummaryTable() const {
  std::ostringstream out;
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%-14s %-52s %9s %9s %9s\n", "method",
                "config", "token_acc", "line_em", "line_es");
  out << buf;
  auto line = [&](const std::string& m, const nlohmann::json& cfg,
                  const std::optional<double>& acc,
                  const std::optional<double>& em,
                  const std::optional<double>& es) {
    std::string c = CompactConfig(cfg);
    if (c.size() > 52) c = c.substr(0, 49) + "...";
    std::snprintf(buf, sizeof(buf), "%-14s %-52s %9s %9s %9s\n", m.c_str(),
                  c.c_str(), FormatPercent(acc).c_str(),
                  FormatPercent(em).c_str(), FormatPercent(es).c_str());
    out << buf;
  };
  if (rows.empty()) {
    line(method, config, token_accuracy, line_em, line_es);
  }
  for (const ReportRow& row : rows) {
    line(row.method, row.config, row.token_accuracy, row.line_em,
         row.line_es);
  }
  return out.str();
}

std::vector<std::filesystem::path> EvalReport::WriteCurvesTsv(
    const std::filesystem::path& prefix) const {
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::filesystem::path path = prefix;
    path += "." + std::to_string(i) + ".tsv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# " << curves[i].name << '\n';
    out << curves[i].x_label << '\t' << curves[i].y_label << '\n';
    for (const CurvePoint& p : curves[i].points) {
      out << FormatNumber(p.x) << '\t' << FormatNumber(p.y) << '\n';
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace ft2ra
