// Copyright 2026 The bellsim Authors
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

#include "bellsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bellsim/errors.hpp"

namespace bellsim::cli {

Format format_from_string(const std::string& s) {
  if (s == "table") return Format::kTable;
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  throw DomainError("unknown format '" + s + "' (expected json, csv or table)");
}

namespace {

std::string scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const nlohmann::ordered_json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "/" + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "/" + std::to_string(i), out);
    }
  } else {
    out += prefix + "," + scalar_text(j) + "\n";
  }
}

}  // namespace

std::string flatten_to_csv(const nlohmann::ordered_json& j) {
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::kJson:
      return report.json.dump(2) + "\n";
    case Format::kCsv:
      return report.csv.empty() ? flatten_to_csv(report.json) : report.csv;
    case Format::kTable:
      return report.table;
  }
  throw InternalError("render: unknown format");
}

std::string fmt7(double v) {
  // Display only: rounding residue such as cos(pi/2) prints as 0.
  if (std::abs(v) < 1e-15) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c > 0) out += "  ";
      out += rows[r][c];
      if (c + 1 < rows[r].size()) out.append(width[c] - rows[r][c].size(), ' ');
    }
    out += "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c > 0 ? 2 : 0);
      out.append(total, '-');
      out += "\n";
    }
  }
  return out;
}

}  // namespace bellsim::cli
