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

// Report container shared by every subcommand: one JSON document plus its
// CSV and human-readable renderings.

#ifndef BELLSIM_TOOLS_REPORT_HPP_
#define BELLSIM_TOOLS_REPORT_HPP_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bellsim::cli {

enum class Format { kTable, kJson, kCsv };

Format format_from_string(const std::string& s);

struct Report {
  nlohmann::ordered_json json;
  // Empty means "flatten the JSON into key,value rows".
  std::string csv;
  std::string table;
};

std::string render(const Report& report, Format format);

// "a/b/0,value" rows for every scalar leaf.
std::string flatten_to_csv(const nlohmann::ordered_json& j);

// Seven significant digits.
std::string fmt7(double v);

// Fixed-width text table; the first row is the header.
std::string text_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace bellsim::cli

#endif  // BELLSIM_TOOLS_REPORT_HPP_
