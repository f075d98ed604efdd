// Copyright 2026 The chanmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHANMET_OUTPUT_HPP
#define CHANMET_OUTPUT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace chanmet {

// Reproducibility artifacts: CSV tables with RFC-4180 quoting, self-contained
// SVG line plots, and JSON records. All formatting is deterministic so reruns
// with the same config diff clean.

/// Quotes a CSV field when it contains a comma, quote, or newline.
std::string csv_field(const std::string& raw);

/// "%.12g" with "inf"/"-inf"/"nan" spelled out.
std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Minimal line plot, one series, log-log optional. No plotting dependency.
void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<double>& xs,
                         const std::vector<double>& ys, bool log_log = false);

std::uint64_t fnv1a64(std::string_view bytes);

/// Hash of the canonical (sorted-key) dump of a config object, as fixed-width hex.
std::string config_hash(const nlohmann::json& config);

void write_text_file(const std::string& path, const std::string& content);
nlohmann::json read_json_file(const std::string& path);

}  // namespace chanmet

#endif  // CHANMET_OUTPUT_HPP
