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

#include "chanmet/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chanmet/errors.hpp"

namespace chanmet {

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << csv_field(header[i]);
  }
  out << "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << "\r\n";
  }
  write_text_file(path, out.str());
}

namespace {

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_svg_line_plot(const std::string& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<double>& xs,
                         const std::vector<double>& ys, bool log_log) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw std::invalid_argument("svg plot: series size mismatch");
  }
  const double w = 640, h = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  auto tx = [&](double v) { return log_log ? std::log10(v) : v; };
  double xmin = tx(xs[0]), xmax = tx(xs[0]), ymin = tx(ys[0]), ymax = tx(ys[0]);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, tx(xs[i]));
    xmax = std::max(xmax, tx(xs[i]));
    ymin = std::min(ymin, tx(ys[i]));
    ymax = std::max(ymax, tx(ys[i]));
  }
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
  auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto py = [&](double v) { return h - mb - (tx(v) - ymin) / (ymax - ymin) * (h - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n"
      << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n"
      << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"14\">" << title << "</text>\n"
      << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(h - mb)
      << "\" x2=\"" << svg_num(w - mr) << "\" y2=\"" << svg_num(h - mb)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << svg_num(ml) << "\" y1=\"" << svg_num(mt) << "\" x2=\""
      << svg_num(ml) << "\" y2=\"" << svg_num(h - mb) << "\" stroke=\"black\"/>\n"
      << "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"12\">" << x_label << (log_log ? " (log)" : "") << "</text>\n"
      << "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"12\" transform=\"rotate(-90 16 240)\">" << y_label
      << (log_log ? " (log)" : "") << "</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) svg << ' ';
    svg << svg_num(px(xs[i])) << ',' << svg_num(py(ys[i]));
  }
  svg << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    svg << "<circle cx=\"" << svg_num(px(xs[i])) << "\" cy=\"" << svg_num(py(ys[i]))
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  // Corner tick labels carry the data range.
  svg << "<text x=\"" << svg_num(ml) << "\" y=\"" << svg_num(h - mb + 16)
      << "\" font-family=\"monospace\" font-size=\"10\">" << format_double(xs.front())
      << "</text>\n"
      << "<text x=\"" << svg_num(w - mr) << "\" y=\"" << svg_num(h - mb + 16)
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(xs.back()) << "</text>\n"
      << "<text x=\"" << svg_num(ml - 4) << "\" y=\"" << svg_num(h - mb)
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(log_log ? std::pow(10.0, ymin) : ymin) << "</text>\n"
      << "<text x=\"" << svg_num(ml - 4) << "\" y=\"" << svg_num(mt + 4)
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(log_log ? std::pow(10.0, ymax) : ymax) << "</text>\n";
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string config_hash(const nlohmann::json& config) {
  const std::uint64_t h = fnv1a64(config.dump());
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw config_error("cannot open output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw config_error("failed writing output file '" + path + "'");
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw config_error("cannot open file '" + path + "'");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw config_error("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace chanmet
