/* Copyright 2026 The dlgibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"
#include "dlgibbs/io.hpp"

namespace dlgibbs {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size() || text.empty()) {
    throw ParameterError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_samples_csv(std::ostream& out, const SampleMatrix& samples) {
  const auto& names = samples.names();
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const auto row = samples.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << format_double(row[j]);
    }
    out << '\n';
  }
}

void write_posterior_summary_csv(std::ostream& out, const SampleMatrix& samples) {
  out << "column,mean,median,q025,q975\n";
  for (std::size_t j = 0; j < samples.cols(); ++j) {
    std::vector<double> col = samples.column(j);
    if (col.empty()) continue;
    double total = 0.0;
    for (double v : col) total += v;
    std::sort(col.begin(), col.end());
    out << samples.names()[j] << ',' << format_double(total / static_cast<double>(col.size()))
        << ',' << format_double(sorted_quantile(col, 0.5)) << ','
        << format_double(sorted_quantile(col, 0.025)) << ','
        << format_double(sorted_quantile(col, 0.975)) << '\n';
  }
}

void write_geweke_qq_csv(std::ostream& out, const GewekeReport& report) {
  out << "function,prob,q_mcs,q_scs\n";
  for (const TestResult& r : report.results) {
    for (const QqPoint& p : r.qq) {
      out << r.name << ',' << format_double(p.prob) << ',' << format_double(p.q_x) << ','
          << format_double(p.q_y) << '\n';
    }
  }
}

void write_geweke_summary_csv(std::ostream& out, const GewekeReport& report) {
  out << "function,ks,ess_mcs,ess_scs,p_adj\n";
  for (const TestResult& r : report.results) {
    out << r.name << ',' << format_double(r.ks) << ',' << format_double(r.ess_mcs) << ','
        << format_double(r.ess_scs) << ',' << format_double(r.p_adj) << '\n';
  }
}

std::vector<double> read_y_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open input file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParameterError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "y") {
    throw ParameterError(path.string() + ":1: expected header 'y', got '" + line + "'");
  }
  std::vector<double> y;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    try {
      const double v = parse_double(line);
      if (!std::isfinite(v)) throw ParameterError("non-finite value");
      y.push_back(v);
    } catch (const ParameterError& e) {
      throw ParameterError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (y.empty()) throw ParameterError(path.string() + ": no data rows");
  return y;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  try {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dlgibbs
