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

// CSV serialization (UTF-8, LF line endings, shortest round-trip decimals)
// and atomic file output.

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dlgibbs/geweke.hpp"
#include "dlgibbs/kernels.hpp"

namespace dlgibbs {

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);

/// Header of column names, then one line per retained draw.
void write_samples_csv(std::ostream& out, const SampleMatrix& samples);

/// Per-column mean, median and central 95% interval:
/// column,mean,median,q025,q975.
void write_posterior_summary_csv(std::ostream& out, const SampleMatrix& samples);

/// function,prob,q_mcs,q_scs
void write_geweke_qq_csv(std::ostream& out, const GewekeReport& report);
/// function,ks,ess_mcs,ess_scs,p_adj
void write_geweke_summary_csv(std::ostream& out, const GewekeReport& report);

/// Reads a one-column CSV with header `y`. Throws ParameterError on a
/// missing file, wrong header or unparsable line (with its line number).
std::vector<double> read_y_csv(const std::filesystem::path& path);

/// Writes through a sibling temporary file renamed into place on success,
/// so the final path never holds partial output.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace dlgibbs
