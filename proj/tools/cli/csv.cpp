// Copyright 2026 The spinmetro Authors
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

#include "cli/csv.hpp"

#include <cstdio>

#include "spinmetro/version.hpp"

namespace spinmetro::cli {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

CsvWriter::CsvWriter(std::string_view command, std::uint64_t seed) {
  out_ += "# version: ";
  out_ += kVersion;
  out_ += "\n# command: ";
  out_ += command;
  out_ += "\n# seed: " + std::to_string(seed) + "\n";
}

void CsvWriter::param(std::string_view key, std::string_view value) {
  out_ += "# ";
  out_ += key;
  out_ += ": ";
  out_ += value;
  out_ += '\n';
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  for (auto c : columns) cell(c);
  end_row();
}

void CsvWriter::sep() {
  if (row_open_) out_ += ',';
  row_open_ = true;
}

CsvWriter& CsvWriter::cell(double v) {
  sep();
  out_ += format_real(v);
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  sep();
  out_ += std::to_string(v);
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
  sep();
  if (v.find_first_of(",\"\n") == std::string_view::npos) {
    out_ += v;
    return *this;
  }
  out_ += '"';
  for (char c : v) {
    if (c == '"') out_ += '"';
    out_ += c;
  }
  out_ += '"';
  return *this;
}

void CsvWriter::end_row() {
  out_ += '\n';
  row_open_ = false;
}

}  // namespace spinmetro::cli
