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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinmetro::cli {

/// Formats a double with 17 significant digits (lossless round trip).
std::string format_real(double v);

/// CSV dialect shared with the plotting scripts: '#'-prefixed metadata
/// (version, command, seed, parameters), one header row, ',' separators,
/// '\n' line endings, 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(std::string_view command, std::uint64_t seed);

  void param(std::string_view key, std::string_view value);
  void param(std::string_view key, double value) { param(key, format_real(value)); }
  void header(std::initializer_list<std::string_view> columns);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(std::string_view v);
  void end_row();

  const std::string& str() const noexcept { return out_; }

 private:
  void sep();

  std::string out_;
  bool row_open_ = false;
};

}  // namespace spinmetro::cli
