// Copyright 2026 The bqsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BQSIM_CSV_HPP_
#define BQSIM_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bqsim {

// Comma-separated table with a header row. Cells are kept as text; numeric
// access goes through number(), which reports the offending row and column.
// Quoting is not supported: fields may not contain commas.
class CsvTable {
 public:
  static CsvTable read(const std::filesystem::path& path);
  static CsvTable parse(std::string_view text, const std::string& source = "<memory>");

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return cells_.size(); }
  std::size_t cols() const noexcept { return header_.size(); }

  // Throws DataError when the column is absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;

  const std::string& cell(std::size_t row, std::size_t col) const { return cells_[row][col]; }
  // Row numbers in error messages are 1-based data rows (header excluded).
  double number(std::size_t row, std::size_t col) const;
  std::vector<double> numeric_column(std::size_t col) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> cells_;
};

// Fixed 17 significant digits, as written to every CSV file.
std::string format_double(double value);
// Shortest text that parses back to exactly `value` (for config echoes).
std::string format_shortest(double value);

// Streams rows to a file: comma separated, LF line endings, 17 significant
// digits. The header is written on construction.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& add(double value);
  CsvWriter& add(long long value);
  CsvWriter& add(std::string_view text);
  CsvWriter& add(std::span<const double> values);
  void end_row();

 private:
  void separator();

  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t pending_ = 0;
};

}  // namespace bqsim

#endif  // BQSIM_CSV_HPP_
