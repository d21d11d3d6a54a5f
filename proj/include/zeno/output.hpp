// Copyright 2026 The zeno Authors
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

#pragma once

// File formats.
//
// CSV: one header row, comma separated, '\n' line ends, floats printed with 17 significant
// digits ("%.17g"), which round-trips doubles exactly.
//
// Matrix dump:
//   dim <n>
//   <re>,<im> <re>,<im> ...     (n rows of n entries, same float format)

#include <string>
#include <string_view>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno::cli {

std::string format_double(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

std::string matrix_dump(const CMatrix& m);
CMatrix parse_matrix_dump(std::string_view text);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace zeno::cli
