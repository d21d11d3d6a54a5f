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

#include "zeno/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace zeno::cli {

std::string format_double(double v) {
  // Avoid "-0" so identical physics prints identically.
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != header_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "CSV row has " + std::to_string(values.size()) + " fields, header has " +
                                                  std::to_string(header_.size()));
  }
  rows_.push_back(values);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t k = 0; k < header_.size(); ++k) out += (k ? "," : "") + header_[k];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + format_double(row[k]);
    out += '\n';
  }
  return out;
}

std::string matrix_dump(const CMatrix& m) {
  std::string out = "dim " + std::to_string(m.rows()) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += format_double(m(i, j).real()) + "," + format_double(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

CMatrix parse_matrix_dump(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long dim = 0;
  if (!(in >> tag >> dim) || tag != "dim" || dim < 1) {
    throw Error(ErrorCode::SchemaViolation, "matrix dump: expected 'dim <n>' header");
  }
  CMatrix m(dim, dim);
  for (long i = 0; i < dim; ++i) {
    for (long j = 0; j < dim; ++j) {
      std::string entry;
      if (!(in >> entry)) throw Error(ErrorCode::SchemaViolation, "matrix dump: truncated");
      const auto comma = entry.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::SchemaViolation, "matrix dump: entry needs re,im");
      m(i, j) = Complex(std::stod(entry.substr(0, comma)), std::stod(entry.substr(comma + 1)));
    }
  }
  return m;
}

void write_file(const std::string& path, const std::string& content) {
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + parent.string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace zeno::cli
