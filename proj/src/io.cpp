// Copyright 2026 The dinet Authors.
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

#include "dinet/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dinet/errors.hpp"

namespace dinet::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

Index parse_index(const std::string& token, const std::string& context) {
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') {
    throw IoError(context + ": expected integer, got '" + token + "'");
  }
  return static_cast<Index>(v);
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_matrix_market(std::ostream& os, const BiAdjacency& a) {
  os << "%%MatrixMarket matrix coordinate pattern general\n";
  os << a.rows() << ' ' << a.cols() << ' ' << a.edge_count() << '\n';
  for (const auto& [r, c] : a.edges()) os << (r + 1) << ' ' << (c + 1) << '\n';
}

BiAdjacency read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("Matrix Market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw IoError("Matrix Market: missing '%%MatrixMarket matrix' banner");
  }
  if (lower(format) != "coordinate") {
    throw IoError("Matrix Market: only coordinate format is supported");
  }
  field = lower(field);
  if (field != "pattern" && field != "integer" && field != "real") {
    throw IoError("Matrix Market: unsupported field '" + field + "'");
  }
  if (lower(symmetry) != "general") {
    throw IoError("Matrix Market: only general (unsymmetric) matrices are "
                  "supported");
  }

  while (std::getline(is, line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (!blank(line)) break;
  }
  std::istringstream size_line(line);
  std::string sr, sc, snnz;
  if (!(size_line >> sr >> sc >> snnz)) {
    throw IoError("Matrix Market: malformed size line '" + line + "'");
  }
  const Index rows = parse_index(sr, "Matrix Market size");
  const Index cols = parse_index(sc, "Matrix Market size");
  const Index nnz = parse_index(snnz, "Matrix Market size");

  std::vector<BiAdjacency::Edge> edges;
  edges.reserve(static_cast<std::size_t>(std::max<Index>(nnz, 0)));
  Index seen = 0;
  while (seen < nnz && std::getline(is, line)) {
    if (blank(line) || line[0] == '%') continue;
    std::istringstream entry(line);
    std::string si, sj, sv;
    if (!(entry >> si >> sj)) {
      throw IoError("Matrix Market: malformed entry '" + line + "'");
    }
    const Index i = parse_index(si, "Matrix Market entry");
    const Index j = parse_index(sj, "Matrix Market entry");
    double value = 1.0;
    if (field != "pattern") {
      if (!(entry >> sv)) throw IoError("Matrix Market: missing value");
      value = std::strtod(sv.c_str(), nullptr);
      if (value != 0.0 && value != 1.0) {
        throw IoError("Matrix Market: adjacency values must be 0 or 1");
      }
    }
    if (value == 1.0) edges.emplace_back(i - 1, j - 1);
    ++seen;
  }
  if (seen != nnz) {
    throw IoError("Matrix Market: expected " + std::to_string(nnz) +
                  " entries, found " + std::to_string(seen));
  }
  return BiAdjacency(rows, cols, std::move(edges));
}

void write_edge_list(std::ostream& os, const BiAdjacency& a) {
  os << "# " << a.rows() << ' ' << a.cols() << '\n';
  for (const auto& [r, c] : a.edges()) os << (r + 1) << '\t' << (c + 1) << '\n';
}

BiAdjacency read_edge_list(std::istream& is) {
  Index rows = -1, cols = -1, max_r = 0, max_c = 0;
  std::vector<BiAdjacency::Edge> edges;
  std::string line;
  bool first_content = true;
  while (std::getline(is, line)) {
    if (blank(line)) continue;
    if (line[0] == '#') {
      if (first_content) {
        std::istringstream dims(line.substr(1));
        Index r = 0, c = 0;
        if (dims >> r >> c) {
          rows = r;
          cols = c;
        }
      }
      first_content = false;
      continue;
    }
    first_content = false;
    std::istringstream entry(line);
    std::string si, sj;
    if (!(entry >> si >> sj)) {
      throw IoError("edge list: malformed line '" + line + "'");
    }
    const Index i = parse_index(si, "edge list");
    const Index j = parse_index(sj, "edge list");
    if (i < 1 || j < 1) throw IoError("edge list indices are 1-based");
    max_r = std::max(max_r, i);
    max_c = std::max(max_c, j);
    edges.emplace_back(i - 1, j - 1);
  }
  if (rows < 0) {
    rows = max_r;
    cols = max_c;
  }
  return BiAdjacency(rows, cols, std::move(edges));
}

void write_csv(std::ostream& os, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_g17(m(i, j));
    }
    os << '\n';
  }
}

Matrix read_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (blank(line)) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end && std::isspace(static_cast<unsigned char>(*end))) ++end;
      if (end == cell.c_str() || (end && *end != '\0')) {
        throw IoError("CSV: cannot parse '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("CSV: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  const Index r = static_cast<Index>(rows.size());
  const Index c = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

void write_labels(std::ostream& os, const ColumnLabels& labels) {
  for (int l : labels.labels()) os << (l + 1) << '\n';
}

std::vector<int> read_labels(std::istream& is) {
  std::vector<int> labels;
  std::string line;
  while (std::getline(is, line)) {
    if (blank(line)) continue;
    std::istringstream ss(line);
    std::string token;
    ss >> token;
    labels.push_back(static_cast<int>(parse_index(token, "labels")));
  }
  return labels;
}

void save_adjacency(const std::filesystem::path& path, const BiAdjacency& a) {
  const auto ext = lower(path.extension().string());
  auto out = open_out(path);
  if (ext == ".mtx") {
    write_matrix_market(out, a);
  } else if (ext == ".tsv") {
    write_edge_list(out, a);
  } else if (ext == ".csv") {
    write_csv(out, a.to_dense());
  } else {
    throw IoError("unknown adjacency extension '" + ext +
                  "' (use .mtx, .tsv or .csv)");
  }
  finish(out, path);
}

BiAdjacency load_adjacency(const std::filesystem::path& path) {
  const auto ext = lower(path.extension().string());
  auto in = open_in(path);
  if (ext == ".mtx") return read_matrix_market(in);
  if (ext == ".tsv") return read_edge_list(in);
  if (ext == ".csv") {
    const Matrix dense = read_csv(in);
    std::vector<BiAdjacency::Edge> edges;
    for (Index i = 0; i < dense.rows(); ++i) {
      for (Index j = 0; j < dense.cols(); ++j) {
        if (dense(i, j) == 1.0) {
          edges.emplace_back(i, j);
        } else if (dense(i, j) != 0.0) {
          throw IoError("dense adjacency must be binary");
        }
      }
    }
    return BiAdjacency(dense.rows(), dense.cols(), std::move(edges));
  }
  throw IoError("unknown adjacency extension '" + ext +
                "' (use .mtx, .tsv or .csv)");
}

void save_csv(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_out(path);
  write_csv(out, m);
  finish(out, path);
}

Matrix load_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csv(in);
}

void save_labels(const std::filesystem::path& path,
                 const ColumnLabels& labels) {
  auto out = open_out(path);
  write_labels(out, labels);
  finish(out, path);
}

std::vector<int> load_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels(in);
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

std::string load_text(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace dinet::io
