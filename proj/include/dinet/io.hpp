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

#pragma once

// File formats:
//   *.mtx  Matrix Market "coordinate pattern general", 1-based indices.
//   *.tsv  edge list "row<TAB>col", 1-based, preceded by a "# n_r n_c" line.
//   *.csv  dense real matrix, one row per line, %.17g.
//   labels one 1-based integer per line.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dinet/model.hpp"

namespace dinet::io {

void write_matrix_market(std::ostream& os, const BiAdjacency& a);
BiAdjacency read_matrix_market(std::istream& is);

void write_edge_list(std::ostream& os, const BiAdjacency& a);
/// Reads an edge list. Dimensions come from a leading "# n_r n_c" line when
/// present, otherwise from the largest indices seen.
BiAdjacency read_edge_list(std::istream& is);

void write_csv(std::ostream& os, const Matrix& m);
Matrix read_csv(std::istream& is);

void write_labels(std::ostream& os, const ColumnLabels& labels);
/// Returns the 1-based labels as written in the file.
std::vector<int> read_labels(std::istream& is);

/// printf-style "%.17g" / "%.6g" formatting.
std::string format_g17(double v);
std::string format_g6(double v);

// Path-based helpers. Adjacency format is chosen by extension (.mtx, .tsv,
// .csv for a dense 0/1 matrix); anything else is an IoError.
void save_adjacency(const std::filesystem::path& path, const BiAdjacency& a);
BiAdjacency load_adjacency(const std::filesystem::path& path);
void save_csv(const std::filesystem::path& path, const Matrix& m);
Matrix load_csv(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const ColumnLabels& labels);
std::vector<int> load_labels(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);

}  // namespace dinet::io
