#include "tweetlex/sparse.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tweetlex {

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto begin = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
  const auto end = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return 0.0;
  return values[static_cast<std::size_t>(it - col_idx.begin())];
}

void SparseMatrix::append_row(const std::vector<std::pair<std::size_t, double>>& entries) {
  for (const auto& [c, v] : entries) {
    if (c >= cols) throw std::out_of_range("SparseMatrix::append_row: column out of range");
    if (v != 0.0) {
      col_idx.push_back(c);
      values.push_back(v);
    }
  }
  ++rows;
  row_ptr.push_back(col_idx.size());
}

double SparseMatrix::row_dot(std::size_t r, const std::vector<double>& dense) const {
  double acc = 0.0;
  for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
    acc += values[k] * dense[col_idx[k]];
  return acc;
}

SparseMatrix dense_to_sparse(const std::vector<std::vector<double>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows == 0 ? 0 : dense[0].size();
  SparseMatrix m(0, cols);
  std::vector<std::pair<std::size_t, double>> entries;
  for (const auto& row : dense) {
    if (row.size() != cols) throw std::invalid_argument("dense_to_sparse: ragged input");
    entries.clear();
    for (std::size_t c = 0; c < cols; ++c)
      if (row[c] != 0.0) entries.emplace_back(c, row[c]);
    m.append_row(entries);
  }
  return m;
}

void save_feature_matrix(const FeatureMatrixFile& fm, const std::string& path) {
  if (fm.row_ids.size() != fm.matrix.rows)
    throw std::invalid_argument("save_feature_matrix: row id count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_feature_matrix: cannot write " + path);
  out << "features " << fm.feature_names.size() << '\n';
  for (const auto& n : fm.feature_names) out << n << '\n';
  out << "rows " << fm.matrix.rows << '\n';
  for (const auto& id : fm.row_ids) out << id << '\n';
  out << "triplets " << fm.matrix.nnz() << '\n';
  char buf[64];
  for (std::size_t r = 0; r < fm.matrix.rows; ++r) {
    for (std::size_t k = fm.matrix.row_ptr[r]; k < fm.matrix.row_ptr[r + 1]; ++k) {
      // %.17g round-trips IEEE doubles exactly
      std::snprintf(buf, sizeof buf, "%.17g", fm.matrix.values[k]);
      out << r << '\t' << fm.matrix.col_idx[k] << '\t' << buf << '\n';
    }
  }
}

namespace {

std::size_t parse_count(std::istream& in, const std::string& keyword, const std::string& path) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("feature matrix " + path + ": truncated before '" + keyword + "'");
  std::istringstream ss(line);
  std::string word;
  std::size_t n = 0;
  if (!(ss >> word >> n) || word != keyword)
    throw std::runtime_error("feature matrix " + path + ": expected '" + keyword + " <n>'");
  return n;
}

}  // namespace

FeatureMatrixFile load_feature_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_feature_matrix: cannot open " + path);
  FeatureMatrixFile fm;

  const std::size_t n_features = parse_count(in, "features", path);
  fm.feature_names.reserve(n_features);
  std::string line;
  for (std::size_t i = 0; i < n_features; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("load_feature_matrix: truncated feature names in " + path);
    fm.feature_names.push_back(line);
  }

  const std::size_t n_rows = parse_count(in, "rows", path);
  fm.row_ids.reserve(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("load_feature_matrix: truncated row ids in " + path);
    fm.row_ids.push_back(line);
  }

  const std::size_t nnz = parse_count(in, "triplets", path);
  std::vector<std::vector<std::pair<std::size_t, double>>> per_row(n_rows);
  for (std::size_t i = 0; i < nnz; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error("load_feature_matrix: truncated triplets in " + path);
    std::size_t r = 0, c = 0;
    double v = 0.0;
    if (std::sscanf(line.c_str(), "%zu\t%zu\t%lg", &r, &c, &v) != 3)
      throw std::runtime_error("load_feature_matrix: bad triplet line in " + path);
    if (r >= n_rows || c >= n_features)
      throw std::runtime_error("load_feature_matrix: triplet out of range in " + path);
    per_row[r].emplace_back(c, v);
  }

  fm.matrix = SparseMatrix(0, n_features);
  for (auto& row : per_row) {
    std::sort(row.begin(), row.end());
    fm.matrix.append_row(row);
  }
  return fm;
}

}  // namespace tweetlex
