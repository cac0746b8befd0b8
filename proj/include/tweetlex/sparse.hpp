#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tweetlex {

/// Row-compressed sparse matrix. Column indices are sorted within each row.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;  // rows + 1 entries
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  SparseMatrix() : row_ptr(1, 0) {}
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_ptr(r + 1, 0) {}

  std::size_t nnz() const { return values.size(); }

  double at(std::size_t r, std::size_t c) const;

  /// Appends a row given (col, value) pairs sorted by column.
  void append_row(const std::vector<std::pair<std::size_t, double>>& entries);

  double row_dot(std::size_t r, const std::vector<double>& dense) const;
};

SparseMatrix dense_to_sparse(const std::vector<std::vector<double>>& dense);

/// Text persistence: a feature-name header followed by sparse triplets.
///   features <M>      then M feature-name lines
///   rows <N>          then N row-id lines
///   triplets <nnz>    then nnz lines "row<TAB>col<TAB>value"
struct FeatureMatrixFile {
  std::vector<std::string> feature_names;
  std::vector<std::string> row_ids;
  SparseMatrix matrix;
};

void save_feature_matrix(const FeatureMatrixFile& fm, const std::string& path);
FeatureMatrixFile load_feature_matrix(const std::string& path);

}  // namespace tweetlex
