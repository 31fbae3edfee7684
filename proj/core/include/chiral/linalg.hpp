#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "chiral/scalar.hpp"

namespace chiral {

using SparseVec = std::map<std::size_t, Scalar>;

/// Incremental exact row echelon form over the rationals.
class RowReducer {
 public:
  /// Returns true when the row is independent of everything inserted so far.
  bool insert(SparseVec row);
  std::size_t rank() const { return rows_.size(); }
  const std::map<std::size_t, SparseVec>& pivot_rows() const { return rows_; }

 private:
  void reduce(SparseVec& row) const;

  std::map<std::size_t, SparseVec> rows_;  // pivot column -> row with leading 1
};

std::size_t rank(const std::vector<SparseVec>& rows);

/// Basis of {x : A x = 0} for A with the given rows and column count.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, std::size_t cols);

}  // namespace chiral
