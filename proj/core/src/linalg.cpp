#include "chiral/linalg.hpp"

namespace chiral {

namespace {

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
  for (const auto& [col, v] : x) {
    auto [it, inserted] = y.try_emplace(col, a * v);
    if (!inserted) {
      it->second += a * v;
      if (is_zero(it->second)) y.erase(it);
    }
  }
}

}  // namespace

void RowReducer::reduce(SparseVec& row) const {
  // Pivot rows only have entries right of their pivot, so a single left to
  // right sweep clears every pivot column.
  auto it = row.begin();
  while (it != row.end()) {
    auto piv = rows_.find(it->first);
    if (piv == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    const Scalar factor = -it->second;
    axpy(row, factor, piv->second);
    it = row.upper_bound(col);
  }
}

bool RowReducer::insert(SparseVec row) {
  for (auto it = row.begin(); it != row.end();) it = is_zero(it->second) ? row.erase(it) : std::next(it);
  reduce(row);
  if (row.empty()) return false;
  const std::size_t pivot = row.begin()->first;
  const Scalar inv = 1 / row.begin()->second;
  for (auto& [col, v] : row) v *= inv;
  rows_.emplace(pivot, std::move(row));
  return true;
}

std::size_t rank(const std::vector<SparseVec>& rows) {
  RowReducer r;
  for (const auto& row : rows) r.insert(row);
  return r.rank();
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& rows, std::size_t cols) {
  RowReducer r;
  for (const auto& row : rows) r.insert(row);
  std::vector<SparseVec> basis;
  // Back substitution to reduced echelon form.
  std::map<std::size_t, SparseVec> pivots = r.pivot_rows();
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    for (auto jt = std::next(it); jt != pivots.rend(); ++jt) {
      auto hit = jt->second.find(it->first);
      if (hit != jt->second.end()) {
        const Scalar factor = -hit->second;
        axpy(jt->second, factor, it->second);
      }
    }
  }
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivots.count(free)) continue;
    SparseVec x{{free, Scalar(1)}};
    for (const auto& [pc, prow] : pivots) {
      auto it = prow.find(free);
      if (it != prow.end()) x[pc] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace chiral
