#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "bsgen/field.hpp"

namespace bsgen {

/// Sparse rows over ℚ: column → nonzero entry.
using SparseRow = std::map<std::size_t, Rational>;

/// Reduced row echelon form, in place. Returns the pivot column of each row
/// (rows are reordered by pivot; zero rows are dropped).
inline std::vector<std::size_t> rref(std::vector<SparseRow>& rows) {
  std::vector<SparseRow> done;
  std::vector<std::size_t> pivots;
  for (auto& r : rows) {
    // Reduce against the current echelon rows.
    for (std::size_t k = 0; k < done.size(); ++k) {
      auto it = r.find(pivots[k]);
      if (it == r.end()) continue;
      Rational c = it->second;
      for (const auto& [col, v] : done[k]) {
        Rational& slot = r[col];
        slot -= c * v;
        if (slot == 0) r.erase(col);
      }
    }
    if (r.empty()) continue;
    std::size_t pc = r.begin()->first;
    Rational inv = Rational(1) / r.begin()->second;
    for (auto& [col, v] : r) v *= inv;
    // Back-substitute into the earlier rows.
    for (auto& d : done) {
      auto it = d.find(pc);
      if (it == d.end()) continue;
      Rational c = it->second;
      for (const auto& [col, v] : r) {
        Rational& slot = d[col];
        slot -= c * v;
        if (slot == 0) d.erase(col);
      }
    }
    done.push_back(std::move(r));
    pivots.push_back(pc);
  }
  std::vector<std::size_t> idx(done.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
  rows.clear();
  std::vector<std::size_t> sorted;
  for (auto i : idx) {
    rows.push_back(std::move(done[i]));
    sorted.push_back(pivots[i]);
  }
  return sorted;
}

/// Basis of {v : M v = 0} for an m × ncols matrix given by sparse rows.
inline std::vector<std::vector<Rational>> nullspace(std::vector<SparseRow> rows, std::size_t ncols) {
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(ncols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      auto it = rows[k].find(free);
      if (it != rows[k].end()) v[pivots[k]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace bsgen
