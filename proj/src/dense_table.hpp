#pragma once

#include <cstddef>
#include <vector>

#include "branchlab/character.hpp"

namespace branchlab::detail {

/// Axis-aligned integer box with row-major flat indexing; the workhorse
/// behind restricted-character accumulation and Brauer subtraction.
struct Box {
  std::vector<int> lo, hi;
  std::vector<size_t> stride;
  size_t cells = 0;

  Box() = default;
  Box(std::vector<int> lo_, std::vector<int> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    stride.assign(lo.size(), 1);
    cells = 1;
    for (size_t i = lo.size(); i-- > 0;) {
      stride[i] = cells;
      cells *= static_cast<size_t>(hi[i] - lo[i] + 1);
    }
  }

  bool contains(const Weight& w) const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (w[i] < lo[i] || w[i] > hi[i]) return false;
    return true;
  }

  size_t index(const Weight& w) const {
    size_t idx = 0;
    for (size_t i = 0; i < lo.size(); ++i) idx += static_cast<size_t>(w[i] - lo[i]) * stride[i];
    return idx;
  }

  Weight decode(size_t idx) const {
    Weight w(lo.size());
    for (size_t i = 0; i < lo.size(); ++i) {
      w[i] = lo[i] + static_cast<int>(idx / stride[i]);
      idx %= stride[i];
    }
    return w;
  }
};

/// Signed weight table over either a dense box (fast path) or a hash map
/// (fallback for unbounded restriction matrices).
struct WeightTable {
  Box box;
  std::vector<Mult> dense;
  WeightMap sparse;
  bool is_dense = false;

  void add(const Weight& w, Mult m) {
    if (is_dense)
      dense[box.index(w)] += m;
    else
      sparse[w] += m;
  }

  // Returns false when w falls outside the table's domain.
  bool sub_checked(const Weight& w, Mult m) {
    if (is_dense) {
      if (!box.contains(w)) return false;
      dense[box.index(w)] -= m;
    } else {
      sparse[w] -= m;
    }
    return true;
  }

  Mult at(const Weight& w) const {
    if (is_dense) return box.contains(w) ? dense[box.index(w)] : 0;
    auto it = sparse.find(w);
    return it == sparse.end() ? 0 : it->second;
  }
};

}  // namespace branchlab::detail
