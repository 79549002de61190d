#include "branchlab/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace branchlab {

namespace {

BigInt dot(const IVec& a, const IVec& b) {
  BigInt acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool is_zero(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

// Rank over Q by fraction-free elimination.
int matrix_rank(std::vector<IVec> m) {
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (size_t i = row + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      BigInt a = m[row][col], b = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] * a - m[row][j] * b;
      make_primitive(m[i]);
    }
    ++row;
  }
  return static_cast<int>(row);
}

// Canonical primitive row basis of the span (Gauss-Jordan echelon form,
// leading entries positive, rows sorted); unique for a given subspace.
std::vector<IVec> canonical_span_basis(std::vector<IVec> m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      BigInt a = m[row][col], b = m[i][col];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * a - m[row][j] * b;
      make_primitive(m[i]);
    }
    ++row;
  }
  m.resize(row);
  for (auto& r : m) {
    make_primitive(r);
    for (const BigInt& x : r) {
      if (x > 0) break;
      if (x < 0) {
        for (BigInt& y : r) y = -y;
        break;
      }
    }
  }
  std::sort(m.begin(), m.end());
  return m;
}

using TightSet = std::vector<std::uint64_t>;

bool tight_subset(const TightSet& a, const TightSet& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

struct Ray {
  IVec v;
  TightSet tight;
};

struct DDResult {
  std::vector<IVec> lineality;  // canonical span basis
  std::vector<IVec> rays;       // extreme rays modulo the lineality space
};

// Generators of { y : <a, y> >= 0 for all constraints }, inserting the
// constraints one at a time starting from the full space.  Constraint order
// is fixed by the caller, so the whole computation is deterministic.
DDResult double_description(int dim, const std::vector<IVec>& constraints) {
  size_t words = (constraints.size() + 63) / 64;
  if (words == 0) words = 1;

  std::vector<IVec> lin;
  for (int i = 0; i < dim; ++i) {
    IVec e(dim, 0);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  auto exact_tight = [&](const IVec& v, size_t upto) {
    TightSet t(words, 0);
    for (size_t c = 0; c <= upto; ++c)
      if (dot(constraints[c], v) == 0) t[c / 64] |= (1ull << (c % 64));
    return t;
  };

  for (size_t ci = 0; ci < constraints.size(); ++ci) {
    const IVec& a = constraints[ci];

    // If the constraint cuts the lineality space, one basis vector becomes a
    // ray and the rest (and all rays) are projected into the hyperplane.
    int pivot = -1;
    std::vector<BigInt> lin_pair(lin.size());
    for (size_t i = 0; i < lin.size(); ++i) {
      lin_pair[i] = dot(a, lin[i]);
      if (pivot < 0 && lin_pair[i] != 0) pivot = static_cast<int>(i);
    }
    if (pivot >= 0) {
      IVec b0 = lin[pivot];
      BigInt s0 = lin_pair[pivot];
      if (s0 < 0) {
        for (BigInt& x : b0) x = -x;
        s0 = -s0;
      }
      std::vector<IVec> next_lin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        IVec b = lin[i];
        if (lin_pair[i] != 0)
          for (int j = 0; j < dim; ++j) b[j] = b[j] * s0 - b0[j] * lin_pair[i];
        make_primitive(b);
        next_lin.push_back(std::move(b));
      }
      lin = std::move(next_lin);
      // Project rays onto the new hyperplane; pairings with the processed
      // constraints are unchanged (they vanish on b0), and every projected
      // ray is tight at the new constraint.
      for (auto& r : rays) {
        BigInt s = dot(a, r.v);
        if (s != 0) {
          for (int j = 0; j < dim; ++j) r.v[j] = r.v[j] * s0 - b0[j] * s;
          make_primitive(r.v);
        }
        r.tight[ci / 64] |= (1ull << (ci % 64));
      }
      Ray fresh;
      fresh.v = std::move(b0);
      fresh.tight.assign(words, 0);
      for (size_t c = 0; c < ci; ++c) fresh.tight[c / 64] |= (1ull << (c % 64));
      rays.push_back(std::move(fresh));
      continue;
    }

    std::vector<size_t> pos, zero, neg;
    std::vector<BigInt> val(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] == 0)
        zero.push_back(i);
      else
        neg.push_back(i);
    }
    for (size_t i : zero) rays[i].tight[ci / 64] |= (1ull << (ci % 64));
    if (neg.empty()) continue;

    std::vector<Ray> combos;
    for (size_t p : pos) {
      for (size_t n : neg) {
        TightSet common(words);
        for (size_t w = 0; w < words; ++w) common[w] = rays[p].tight[w] & rays[n].tight[w];
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (tight_subset(common, rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray w;
        w.v.resize(dim);
        for (int j = 0; j < dim; ++j) w.v[j] = val[p] * rays[n].v[j] - val[n] * rays[p].v[j];
        make_primitive(w.v);
        w.tight = exact_tight(w.v, ci);
        combos.push_back(std::move(w));
      }
    }

    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size() + combos.size());
    for (size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) next.push_back(std::move(rays[i]));
    for (auto& w : combos) next.push_back(std::move(w));
    rays = std::move(next);
  }

  DDResult out;
  out.lineality = canonical_span_basis(std::move(lin));
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

std::vector<IVec> normalize_generators(int ambient, std::vector<IVec> raw) {
  std::vector<IVec> out;
  for (auto& v : raw) {
    if (static_cast<int>(v.size()) != ambient)
      fail(Errc::dimension_mismatch, "generator has wrong length for ambient dimension " +
                                         std::to_string(ambient));
    if (is_zero(v)) continue;
    make_primitive(v);
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IVec> with_sign_pairs(const DDResult& dd) {
  std::vector<IVec> out = dd.rays;
  for (const auto& b : dd.lineality) {
    IVec neg = b;
    for (BigInt& x : neg) x = -x;
    out.push_back(b);
    out.push_back(std::move(neg));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void make_primitive(IVec& v) {
  BigInt g = 0;
  for (const BigInt& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (BigInt& x : v) x /= g;
}

namespace {

IVec clear_denominators(const std::vector<BigRat>& v) {
  BigInt denom = 1;
  for (const auto& q : v) denom = boost::multiprecision::lcm(denom, BigInt(denominator(q)));
  IVec w;
  w.reserve(v.size());
  for (const auto& q : v) w.push_back(BigInt(numerator(q)) * (denom / BigInt(denominator(q))));
  return w;
}

}  // namespace

RationalCone RationalCone::from_generators(int ambient_dim,
                                           const std::vector<std::vector<long long>>& vecs) {
  std::vector<IVec> raw;
  raw.reserve(vecs.size());
  for (const auto& v : vecs) raw.emplace_back(v.begin(), v.end());

  RationalCone c;
  c.ambient_ = ambient_dim;
  auto prim = normalize_generators(ambient_dim, std::move(raw));

  // V -> H: the supporting halfspaces are the generators of the dual cone.
  DDResult dual = double_description(ambient_dim, prim);
  c.halfspaces_ = with_sign_pairs(dual);

  // H -> V: canonical generators, independent of the input presentation.
  DDResult primal = double_description(ambient_dim, c.halfspaces_);
  c.generators_ = with_sign_pairs(primal);
  c.pointed_ = primal.lineality.empty();
  c.dim_ = ambient_dim - static_cast<int>(dual.lineality.size());
  if (c.dim_ != matrix_rank(c.generators_))
    fail(Errc::validation, "cone dimension disagreement between primal and dual computations");
  return c;
}

RationalCone RationalCone::from_generators(int ambient_dim,
                                           const std::vector<std::vector<BigRat>>& vecs) {
  std::vector<std::vector<long long>> cleared;
  cleared.reserve(vecs.size());
  for (const auto& v : vecs) {
    IVec w = clear_denominators(v);
    std::vector<long long> row;
    row.reserve(w.size());
    for (const auto& x : w) {
      if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        fail(Errc::resource_limit, "generator coordinate overflows after clearing denominators");
      row.push_back(static_cast<long long>(x));
    }
    cleared.push_back(std::move(row));
  }
  return from_generators(ambient_dim, cleared);
}

RationalCone::Predicates RationalCone::predicates(const std::vector<long long>& x) const {
  if (static_cast<int>(x.size()) != ambient_)
    fail(Errc::dimension_mismatch, "point has wrong length for ambient dimension " +
                                       std::to_string(ambient_));
  IVec v(x.begin(), x.end());
  bool contains = true, strict = true;
  for (const auto& h : halfspaces_) {
    BigInt s = dot(h, v);
    if (s < 0) contains = false;
    if (s <= 0) strict = false;
  }
  return {contains, contains && strict && dim_ == ambient_};
}

RationalCone::Predicates RationalCone::predicates(const std::vector<BigRat>& x) const {
  if (static_cast<int>(x.size()) != ambient_)
    fail(Errc::dimension_mismatch, "point has wrong length for ambient dimension " +
                                       std::to_string(ambient_));
  IVec v = clear_denominators(x);
  bool contains = true, strict = true;
  for (const auto& h : halfspaces_) {
    BigInt s = dot(h, v);
    if (s < 0) contains = false;
    if (s <= 0) strict = false;
  }
  return {contains, contains && strict && dim_ == ambient_};
}

bool same_cone(const RationalCone& a, const RationalCone& b) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  for (const auto& g : a.generators())
    for (const auto& h : b.halfspaces())
      if (dot(h, g) < 0) return false;
  for (const auto& g : b.generators())
    for (const auto& h : a.halfspaces())
      if (dot(h, g) < 0) return false;
  return true;
}

}  // namespace branchlab
