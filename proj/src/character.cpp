#include "branchlab/character.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>
#include <queue>
#include <unordered_set>

namespace branchlab {

using BigInt = boost::multiprecision::cpp_int;

namespace {

void require_dominant(const RootSystem& rs, const Weight& lambda) {
  rs.check_rank(lambda);
  if (!is_dominant(lambda))
    fail(Errc::non_dominant, "weight is not dominant for " + rs.name());
}

// (x, beta)_d for x in fundamental coordinates and beta given by simple-root
// coefficients, with the symmetrized form (alpha_i, alpha_j) = d_i C_ij.
long long form_pair(const RootSystem& rs, const Weight& x, const std::vector<int>& beta_simple) {
  long long acc = 0;
  for (int j = 0; j < rs.rank(); ++j)
    acc += static_cast<long long>(x[j]) * rs.symmetrizers()[j] * beta_simple[j];
  return acc;
}

long long form_pair(const RootSystem& rs, const Weight& x, const std::vector<long long>& beta_simple) {
  long long acc = 0;
  for (int j = 0; j < rs.rank(); ++j)
    acc += static_cast<long long>(x[j]) * rs.symmetrizers()[j] * beta_simple[j];
  return acc;
}

// Membership test for the weight system of V_lambda: the dominant
// representative must lie below lambda in the root-lattice order.
bool in_weight_system(const RootSystem& rs, const Weight& lambda, const Weight& w) {
  Weight dom = to_dominant(rs, w).weight;
  Weight diff(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) diff[i] = lambda[i] - dom[i];
  auto coords = rs.root_coords(diff);
  if (!coords) return false;
  for (long long c : *coords)
    if (c < 0) return false;
  return true;
}

std::unordered_set<Weight, WeightHash> weight_support(const RootSystemPtr& rs, const Weight& lambda,
                                                      const Limits& limits) {
  std::unordered_set<Weight, WeightHash> support;
  std::queue<Weight> work;
  support.insert(lambda);
  work.push(lambda);
  const auto& cartan = rs->cartan();
  while (!work.empty()) {
    Weight w = work.front();
    work.pop();
    for (int j = 0; j < rs->rank(); ++j) {
      Weight next = w;
      for (int k = 0; k < rs->rank(); ++k) next[k] -= cartan[k][j];
      if (support.count(next)) continue;
      if (!in_weight_system(*rs, lambda, next)) continue;
      if (static_cast<long long>(support.size()) >= limits.max_weights)
        fail(Errc::resource_limit,
             "weight system of highest weight exceeds the cap of " + std::to_string(limits.max_weights));
      support.insert(next);
      work.push(next);
    }
  }
  return support;
}

struct MemoKey {
  std::string rs;
  Weight lambda;
  bool operator==(const MemoKey& o) const { return rs == o.rs && lambda == o.lambda; }
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const {
    size_t h = std::hash<std::string>{}(k.rs);
    for (int x : k.lambda) h = h * 1099511628211ull + static_cast<unsigned>(x);
    return h;
  }
};

}  // namespace

Mult weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  require_dominant(rs, lambda);
  BigInt num = 1, den = 1;
  for (const auto& root : rs.positive_roots()) {
    long long a = 0, b = 0;
    for (int j = 0; j < rs.rank(); ++j) {
      a += static_cast<long long>(lambda[j] + 1) * root.coroot[j];
      b += root.coroot[j];
    }
    num *= a;
    den *= b;
  }
  BigInt q = num / den;
  if (q * den != num) fail(Errc::validation, "Weyl dimension product is not integral");
  if (q > BigInt(std::numeric_limits<Mult>::max()))
    fail(Errc::resource_limit, "representation dimension overflows 64 bits");
  return static_cast<Mult>(q);
}

namespace detail {

std::shared_ptr<const WeightMap> dominant_multiplicities(const RootSystemPtr& rs,
                                                         const Weight& lambda,
                                                         const Limits& limits) {
  require_dominant(*rs, lambda);

  static std::mutex mtx;
  static std::unordered_map<MemoKey, std::shared_ptr<const WeightMap>, MemoKeyHash> memo;
  static long long memo_entries = 0;
  constexpr long long kMemoBudget = 4'000'000;

  MemoKey key{rs->name(), lambda};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  auto support = weight_support(rs, lambda, limits);

  std::vector<Weight> dominants;
  for (const auto& w : support)
    if (is_dominant(w)) dominants.push_back(w);
  std::sort(dominants.begin(), dominants.end(), [&](const Weight& a, const Weight& b) {
    long long ha = height_paired(*rs, a), hb = height_paired(*rs, b);
    if (ha != hb) return ha > hb;
    return a > b;
  });

  auto result = std::make_shared<WeightMap>();
  (*result)[lambda] = 1;
  Weight two_rho_shift(rs->rank());

  for (const auto& mu : dominants) {
    if (mu == lambda) continue;
    // Freudenthal: (|lambda+rho|^2 - |mu+rho|^2) m_mu
    //            = 2 sum_{alpha>0} sum_{k>=1} m_{mu+k alpha} (mu+k alpha, alpha)
    __int128 numerator = 0;
    for (const auto& root : rs->positive_roots()) {
      Weight nu = mu;
      while (true) {
        for (int i = 0; i < rs->rank(); ++i) nu[i] += root.fund[i];
        if (!support.count(nu)) break;
        Weight dom = to_dominant(*rs, nu).weight;
        auto it = result->find(dom);
        if (it == result->end()) fail(Errc::validation, "Freudenthal recursion visited an uncomputed weight");
        numerator += static_cast<__int128>(it->second) * form_pair(*rs, nu, root.simple);
      }
    }
    Weight sum(rs->rank());
    Weight diff(rs->rank());
    for (int i = 0; i < rs->rank(); ++i) {
      sum[i] = lambda[i] + mu[i] + 2;
      diff[i] = lambda[i] - mu[i];
    }
    auto diff_coords = rs->root_coords(diff);
    if (!diff_coords) fail(Errc::validation, "dominant weight not in the root-lattice coset");
    long long denominator = form_pair(*rs, sum, *diff_coords);
    if (denominator <= 0) fail(Errc::validation, "Freudenthal denominator must be positive");
    __int128 m = 2 * numerator / denominator;
    if (2 * numerator != static_cast<__int128>(denominator) * m)
      fail(Errc::validation, "Freudenthal recursion is not integral");
    (*result)[mu] = static_cast<Mult>(m);
  }

  {
    std::lock_guard<std::mutex> lock(mtx);
    if (memo_entries + static_cast<long long>(result->size()) <= kMemoBudget) {
      auto [it, inserted] = memo.emplace(key, result);
      if (inserted) memo_entries += static_cast<long long>(result->size());
      return it->second;
    }
  }
  return result;
}

std::vector<std::pair<Weight, Mult>> expand_character(const RootSystemPtr& rs, const Weight& lambda,
                                                      const Limits& limits) {
  auto dom = dominant_multiplicities(rs, lambda, limits);
  std::vector<std::pair<Weight, Mult>> out;
  for (const auto& [mu, m] : *dom)
    for (auto& w : weyl_orbit(*rs, mu)) out.emplace_back(std::move(w), m);
  return out;
}

}  // namespace detail

Character freudenthal_character(const RootSystemPtr& rs, const Weight& lambda, const Limits& limits) {
  require_dominant(*rs, lambda);
  const auto& factors = rs->factors();

  if (factors.size() == 1) {
    Character ch{rs, {}};
    for (auto& [w, m] : detail::expand_character(rs, lambda, limits)) ch.table.emplace(std::move(w), m);
    return ch;
  }

  // Product system: outer product of the factor characters.
  std::vector<std::vector<std::pair<Weight, Mult>>> parts;
  long long cells = 1;
  for (size_t f = 0; f < factors.size(); ++f) {
    auto sub = build_root_system(factors[f].series + std::to_string(factors[f].rank));
    int off = rs->factor_offsets()[f];
    Weight block(lambda.begin() + off, lambda.begin() + off + factors[f].rank);
    parts.push_back(detail::expand_character(sub, block, limits));
    cells *= static_cast<long long>(parts.back().size());
    if (cells > limits.max_weights)
      fail(Errc::resource_limit,
           "weight system of highest weight exceeds the cap of " + std::to_string(limits.max_weights));
  }

  Character ch{rs, {}};
  ch.table.reserve(static_cast<size_t>(cells));
  Weight scratch(rs->rank());
  std::function<void(size_t, Mult)> emit = [&](size_t f, Mult m) {
    if (f == parts.size()) {
      ch.table[scratch] += m;
      return;
    }
    int off = rs->factor_offsets()[f];
    for (const auto& [w, mw] : parts[f]) {
      std::copy(w.begin(), w.end(), scratch.begin() + off);
      emit(f + 1, m * mw);
    }
  };
  emit(0, 1);
  return ch;
}

}  // namespace branchlab
