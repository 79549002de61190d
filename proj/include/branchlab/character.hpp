#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "branchlab/root_system.hpp"

namespace branchlab {

struct WeightHash {
  size_t operator()(const Weight& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(static_cast<unsigned>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

using WeightMap = std::unordered_map<Weight, Mult, WeightHash>;

/// Finite weight-multiplicity table of a (genuine) character.  Support is
/// Weyl-stable with orbit-constant multiplicities.
struct Character {
  RootSystemPtr rs;
  WeightMap table;

  Mult total_dimension() const {
    Mult t = 0;
    for (const auto& [w, m] : table) t += m;
    return t;
  }
};

/// dim V_lambda = prod_{alpha>0} <lambda+rho, alpha^vee> / <rho, alpha^vee>,
/// evaluated in exact integer arithmetic.
Mult weyl_dimension(const RootSystem& rs, const Weight& lambda);

/// Full weight table of the irreducible with highest weight lambda.
/// Product systems are assembled factorwise; the entry count is capped by
/// limits.max_weights.
Character freudenthal_character(const RootSystemPtr& rs, const Weight& lambda,
                                const Limits& limits = {});

namespace detail {

/// Multiplicities of the dominant weights of V_lambda (Freudenthal recursion,
/// processed by decreasing height).  Memoized per (root system, lambda).
std::shared_ptr<const WeightMap> dominant_multiplicities(const RootSystemPtr& rs,
                                                         const Weight& lambda,
                                                         const Limits& limits = {});

/// Dominant table expanded over Weyl orbits: the full support with
/// multiplicities, as a flat list.
std::vector<std::pair<Weight, Mult>> expand_character(const RootSystemPtr& rs,
                                                      const Weight& lambda,
                                                      const Limits& limits = {});

}  // namespace detail

}  // namespace branchlab
