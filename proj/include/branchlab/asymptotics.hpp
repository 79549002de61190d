#pragma once

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "branchlab/branching.hpp"
#include "branchlab/branching_cone.hpp"

namespace branchlab {

using MultiplicityFn = std::function<Mult(const Embedding&, const Weight&, const Weight&)>;

/// The stretched multiplicity function k -> m(k mu, k lambda) sampled on
/// 0..K, with its detected quasi-period and fitted growth degree.
struct StretchSequence {
  Weight mu, lambda;
  int K = 0;
  std::vector<Mult> values;      // values[k] = m(k mu, k lambda)
  int quasi_period = 1;          // smallest q <= 6 with stable positivity per residue class
  bool quasi_period_detected = true;
  std::optional<int> degree;     // nullopt = inconclusive (not settled by order 4)
};

StretchSequence stretch_sequence(const Embedding& e, const Weight& mu, const Weight& lambda, int K,
                                 const MultiplicityFn& mult_fn = {}, const Limits& limits = {});

/// Exact finite differences on the quasi-period subsequence; the degree is
/// the first differencing order whose tail is constant.
std::optional<int> growth_degree(const StretchSequence& s);

struct VolumeEstimate {
  Weight mu, lambda;
  long long n = 0;               // quotient dimension driving the k^n normalization
  int quasi_period = 1;
  std::optional<int> degree;
  std::vector<Mult> values;
  double volume = 0.0;           // limit of m(k)/k^n along the quasi-period subsequence
  std::optional<double> confidence;  // relative gap of the last two extrapolation steps
  bool exact = false;            // true in the n = 0 case (integer limit)
  bool degree_warning = false;   // growth degree disagreed with n
};

/// Extrapolates the fiber volume at a point strictly inside the stabilized
/// sample cone; the interiority hypothesis is enforced.
VolumeEstimate asymptotic_volume(const Embedding& e, const Weight& mu, const Weight& lambda, int K,
                                 const MultiplicityFn& mult_fn = {},
                                 const RationalCone* cone = nullptr, const Limits& limits = {});

/// Cached stabilized cone used for interiority checks (level 4 sample).
const RationalCone& interior_test_cone(const Embedding& e, const Limits& limits = {});

struct LogConcavityTriple {
  size_t i = 0, j = 0;
  double vol_i = 0.0, vol_j = 0.0, vol_mid = 0.0;
  double lhs = 0.0, rhs = 0.0;  // vol_mid^2 vs (1-tol) * vol_i * vol_j
  bool pass = false;
};

struct LogConcavityReport {
  long long n = 0;
  int K = 0;
  double tol = 0.0;
  std::vector<std::vector<BigRat>> points;
  std::vector<double> volumes;
  std::vector<LogConcavityTriple> triples;
  bool all_pass = false;
};

/// Midpoint log-concavity check of the fiber volume over every pair of the
/// given interior rational points, using homogeneity to stay on the lattice.
LogConcavityReport logconcavity_report(const Embedding& e,
                                       const std::vector<std::vector<BigRat>>& points, int K,
                                       double tol, const MultiplicityFn& mult_fn = {},
                                       const Limits& limits = {});

struct FiberReport {
  long long n = 0;
  double volume = 0.0;
  std::string kind;         // "point", "interval", "volume-only"
  std::string description;
  bool body_constructed = false;
};

/// What is known about the fiber over (mu, lambda): a point for n = 0, the
/// interval [0, Vol1] up to translation for n = 1, volume only for n >= 2.
FiberReport fiber_report(const Embedding& e, const Weight& mu, const Weight& lambda, int K,
                         const MultiplicityFn& mult_fn = {}, const Limits& limits = {});

nlohmann::ordered_json stretch_to_json(const Embedding& e, const StretchSequence& s);
nlohmann::ordered_json volume_to_json(const Embedding& e, const VolumeEstimate& v);
nlohmann::ordered_json logcc_to_json(const Embedding& e, const LogConcavityReport& r);

}  // namespace branchlab
