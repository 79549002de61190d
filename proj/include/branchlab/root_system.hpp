#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "branchlab/errors.hpp"

namespace branchlab {

/// Integer weight in fundamental-weight coordinates of a fixed root system.
/// All weights everywhere in this library use this basis: dominance is a
/// sign check and simple reflections are integer-exact.
using Weight = std::vector<int>;
using Mult = long long;

struct SimpleFactor {
  char series;  // 'A', 'B', 'C', 'D', 'G'
  int rank;
};

/// A positive root carried in three coordinate systems at once.
struct PositiveRoot {
  Weight fund;               // fundamental-weight coordinates
  std::vector<int> simple;   // coefficients over the simple roots
  std::vector<int> coroot;   // coefficients of the coroot over the simple coroots
};

/// Cartan data for a product of simple types A/B/C/D/G2.
///
/// Convention: cartan()[i][j] = <alpha_j, alpha_i^vee>, so the simple root
/// alpha_j in fundamental-weight coordinates is column j of the Cartan
/// matrix (equivalently row j of its transpose).  Immutable after build.
class RootSystem {
public:
  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  const std::vector<SimpleFactor>& factors() const { return factors_; }
  const std::vector<int>& factor_offsets() const { return factor_offsets_; }
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::vector<PositiveRoot>& positive_roots() const { return positive_roots_; }

  /// Symmetrizers d_i with (alpha_i, alpha_i) = 2 d_i; d_i C_ij is symmetric.
  const std::vector<int>& symmetrizers() const { return d_; }

  /// Strictly positive integer functional, strictly decreasing along every
  /// simple-root subtraction; a linear extension of the dominance order.
  const std::vector<long long>& height_form() const { return hvec_; }

  Weight rho() const { return Weight(rank_, 1); }
  long long num_positive_roots() const { return static_cast<long long>(positive_roots_.size()); }
  long long dim_group() const { return rank_ + 2 * num_positive_roots(); }

  /// Coefficients over the simple roots, or nullopt if w is not in the
  /// root lattice.  Exact (adjugate/determinant per factor).
  std::optional<std::vector<long long>> root_coords(const Weight& w) const;

  void check_rank(const Weight& w) const;

private:
  friend std::shared_ptr<const RootSystem> build_root_system(const std::string&);

  std::string name_;
  std::vector<SimpleFactor> factors_;
  std::vector<int> factor_offsets_;
  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> d_;
  std::vector<long long> hvec_;
  std::vector<PositiveRoot> positive_roots_;
  std::vector<std::vector<std::vector<long long>>> factor_adj_;  // adjugate of each factor block
  std::vector<long long> factor_det_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Parses "A2", "A1xA1", "B2xG2", ... and returns the (memoized) root system.
/// Grammar: TYPE := SIMPLE ("x" SIMPLE)*, SIMPLE := ("A"|"B"|"C"|"D") DIGITS | "G2".
RootSystemPtr build_root_system(const std::string& type_spec);

bool is_dominant(const Weight& w);

/// In-place simple reflection s_i in fundamental-weight coordinates.
void apply_simple_reflection(const RootSystem& rs, Weight& w, int i);

struct DominantResult {
  Weight weight;
  int sign;  // (-1)^(number of reflections applied); 0 only from the regular variant
};

/// Unique dominant representative of the Weyl orbit of w, with the parity of
/// the reflection count (well defined: each applied reflection removes exactly
/// one positive root from the inversion set).
DominantResult to_dominant(const RootSystem& rs, const Weight& w);

/// Variant used by the shifted-action decomposition: sign 0 when the orbit
/// representative lies on a chamber wall (some coordinate vanishes).
DominantResult to_dominant_regular(const RootSystem& rs, const Weight& w);

/// Full Weyl orbit of a weight (input need not be dominant).
std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& w);

long long height_paired(const RootSystem& rs, const Weight& w);

std::string supported_types_message();

}  // namespace branchlab
