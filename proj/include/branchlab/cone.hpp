#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "branchlab/errors.hpp"

namespace branchlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using IVec = std::vector<BigInt>;

/// Rational polyhedral cone with exact generator (V) and halfspace (H)
/// representations.  All stored vectors are primitive integer vectors in
/// deterministic lexicographic order; for pointed cones the generators are
/// exactly the extreme rays.  Zero and non-pointed cones are ordinary
/// values, never errors.
class RationalCone {
public:
  RationalCone() = default;

  static RationalCone from_generators(int ambient_dim, const std::vector<std::vector<BigRat>>& vecs);
  static RationalCone from_generators(int ambient_dim, const std::vector<std::vector<long long>>& vecs);

  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  bool pointed() const { return pointed_; }

  /// Canonical V-representation; extreme rays when pointed, rays plus a
  /// +/- lineality basis otherwise.
  const std::vector<IVec>& generators() const { return generators_; }

  /// Irredundant H-representation: cone = { x : <h, x> >= 0 for all h }.
  /// Implicit equalities appear as opposite pairs.
  const std::vector<IVec>& halfspaces() const { return halfspaces_; }

  struct Predicates {
    bool contains;
    bool interior;
  };
  Predicates predicates(const std::vector<BigRat>& x) const;
  Predicates predicates(const std::vector<long long>& x) const;

private:
  int ambient_ = 0;
  int dim_ = 0;
  bool pointed_ = true;
  std::vector<IVec> generators_;
  std::vector<IVec> halfspaces_;
};

/// Spec-level alias: the supporting halfspaces via double description.
inline const std::vector<IVec>& dual_halfspaces(const RationalCone& c) { return c.halfspaces(); }

/// Exact set equality, decided by mutual inclusion of generators in
/// halfspaces.
bool same_cone(const RationalCone& a, const RationalCone& b);

/// Divides out the content and drops nothing else; the zero vector stays zero.
void make_primitive(IVec& v);

}  // namespace branchlab
