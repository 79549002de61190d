#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "branchlab/branching.hpp"
#include "branchlab/cone.hpp"

namespace branchlab {

/// Enumerated multiplicity support of an embedding up to a coordinatewise
/// level bound on the source highest weight.  Points are (mu ++ lambda) in
/// Z^(target.rank + source.rank), lex-sorted.
struct SupportSample {
  std::string embedding_fingerprint;
  int level = 0;
  std::vector<std::vector<int>> points;
};

SupportSample enumerate_support(const Embedding& e, int level, const Limits& limits = {});

/// The stabilized sample cone generated by the multiplicity support, packaged
/// with the structural flags expected of a pseudo-effective cone model.
struct EffConeModel {
  std::string embedding_name;
  RationalCone cone;
  int max_level = 0;
  int stabilized_at = 0;
  bool stabilized = false;
  bool pointed = false;
  bool full_dimensional = false;
  std::string sigma_note;
};

EffConeModel branching_cone(const Embedding& e, int max_level, const Limits& limits = {});

nlohmann::ordered_json cone_to_json(const RationalCone& c);
nlohmann::ordered_json eff_cone_report(const EffConeModel& model);
std::string eff_cone_text(const EffConeModel& model, const Embedding* e = nullptr);

}  // namespace branchlab
