#pragma once

#include <map>
#include <string>
#include <vector>

#include "branchlab/character.hpp"
#include "branchlab/root_system.hpp"

namespace branchlab {

/// A pair of root systems joined by an integer restriction matrix on
/// fundamental-weight coordinates: mu = restriction * lambda' for weights
/// lambda' of the source (the ambient group) restricted to the target (the
/// subgroup).  Construction validates dimension conservation on a small
/// grid of source highest weights and rejects matrices that fail it.
struct Embedding {
  RootSystemPtr source;  // ambient group
  RootSystemPtr target;  // subgroup
  std::vector<std::vector<int>> restriction;  // target.rank x source.rank
  std::string name;
  std::string fingerprint;  // stable hash of the canonicalized JSON body
};

Embedding make_embedding(RootSystemPtr target, RootSystemPtr source,
                         std::vector<std::vector<int>> restriction,
                         std::string name = "custom", bool validate = true);

/// Builtin tags "diag:<TYPE>", "principal-a1:<A-TYPE>", "id:<TYPE>", or a
/// path to a JSON file {"source":..., "target":..., "matrix":[[...]]}.
Embedding parse_embedding_spec(const std::string& spec);

/// Restriction of a source weight along the embedding.
Weight restrict_weight(const Embedding& e, const Weight& w);

struct SpaceDims {
  long long dim_X;  // dim G/B x G'/B' = positive roots of target + source
  long long dim_G;  // dim of the acting subgroup
  long long n;      // dim_X - dim_G, floored at 0
  bool floored;     // true when dim_G exceeded dim_X
};

SpaceDims space_dims(const Embedding& e);

/// Decomposition of a restricted irreducible into target irreducibles.
struct DominantDecomposition {
  std::map<Weight, Mult> table;  // dominant highest weights, lex-sorted
  Mult total_dimension = 0;

  Mult at(const Weight& mu) const {
    auto it = table.find(mu);
    return it == table.end() ? 0 : it->second;
  }
};

/// Restrict V_lambda along the embedding and decompose by the Brauer
/// subtraction loop: repeatedly take the height-maximal dominant entry with
/// positive coefficient and subtract its full Freudenthal character.
DominantDecomposition branch(const Embedding& e, const Weight& lambda, const Limits& limits = {});

/// Independent route: signed projection of the restricted weight table under
/// the rho-shifted Weyl action.  Must agree with branch() exactly.
DominantDecomposition klimyk_branch(const Embedding& e, const Weight& lambda,
                                    const Limits& limits = {});

/// Multiplicity of the target irreducible W_mu inside V_lambda restricted
/// along e; zero when mu does not occur.  Memoized per (embedding, lambda).
Mult branching_multiplicity(const Embedding& e, const Weight& mu, const Weight& lambda,
                            const Limits& limits = {});

}  // namespace branchlab
