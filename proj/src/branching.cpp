#include "branchlab/branching.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "dense_table.hpp"

namespace branchlab {

namespace {

using nlohmann::json;

constexpr long long kDenseCellCap = 30'000'000;

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string embedding_fingerprint(const RootSystem& target, const RootSystem& source,
                                  const std::vector<std::vector<int>>& matrix) {
  json body;  // std::map-backed: keys serialize sorted, so the hash is field-order stable
  body["matrix"] = matrix;
  body["source"] = source.name();
  body["target"] = target.name();
  return fnv1a_hex(body.dump());
}

void require_dominant_for(const RootSystem& rs, const Weight& w, const char* role) {
  rs.check_rank(w);
  if (!is_dominant(w)) fail(Errc::non_dominant, std::string(role) + " weight is not dominant for " + rs.name());
}

// Factor characters of a source irreducible together with their restricted
// contributions to the target, ready for Cartesian accumulation.
struct FactorPart {
  std::vector<std::pair<Weight, Mult>> entries;  // (restricted target vector, multiplicity)
};

detail::WeightTable restricted_table(const Embedding& e, const Weight& lambda, const Limits& limits) {
  require_dominant_for(*e.source, lambda, "source");
  const auto& factors = e.source->factors();
  int tr = e.target->rank();

  std::vector<FactorPart> parts(factors.size());
  for (size_t f = 0; f < factors.size(); ++f) {
    auto sub = build_root_system(factors[f].series + std::to_string(factors[f].rank));
    int off = e.source->factor_offsets()[f];
    int n = factors[f].rank;
    Weight block(lambda.begin() + off, lambda.begin() + off + n);
    auto chars = detail::expand_character(sub, block, limits);
    parts[f].entries.reserve(chars.size());
    for (const auto& [w, m] : chars) {
      Weight u(tr, 0);
      for (int i = 0; i < tr; ++i) {
        long long acc = 0;
        for (int j = 0; j < n; ++j) acc += static_cast<long long>(e.restriction[i][off + j]) * w[j];
        u[i] = static_cast<int>(acc);
      }
      parts[f].entries.emplace_back(std::move(u), m);
    }
  }

  std::vector<int> lo(tr, 0), hi(tr, 0);
  for (const auto& part : parts) {
    std::vector<int> plo(tr, std::numeric_limits<int>::max()), phi(tr, std::numeric_limits<int>::min());
    for (const auto& [u, m] : part.entries)
      for (int i = 0; i < tr; ++i) {
        plo[i] = std::min(plo[i], u[i]);
        phi[i] = std::max(phi[i], u[i]);
      }
    for (int i = 0; i < tr; ++i) {
      lo[i] += plo[i];
      hi[i] += phi[i];
    }
  }

  detail::WeightTable table;
  detail::Box box(lo, hi);
  if (static_cast<long long>(box.cells) <= kDenseCellCap) {
    table.is_dense = true;
    table.box = std::move(box);
    table.dense.assign(table.box.cells, 0);
  }

  Weight scratch(tr, 0);
  std::function<void(size_t, Mult)> emit = [&](size_t f, Mult m) {
    if (f == parts.size()) {
      table.add(scratch, m);
      return;
    }
    for (const auto& [u, mw] : parts[f].entries) {
      for (int i = 0; i < tr; ++i) scratch[i] += u[i];
      emit(f + 1, m * mw);
      for (int i = 0; i < tr; ++i) scratch[i] -= u[i];
    }
  };
  emit(0, 1);
  return table;
}

// Dominant candidates of a table domain, sorted so that every weight of the
// character of V_mu other than mu itself comes strictly later than mu.
std::vector<Weight> dominant_candidates(const RootSystem& rs, const detail::WeightTable& table) {
  std::vector<Weight> cands;
  if (table.is_dense) {
    const auto& box = table.box;
    Weight w(box.lo.size());
    std::function<void(size_t)> walk = [&](size_t i) {
      if (i == box.lo.size()) {
        cands.push_back(w);
        return;
      }
      for (int c = std::max(box.lo[i], 0); c <= box.hi[i]; ++c) {
        w[i] = c;
        walk(i + 1);
      }
    };
    bool feasible = true;
    for (size_t i = 0; i < box.lo.size(); ++i)
      if (box.hi[i] < 0) feasible = false;
    if (feasible) walk(0);
  } else {
    for (const auto& [w, m] : table.sparse)
      if (is_dominant(w)) cands.push_back(w);
  }
  std::sort(cands.begin(), cands.end(), [&](const Weight& a, const Weight& b) {
    long long ha = height_paired(rs, a), hb = height_paired(rs, b);
    if (ha != hb) return ha > hb;
    return a > b;
  });
  return cands;
}

DominantDecomposition brauer_decompose(const RootSystemPtr& rs, detail::WeightTable table,
                                       const Limits& limits) {
  DominantDecomposition out;
  auto candidates = dominant_candidates(*rs, table);
  for (const auto& mu : candidates) {
    Mult c = table.at(mu);
    if (c == 0) continue;
    if (c < 0)
      fail(Errc::inconsistent_embedding,
           "restricted character is not Weyl-stable: negative coefficient while decomposing");
    auto dom = detail::dominant_multiplicities(rs, mu, limits);
    for (const auto& [delta, m] : *dom)
      for (const auto& w : weyl_orbit(*rs, delta))
        if (!table.sub_checked(w, c * m))
          fail(Errc::inconsistent_embedding,
               "restricted character is not Weyl-stable: support escapes its bounding box");
    out.table.emplace(mu, c);
    out.total_dimension += c * weyl_dimension(*rs, mu);
  }

  bool clean = true;
  if (table.is_dense) {
    for (Mult v : table.dense)
      if (v != 0) { clean = false; break; }
  } else {
    for (const auto& [w, v] : table.sparse)
      if (v != 0) { clean = false; break; }
  }
  if (!clean)
    fail(Errc::inconsistent_embedding,
         "restricted character is not Weyl-stable: nonzero remainder after subtraction");
  return out;
}

struct BranchKey {
  std::string fingerprint;
  Weight lambda;
  bool operator==(const BranchKey& o) const {
    return fingerprint == o.fingerprint && lambda == o.lambda;
  }
};

struct BranchKeyHash {
  size_t operator()(const BranchKey& k) const {
    size_t h = std::hash<std::string>{}(k.fingerprint);
    for (int x : k.lambda) h = h * 1099511628211ull + static_cast<unsigned>(x);
    return h;
  }
};

void validate_embedding(const Embedding& e) {
  // Dimension conservation over all source-dominant weights with coordinate
  // sum <= 3 is the cheapest gate that rejects matrices which are not
  // restrictions of an actual subalgebra embedding.
  int n = e.source->rank();
  Weight lambda(n, 0);
  std::function<void(int, int)> sweep = [&](int pos, int budget) {
    if (pos == n) {
      Mult lhs = branch(e, lambda).total_dimension;
      Mult rhs = weyl_dimension(*e.source, lambda);
      if (lhs != rhs) {
        std::ostringstream os;
        os << "embedding validation failed: restricted dimension " << lhs << " != " << rhs
           << " for a source highest weight with coordinate sum <= 3";
        fail(Errc::validation, os.str());
      }
      return;
    }
    for (int c = 0; c <= budget; ++c) {
      lambda[pos] = c;
      sweep(pos + 1, budget - c);
    }
    lambda[pos] = 0;
  };
  try {
    sweep(0, 3);
  } catch (const Error& err) {
    if (err.code() == Errc::inconsistent_embedding)
      fail(Errc::validation, std::string("embedding validation failed: ") + err.what());
    throw;
  }
}

}  // namespace

Embedding make_embedding(RootSystemPtr target, RootSystemPtr source,
                         std::vector<std::vector<int>> restriction, std::string name,
                         bool validate) {
  if (static_cast<int>(restriction.size()) != target->rank())
    fail(Errc::dimension_mismatch, "restriction matrix must have target.rank = " +
                                       std::to_string(target->rank()) + " rows");
  for (const auto& row : restriction)
    if (static_cast<int>(row.size()) != source->rank())
      fail(Errc::dimension_mismatch, "restriction matrix must have source.rank = " +
                                         std::to_string(source->rank()) + " columns");
  Embedding e;
  e.fingerprint = embedding_fingerprint(*target, *source, restriction);
  e.source = std::move(source);
  e.target = std::move(target);
  e.restriction = std::move(restriction);
  e.name = std::move(name);
  if (validate) validate_embedding(e);
  return e;
}

Embedding parse_embedding_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    std::string tag = spec.substr(0, colon);
    std::string type = spec.substr(colon + 1);
    if (tag == "diag") {
      auto target = build_root_system(type);
      auto source = build_root_system(type + "x" + type);
      int r = target->rank();
      std::vector<std::vector<int>> m(r, std::vector<int>(2 * r, 0));
      for (int i = 0; i < r; ++i) m[i][i] = m[i][r + i] = 1;
      return make_embedding(target, source, std::move(m), spec, true);
    }
    if (tag == "id") {
      auto rs = build_root_system(type);
      int r = rs->rank();
      std::vector<std::vector<int>> m(r, std::vector<int>(r, 0));
      for (int i = 0; i < r; ++i) m[i][i] = 1;
      return make_embedding(rs, rs, std::move(m), spec, true);
    }
    if (tag == "principal-a1") {
      auto source = build_root_system(type);
      if (source->factors().size() != 1 || source->factors()[0].series != 'A')
        fail(Errc::unsupported_type, "principal-a1 embeddings are provided for A-series sources only");
      auto target = build_root_system("A1");
      // The defining coweight of the principal sl2 pairs a weight with the
      // sum of all positive coroots.
      std::vector<std::vector<int>> m(1, std::vector<int>(source->rank(), 0));
      for (const auto& root : source->positive_roots())
        for (int j = 0; j < source->rank(); ++j) m[0][j] += root.coroot[j];
      return make_embedding(target, source, std::move(m), spec, true);
    }
    fail(Errc::parse, "unknown embedding tag '" + tag + "' (expected diag:, id:, principal-a1:, or a file path)");
  }

  std::ifstream in(spec);
  if (!in) fail(Errc::io, "cannot open embedding spec file '" + spec + "'");
  json body;
  try {
    in >> body;
  } catch (const json::exception& ex) {
    fail(Errc::parse, "invalid embedding spec JSON in '" + spec + "': " + ex.what());
  }
  if (!body.contains("source") || !body.contains("target") || !body.contains("matrix"))
    fail(Errc::parse, "embedding spec must contain source, target, and matrix");
  auto source = build_root_system(body["source"].get<std::string>());
  auto target = build_root_system(body["target"].get<std::string>());
  std::vector<std::vector<int>> matrix;
  try {
    matrix = body["matrix"].get<std::vector<std::vector<int>>>();
  } catch (const json::exception& ex) {
    fail(Errc::parse, std::string("embedding matrix must be an integer matrix: ") + ex.what());
  }
  std::string name = body.value("name", std::string("custom"));
  return make_embedding(target, source, std::move(matrix), name, true);
}

Weight restrict_weight(const Embedding& e, const Weight& w) {
  e.source->check_rank(w);
  Weight out(e.target->rank(), 0);
  for (int i = 0; i < e.target->rank(); ++i) {
    long long acc = 0;
    for (int j = 0; j < e.source->rank(); ++j)
      acc += static_cast<long long>(e.restriction[i][j]) * w[j];
    out[i] = static_cast<int>(acc);
  }
  return out;
}

SpaceDims space_dims(const Embedding& e) {
  SpaceDims d{};
  d.dim_X = e.target->num_positive_roots() + e.source->num_positive_roots();
  d.dim_G = e.target->dim_group();
  d.floored = d.dim_G > d.dim_X;
  d.n = d.floored ? 0 : d.dim_X - d.dim_G;
  return d;
}

DominantDecomposition branch(const Embedding& e, const Weight& lambda, const Limits& limits) {
  static std::mutex mtx;
  static std::unordered_map<BranchKey, std::shared_ptr<const DominantDecomposition>, BranchKeyHash>
      memo;
  static long long memo_entries = 0;
  constexpr long long kMemoBudget = 2'000'000;

  BranchKey key{e.fingerprint, lambda};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(key);
    if (it != memo.end()) return *it->second;
  }

  auto table = restricted_table(e, lambda, limits);
  auto result = std::make_shared<DominantDecomposition>(brauer_decompose(e.target, std::move(table), limits));

  {
    std::lock_guard<std::mutex> lock(mtx);
    if (memo_entries + static_cast<long long>(result->table.size()) <= kMemoBudget) {
      auto [it, inserted] = memo.emplace(key, result);
      if (inserted) memo_entries += static_cast<long long>(result->table.size());
    }
  }
  return *result;
}

DominantDecomposition klimyk_branch(const Embedding& e, const Weight& lambda, const Limits& limits) {
  auto table = restricted_table(e, lambda, limits);
  const auto& rs = *e.target;
  int r = rs.rank();

  std::map<Weight, Mult> acc;
  auto feed = [&](const Weight& nu, Mult c) {
    if (c == 0) return;
    Weight shifted(r);
    for (int i = 0; i < r; ++i) shifted[i] = nu[i] + 1;
    auto dom = to_dominant_regular(rs, shifted);
    if (dom.sign == 0) return;
    for (int i = 0; i < r; ++i) dom.weight[i] -= 1;
    acc[dom.weight] += dom.sign * c;
  };

  if (table.is_dense) {
    for (size_t idx = 0; idx < table.dense.size(); ++idx)
      if (table.dense[idx] != 0) feed(table.box.decode(idx), table.dense[idx]);
  } else {
    for (const auto& [w, c] : table.sparse) feed(w, c);
  }

  DominantDecomposition out;
  for (const auto& [mu, m] : acc) {
    if (m == 0) continue;
    if (m < 0)
      fail(Errc::inconsistent_embedding,
           "restricted character is not Weyl-stable: negative signed multiplicity");
    out.table.emplace(mu, m);
    out.total_dimension += m * weyl_dimension(rs, mu);
  }
  return out;
}

Mult branching_multiplicity(const Embedding& e, const Weight& mu, const Weight& lambda,
                            const Limits& limits) {
  require_dominant_for(*e.target, mu, "target");
  return branch(e, lambda, limits).at(mu);
}

}  // namespace branchlab
