#include "branchlab/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace branchlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::usage: return "usage";
    case Errc::parse: return "parse";
    case Errc::unsupported_type: return "unsupported-type";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::non_dominant: return "non-dominant";
    case Errc::validation: return "validation";
    case Errc::resource_limit: return "resource-limit";
    case Errc::inconsistent_embedding: return "inconsistent-embedding";
    case Errc::not_interior: return "not-interior";
    case Errc::k_too_small: return "k-too-small";
    case Errc::io: return "io";
  }
  return "unknown";
}

std::string supported_types_message() {
  return "supported types: A<n> (n>=1), B<n> (n>=2), C<n> (n>=3), D<n> (n>=4), G2, "
         "and products joined with 'x' (e.g. A1xA1)";
}

namespace {

std::vector<SimpleFactor> parse_type_spec(const std::string& spec) {
  if (spec.empty()) fail(Errc::parse, "empty type spec");
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : spec) {
    if (ch == 'x') {
      tokens.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  tokens.push_back(cur);

  std::vector<SimpleFactor> factors;
  for (const auto& tok : tokens) {
    if (tok.size() < 2 || !std::isupper(static_cast<unsigned char>(tok[0])))
      fail(Errc::parse, "malformed type spec '" + spec + "': expected SIMPLE(\"x\"SIMPLE)*");
    char series = tok[0];
    for (size_t i = 1; i < tok.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i])))
        fail(Errc::parse, "malformed simple type '" + tok + "'");
    long rank = std::strtol(tok.c_str() + 1, nullptr, 10);
    auto unsupported = [&] {
      fail(Errc::unsupported_type, "unsupported simple type '" + tok + "'; " + supported_types_message());
    };
    switch (series) {
      case 'A': if (rank < 1) unsupported(); break;
      case 'B': if (rank < 2) unsupported(); break;
      case 'C': if (rank < 3) unsupported(); break;
      case 'D': if (rank < 4) unsupported(); break;
      case 'G': if (rank != 2) unsupported(); break;
      default: unsupported();
    }
    if (rank > 32) fail(Errc::resource_limit, "rank of '" + tok + "' exceeds the supported bound 32");
    factors.push_back({series, static_cast<int>(rank)});
  }
  return factors;
}

std::string canonical_name(const std::vector<SimpleFactor>& factors) {
  std::string out;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) out.push_back('x');
    out += factors[i].series + std::to_string(factors[i].rank);
  }
  return out;
}

// cartan[i][j] = <alpha_j, alpha_i^vee> for one simple factor.
std::vector<std::vector<int>> factor_cartan(const SimpleFactor& f) {
  int n = f.rank;
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j) { c[i][j] = -1; c[j][i] = -1; };
  switch (f.series) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':  // last simple root short
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 1][n - 2] = -2;
      break;
    case 'C':  // last simple root long
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      c[n - 2][n - 1] = -2;
      break;
    case 'D':
      for (int i = 0; i + 1 < n - 1; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'G':
      c[0][1] = -1;
      c[1][0] = -3;
      break;
  }
  return c;
}

std::vector<int> factor_symmetrizers(const SimpleFactor& f) {
  int n = f.rank;
  std::vector<int> d(n, 1);
  switch (f.series) {
    case 'B': for (int i = 0; i < n - 1; ++i) d[i] = 2; break;
    case 'C': d[n - 1] = 2; break;
    case 'G': d[0] = 3; break;
    default: break;
  }
  return d;
}

long long int_det(std::vector<std::vector<long long>> m) {
  // Bareiss fraction-free elimination; matrices here are tiny.
  int n = static_cast<int>(m.size());
  long long prev = 1, sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) { swap_row = r; break; }
      if (swap_row < 0) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Adjugate via cofactors: adj(C) = det(C) * C^{-1}, entries exact integers.
std::vector<std::vector<long long>> int_adjugate(const std::vector<std::vector<int>>& c) {
  int n = static_cast<int>(c.size());
  std::vector<std::vector<long long>> adj(n, std::vector<long long>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<long long>> minor;
      minor.reserve(n - 1);
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;  // adj[i][j] = (-1)^{i+j} det(minor with row j, col i removed)
        std::vector<long long> row;
        row.reserve(n - 1);
        for (int s = 0; s < n; ++s) {
          if (s == i) continue;
          row.push_back(c[r][s]);
        }
        minor.push_back(std::move(row));
      }
      long long det = int_det(std::move(minor));
      adj[i][j] = ((i + j) % 2 == 0) ? det : -det;
    }
  }
  return adj;
}

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(static_cast<unsigned>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Positive roots of one simple factor by breadth-first reflection closure.
std::vector<PositiveRoot> factor_positive_roots(const std::vector<std::vector<int>>& c) {
  int n = static_cast<int>(c.size());
  std::vector<PositiveRoot> roots;
  std::unordered_set<std::vector<int>, VecHash> seen;
  std::queue<PositiveRoot> work;
  for (int j = 0; j < n; ++j) {
    PositiveRoot r;
    r.fund.resize(n);
    for (int i = 0; i < n; ++i) r.fund[i] = c[i][j];
    r.simple.assign(n, 0);
    r.simple[j] = 1;
    r.coroot.assign(n, 0);
    r.coroot[j] = 1;
    seen.insert(r.simple);
    roots.push_back(r);
    work.push(r);
  }
  while (!work.empty()) {
    PositiveRoot r = work.front();
    work.pop();
    for (int i = 0; i < n; ++i) {
      int t = r.fund[i];
      if (t == 0) continue;
      PositiveRoot s = r;
      for (int k = 0; k < n; ++k) s.fund[k] -= t * c[k][i];
      s.simple[i] -= t;
      long long pair = 0;  // <alpha_i, beta^vee>
      for (int j = 0; j < n; ++j) pair += static_cast<long long>(r.coroot[j]) * c[j][i];
      s.coroot[i] -= static_cast<int>(pair);
      bool positive = true, nonzero = false;
      for (int k = 0; k < n; ++k) {
        if (s.simple[k] < 0) positive = false;
        if (s.simple[k] != 0) nonzero = true;
      }
      if (positive && nonzero && seen.insert(s.simple).second) {
        roots.push_back(s);
        work.push(s);
      }
    }
  }
  return roots;
}

}  // namespace

bool is_dominant(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int c) { return c >= 0; });
}

void RootSystem::check_rank(const Weight& w) const {
  if (static_cast<int>(w.size()) != rank_)
    fail(Errc::dimension_mismatch,
         "weight has length " + std::to_string(w.size()) + ", expected rank " + std::to_string(rank_) +
             " of " + name_);
}

std::optional<std::vector<long long>> RootSystem::root_coords(const Weight& w) const {
  check_rank(w);
  std::vector<long long> out(rank_);
  for (size_t f = 0; f < factors_.size(); ++f) {
    int off = factor_offsets_[f];
    int n = factors_[f].rank;
    long long det = factor_det_[f];
    for (int j = 0; j < n; ++j) {
      long long acc = 0;
      for (int i = 0; i < n; ++i) acc += factor_adj_[f][j][i] * w[off + i];
      if (acc % det != 0) return std::nullopt;
      out[off + j] = acc / det;
    }
  }
  return out;
}

RootSystemPtr build_root_system(const std::string& type_spec) {
  static std::mutex mtx;
  static std::map<std::string, RootSystemPtr> registry;

  auto factors = parse_type_spec(type_spec);
  std::string name = canonical_name(factors);
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find(name);
    if (it != registry.end()) return it->second;
  }

  auto rs = std::make_shared<RootSystem>();
  rs->name_ = name;
  rs->factors_ = factors;
  rs->rank_ = 0;
  for (const auto& f : factors) {
    rs->factor_offsets_.push_back(rs->rank_);
    rs->rank_ += f.rank;
  }
  rs->cartan_.assign(rs->rank_, std::vector<int>(rs->rank_, 0));
  rs->d_.assign(rs->rank_, 1);
  rs->hvec_.assign(rs->rank_, 0);

  for (size_t f = 0; f < factors.size(); ++f) {
    int off = rs->factor_offsets_[f];
    int n = factors[f].rank;
    auto c = factor_cartan(factors[f]);
    auto d = factor_symmetrizers(factors[f]);
    for (int i = 0; i < n; ++i) {
      rs->d_[off + i] = d[i];
      for (int j = 0; j < n; ++j) rs->cartan_[off + i][off + j] = c[i][j];
    }

    std::vector<std::vector<long long>> cl(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cl[i][j] = c[i][j];
    auto adj = int_adjugate(c);
    long long det = int_det(cl);
    rs->factor_adj_.push_back(adj);
    rs->factor_det_.push_back(det);
    for (int j = 0; j < n; ++j) {
      long long s = 0;
      for (int i = 0; i < n; ++i) s += adj[i][j];
      rs->hvec_[off + j] = s;
    }

    for (auto& r : factor_positive_roots(c)) {
      PositiveRoot lifted;
      lifted.fund.assign(rs->rank_, 0);
      lifted.simple.assign(rs->rank_, 0);
      lifted.coroot.assign(rs->rank_, 0);
      for (int i = 0; i < n; ++i) {
        lifted.fund[off + i] = r.fund[i];
        lifted.simple[off + i] = r.simple[i];
        lifted.coroot[off + i] = r.coroot[i];
      }
      rs->positive_roots_.push_back(std::move(lifted));
    }
  }

  std::sort(rs->positive_roots_.begin(), rs->positive_roots_.end(),
            [](const PositiveRoot& a, const PositiveRoot& b) { return a.fund < b.fund; });

  RootSystemPtr out = rs;
  {
    std::lock_guard<std::mutex> lock(mtx);
    registry.emplace(name, out);
  }
  return out;
}

void apply_simple_reflection(const RootSystem& rs, Weight& w, int i) {
  int t = w[i];
  if (t == 0) return;
  const auto& cartan = rs.cartan();
  for (int k = 0; k < rs.rank(); ++k) w[k] -= t * cartan[k][i];
}

DominantResult to_dominant(const RootSystem& rs, const Weight& w) {
  rs.check_rank(w);
  Weight cur = w;
  int sign = 1;
  long long guard = 2 * rs.num_positive_roots() + 2;
  while (true) {
    int neg = -1;
    for (int i = 0; i < rs.rank(); ++i)
      if (cur[i] < 0) { neg = i; break; }
    if (neg < 0) break;
    apply_simple_reflection(rs, cur, neg);
    sign = -sign;
    if (--guard < 0) fail(Errc::validation, "reflection normalization did not terminate");
  }
  return {cur, sign};
}

DominantResult to_dominant_regular(const RootSystem& rs, const Weight& w) {
  DominantResult r = to_dominant(rs, w);
  for (int c : r.weight)
    if (c == 0) return {r.weight, 0};
  return r;
}

std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& w) {
  rs.check_rank(w);
  std::vector<Weight> orbit;
  std::set<Weight> seen;
  std::queue<Weight> work;
  seen.insert(w);
  work.push(w);
  while (!work.empty()) {
    Weight v = work.front();
    work.pop();
    orbit.push_back(v);
    for (int i = 0; i < rs.rank(); ++i) {
      if (v[i] == 0) continue;
      Weight u = v;
      apply_simple_reflection(rs, u, i);
      if (seen.insert(u).second) work.push(u);
    }
  }
  return orbit;
}

long long height_paired(const RootSystem& rs, const Weight& w) {
  long long acc = 0;
  for (int i = 0; i < rs.rank(); ++i) acc += rs.height_form()[i] * w[i];
  return acc;
}

}  // namespace branchlab
