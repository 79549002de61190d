#include "branchlab/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "branchlab/wire.hpp"

namespace branchlab {

namespace {

MultiplicityFn default_mult_fn(const Limits& limits) {
  return [limits](const Embedding& e, const Weight& mu, const Weight& lambda) {
    return branching_multiplicity(e, mu, lambda, limits);
  };
}

Weight scaled(const Weight& w, int k) {
  Weight out(w.size());
  for (size_t i = 0; i < w.size(); ++i) out[i] = w[i] * k;
  return out;
}

// Smallest q <= 6 whose residue classes have a stable positivity pattern on
// the sampled tail; falls back to q = 1 (flagged) if none qualifies.
std::pair<int, bool> detect_quasi_period(const std::vector<Mult>& values, int K) {
  for (int q = 1; q <= std::min(6, K); ++q) {
    bool ok = true;
    for (int r = 0; r < q && ok; ++r) {
      std::vector<char> pattern;
      std::vector<int> ks;
      for (int k = r; k <= K; k += q) ks.push_back(k);
      std::vector<char> tail;
      for (int k : ks)
        if (2 * k > K) tail.push_back(values[k] > 0);
      if (tail.size() < 2) {
        tail.clear();
        size_t take = std::min<size_t>(2, ks.size());
        for (size_t i = ks.size() - take; i < ks.size(); ++i) tail.push_back(values[ks[i]] > 0);
      }
      for (size_t i = 1; i < tail.size(); ++i)
        if (tail[i] != tail[0]) { ok = false; break; }
    }
    if (ok) return {q, true};
  }
  return {1, false};
}

std::vector<Mult> subsequence(const StretchSequence& s) {
  std::vector<Mult> sub;
  for (int k = 0; k <= s.K; k += s.quasi_period) sub.push_back(s.values[k]);
  return sub;
}

double to_double(const BigRat& q) {
  return static_cast<double>(numerator(q)) / static_cast<double>(denominator(q));
}

BigInt ipow(long long base, long long exp) {
  BigInt r = 1;
  for (long long i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

StretchSequence stretch_sequence(const Embedding& e, const Weight& mu, const Weight& lambda, int K,
                                 const MultiplicityFn& mult_fn, const Limits& limits) {
  e.target->check_rank(mu);
  e.source->check_rank(lambda);
  if (!is_dominant(mu) || !is_dominant(lambda))
    fail(Errc::non_dominant, "stretch sequence requires dominant mu and lambda");
  if (K < 8) fail(Errc::k_too_small, "stretch sequence requires K >= 8");

  MultiplicityFn fn = mult_fn ? mult_fn : default_mult_fn(limits);

  StretchSequence s;
  s.mu = mu;
  s.lambda = lambda;
  s.K = K;
  s.values.assign(K + 1, 0);

  std::atomic<int> cursor{0};
  std::atomic<bool> failed{false};
  std::mutex err_mtx;
  std::exception_ptr first_error;
  auto work = [&]() {
    while (!failed.load()) {
      int k = cursor.fetch_add(1);
      if (k > K) break;
      try {
        s.values[k] = fn(e, scaled(mu, k), scaled(lambda, k));
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mtx);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
      }
    }
  };
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 4);
  if (workers > 1) {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  } else {
    work();
  }
  if (first_error) std::rethrow_exception(first_error);

  auto [q, detected] = detect_quasi_period(s.values, K);
  s.quasi_period = q;
  s.quasi_period_detected = detected;
  s.degree = growth_degree(s);
  return s;
}

std::optional<int> growth_degree(const StretchSequence& s) {
  std::vector<Mult> seq = subsequence(s);
  for (int d = 0; d <= 4; ++d) {
    if (seq.size() < 2) return std::nullopt;
    if (seq[seq.size() - 1] == seq[seq.size() - 2]) return d;
    std::vector<Mult> next(seq.size() - 1);
    for (size_t i = 0; i + 1 < seq.size(); ++i) next[i] = seq[i + 1] - seq[i];
    seq = std::move(next);
  }
  return std::nullopt;
}

const RationalCone& interior_test_cone(const Embedding& e, const Limits& limits) {
  static std::mutex mtx;
  static std::unordered_map<std::string, std::unique_ptr<RationalCone>> memo;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = memo.find(e.fingerprint);
    if (it != memo.end()) return *it->second;
  }
  auto model = branching_cone(e, 4, limits);
  std::lock_guard<std::mutex> lock(mtx);
  auto [it, inserted] = memo.emplace(e.fingerprint, std::make_unique<RationalCone>(model.cone));
  return *it->second;
}

VolumeEstimate asymptotic_volume(const Embedding& e, const Weight& mu, const Weight& lambda, int K,
                                 const MultiplicityFn& mult_fn, const RationalCone* cone,
                                 const Limits& limits) {
  const RationalCone& gamma = cone ? *cone : interior_test_cone(e, limits);
  std::vector<long long> point;
  point.reserve(mu.size() + lambda.size());
  point.insert(point.end(), mu.begin(), mu.end());
  point.insert(point.end(), lambda.begin(), lambda.end());
  auto pred = gamma.predicates(point);
  if (!pred.interior)
    fail(Errc::not_interior,
         "(" + format_point(mu, lambda) + ") is not strictly inside the stabilized sample cone");

  auto dims = space_dims(e);
  StretchSequence s = stretch_sequence(e, mu, lambda, K, mult_fn, limits);

  VolumeEstimate v;
  v.mu = mu;
  v.lambda = lambda;
  v.n = dims.n;
  v.quasi_period = s.quasi_period;
  v.degree = s.degree;
  v.values = s.values;
  v.degree_warning = !s.degree.has_value() || *s.degree != dims.n;

  if (dims.n == 0) {
    // Vol_0 of a nonempty fiber is 1; the subsequence itself is the limit.
    int last = (s.K / s.quasi_period) * s.quasi_period;
    int prev = last - s.quasi_period;
    v.volume = static_cast<double>(s.values[last]);
    v.exact = true;
    if (prev >= 0) {
      double gap = std::abs(static_cast<double>(s.values[last] - s.values[prev]));
      v.confidence = v.volume != 0.0 ? gap / std::abs(v.volume) : gap;
    }
    return v;
  }

  // Fit m(k) = v k^n + c k^(n-1) through consecutive subsequence points:
  // v = (m(k2)/k2^(n-1) - m(k1)/k1^(n-1)) / (k2 - k1), exactly in rationals.
  std::vector<int> ks;
  for (int k = s.quasi_period; k <= s.K; k += s.quasi_period) ks.push_back(k);
  if (ks.size() < 2)
    fail(Errc::k_too_small, "K too small to fit a volume at quasi-period " +
                                std::to_string(s.quasi_period));
  auto fit = [&](int k1, int k2) {
    BigRat a(BigInt(s.values[k2]), ipow(k2, dims.n - 1));
    BigRat b(BigInt(s.values[k1]), ipow(k1, dims.n - 1));
    return BigRat((a - b) / BigRat(k2 - k1));
  };
  BigRat last_fit = fit(ks[ks.size() - 2], ks[ks.size() - 1]);
  v.volume = to_double(last_fit);
  if (ks.size() >= 3) {
    BigRat prev_fit = fit(ks[ks.size() - 3], ks[ks.size() - 2]);
    BigRat gap = last_fit - prev_fit;
    if (gap < 0) gap = -gap;
    double denom = std::max(std::abs(v.volume), 1e-300);
    v.confidence = to_double(gap) / denom;
  }
  return v;
}

LogConcavityReport logconcavity_report(const Embedding& e,
                                       const std::vector<std::vector<BigRat>>& points, int K,
                                       double tol, const MultiplicityFn& mult_fn,
                                       const Limits& limits) {
  if (points.size() < 2) fail(Errc::validation, "log-concavity check needs at least 2 points");
  if (!(tol > 0.0 && tol < 1.0)) fail(Errc::validation, "tolerance must lie in (0, 1)");
  size_t len = static_cast<size_t>(e.target->rank() + e.source->rank());
  for (const auto& p : points)
    if (p.size() != len)
      fail(Errc::dimension_mismatch, "interior point has wrong length (expected " +
                                         std::to_string(len) + " coordinates)");

  auto dims = space_dims(e);

  // Volume at a rational point via homogeneity: clear denominators and the
  // content, evaluate at the primitive lattice point, rescale by s^n.
  auto eval_volume = [&](const std::vector<BigRat>& xi) {
    BigInt denom = 1;
    for (const auto& q : xi) denom = boost::multiprecision::lcm(denom, BigInt(denominator(q)));
    IVec w;
    for (const auto& q : xi) w.push_back(BigInt(numerator(q)) * (denom / BigInt(denominator(q))));
    BigInt content = 0;
    for (const auto& x : w) content = boost::multiprecision::gcd(content, x);
    if (content == 0) fail(Errc::not_interior, "the zero point is not interior");
    Weight mu, lambda;
    for (int i = 0; i < e.target->rank(); ++i) mu.push_back(static_cast<int>(w[i] / content));
    for (size_t i = e.target->rank(); i < len; ++i) lambda.push_back(static_cast<int>(w[i] / content));
    auto est = asymptotic_volume(e, mu, lambda, K, mult_fn, nullptr, limits);
    // xi = (content/denom) * primitive point, so Vol(xi) = (content/denom)^n * Vol(primitive).
    double scale = std::pow(to_double(BigRat(content, denom)), static_cast<double>(dims.n));
    return est.volume * scale;
  };

  LogConcavityReport report;
  report.n = dims.n;
  report.K = K;
  report.tol = tol;
  report.points = points;
  report.volumes.reserve(points.size());
  for (const auto& p : points) report.volumes.push_back(eval_volume(p));

  report.all_pass = true;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      std::vector<BigRat> mid(len);
      for (size_t c = 0; c < len; ++c) mid[c] = (points[i][c] + points[j][c]) / 2;
      LogConcavityTriple t;
      t.i = i;
      t.j = j;
      t.vol_i = report.volumes[i];
      t.vol_j = report.volumes[j];
      t.vol_mid = eval_volume(mid);
      t.lhs = t.vol_mid * t.vol_mid;
      t.rhs = (1.0 - tol) * t.vol_i * t.vol_j;
      t.pass = t.lhs >= t.rhs;
      report.all_pass = report.all_pass && t.pass;
      report.triples.push_back(t);
    }
  }
  return report;
}

FiberReport fiber_report(const Embedding& e, const Weight& mu, const Weight& lambda, int K,
                         const MultiplicityFn& mult_fn, const Limits& limits) {
  auto est = asymptotic_volume(e, mu, lambda, K, mult_fn, nullptr, limits);
  FiberReport r;
  r.n = est.n;
  r.volume = est.volume;
  if (est.n == 0) {
    r.kind = "point";
    r.description = "point fiber (nonempty)";
    r.body_constructed = true;
  } else if (est.n == 1) {
    std::ostringstream os;
    os << "interval [0, " << est.volume << "], the unique 1-dimensional convex body of this volume, "
       << "up to translation";
    r.kind = "interval";
    r.description = os.str();
    r.body_constructed = true;
  } else {
    std::ostringstream os;
    os << est.n << "-dimensional fiber: volume estimate only, body not constructed";
    r.kind = "volume-only";
    r.description = os.str();
    r.body_constructed = false;
  }
  return r;
}

nlohmann::ordered_json stretch_to_json(const Embedding& e, const StretchSequence& s) {
  nlohmann::ordered_json j;
  j["point"] = format_point(s.mu, s.lambda);
  j["n"] = space_dims(e).n;
  j["q"] = s.quasi_period;
  if (!s.quasi_period_detected) j["q_detected"] = false;
  if (s.degree)
    j["degree"] = *s.degree;
  else
    j["degree"] = "inconclusive";
  j["values"] = s.values;
  return j;
}

nlohmann::ordered_json volume_to_json(const Embedding& e, const VolumeEstimate& v) {
  (void)e;
  nlohmann::ordered_json j;
  j["point"] = format_point(v.mu, v.lambda);
  j["n"] = v.n;
  j["q"] = v.quasi_period;
  if (v.degree)
    j["degree"] = *v.degree;
  else
    j["degree"] = "inconclusive";
  j["values"] = v.values;
  j["volume"] = v.volume;
  if (v.confidence)
    j["confidence"] = *v.confidence;
  else
    j["confidence"] = nullptr;
  if (v.degree_warning) j["warning"] = "growth degree disagrees with the quotient dimension";
  return j;
}

nlohmann::ordered_json logcc_to_json(const Embedding& e, const LogConcavityReport& r) {
  (void)e;
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["K"] = r.K;
  j["tol"] = r.tol;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : r.points) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) os << ",";
      os << p[i];
    }
    pts.push_back(os.str());
  }
  j["points"] = std::move(pts);
  j["volumes"] = r.volumes;
  auto triples = nlohmann::ordered_json::array();
  for (const auto& t : r.triples) {
    nlohmann::ordered_json tj;
    tj["i"] = t.i;
    tj["j"] = t.j;
    tj["vol_i"] = t.vol_i;
    tj["vol_j"] = t.vol_j;
    tj["vol_mid"] = t.vol_mid;
    tj["lhs"] = t.lhs;
    tj["rhs"] = t.rhs;
    tj["pass"] = t.pass;
    triples.push_back(std::move(tj));
  }
  j["triples"] = std::move(triples);
  j["all_pass"] = r.all_pass;
  return j;
}

}  // namespace branchlab
