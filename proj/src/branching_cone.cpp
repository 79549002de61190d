#include "branchlab/branching_cone.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace branchlab {

namespace {

std::vector<Weight> dominant_grid(int rank, int level) {
  std::vector<Weight> grid;
  Weight w(rank, 0);
  std::function<void(int)> walk = [&](int pos) {
    if (pos == rank) {
      grid.push_back(w);
      return;
    }
    for (int c = 0; c <= level; ++c) {
      w[pos] = c;
      walk(pos + 1);
    }
  };
  walk(0);
  return grid;
}

long long to_ll(const BigInt& x) {
  if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
    fail(Errc::resource_limit, "cone coordinate overflows 64 bits in JSON serialization");
  return static_cast<long long>(x);
}

}  // namespace

SupportSample enumerate_support(const Embedding& e, int level, const Limits& limits) {
  if (level < 1) fail(Errc::validation, "support enumeration level must be >= 1");
  int sr = e.source->rank();
  double grid_size = std::pow(static_cast<double>(level + 1), sr);
  if (grid_size > static_cast<double>(limits.max_grid))
    fail(Errc::resource_limit, "highest-weight grid exceeds the cap of " + std::to_string(limits.max_grid));

  auto grid = dominant_grid(sr, level);
  std::vector<std::vector<std::vector<int>>> per_lambda(grid.size());

  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
  if (workers < 1) workers = 1;
  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= grid.size()) break;
      auto decomposition = branch(e, grid[i], limits);
      auto& sink = per_lambda[i];
      for (const auto& [mu, m] : decomposition.table) {
        std::vector<int> point;
        point.reserve(e.target->rank() + sr);
        point.insert(point.end(), mu.begin(), mu.end());
        point.insert(point.end(), grid[i].begin(), grid[i].end());
        sink.push_back(std::move(point));
      }
    }
  };
  if (workers > 1 && grid.size() > 8) {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  } else {
    work();
  }

  SupportSample sample;
  sample.embedding_fingerprint = e.fingerprint;
  sample.level = level;
  for (auto& chunk : per_lambda)
    for (auto& p : chunk) sample.points.push_back(std::move(p));
  std::sort(sample.points.begin(), sample.points.end());
  return sample;
}

EffConeModel branching_cone(const Embedding& e, int max_level, const Limits& limits) {
  if (max_level < 2) fail(Errc::validation, "branching cone requires max_level >= 2");
  int dim = e.target->rank() + e.source->rank();

  std::vector<RationalCone> cones;
  cones.reserve(max_level);
  for (int level = 1; level <= max_level; ++level) {
    auto sample = enumerate_support(e, level, limits);
    std::vector<std::vector<long long>> gens;
    gens.reserve(sample.points.size());
    for (const auto& p : sample.points) gens.emplace_back(p.begin(), p.end());
    cones.push_back(RationalCone::from_generators(dim, gens));
  }

  // First level from which the sampled cone never changes again, with at
  // least two further levels of confirmation.
  int stable_from = max_level;
  for (int level = max_level - 1; level >= 1; --level) {
    if (same_cone(cones[level - 1], cones[level]))
      stable_from = level;
    else
      break;
  }

  EffConeModel model;
  model.embedding_name = e.name;
  model.cone = cones.back();
  model.max_level = max_level;
  model.stabilized = (max_level - stable_from) >= 2;
  model.stabilized_at = model.stabilized ? stable_from : max_level;
  model.pointed = model.cone.pointed();
  model.full_dimensional = model.cone.dim() == dim;
  std::ostringstream note;
  note << "coordinates are (mu_1..mu_" << e.target->rank() << "; lambda_1..lambda_" << e.source->rank()
       << "): weight pairs of the subgroup/ambient pair, identified ray-by-ray with divisor classes "
          "on the universal quotient up to positive rescaling of the basis rays";
  model.sigma_note = note.str();
  return model;
}

nlohmann::ordered_json cone_to_json(const RationalCone& c) {
  nlohmann::ordered_json j;
  j["dim"] = c.ambient_dim();
  auto rays = nlohmann::ordered_json::array();
  for (const auto& g : c.generators()) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& x : g) row.push_back(to_ll(x));
    rays.push_back(std::move(row));
  }
  j["rays"] = std::move(rays);
  auto normals = nlohmann::ordered_json::array();
  for (const auto& h : c.halfspaces()) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& x : h) row.push_back(to_ll(x));
    normals.push_back(std::move(row));
  }
  j["normals"] = std::move(normals);
  return j;
}

nlohmann::ordered_json eff_cone_report(const EffConeModel& model) {
  nlohmann::ordered_json j;
  j["embedding"] = model.embedding_name;
  j["level"] = model.max_level;
  j["stabilized"] = model.stabilized;
  j["stabilized_at"] = model.stabilized_at;
  j["pointed"] = model.pointed;
  j["full_dimensional"] = model.full_dimensional;
  j["cone_dim"] = model.cone.dim();
  j["facets"] = model.cone.halfspaces().size();
  j["cone"] = cone_to_json(model.cone);
  j["sigma"] = model.sigma_note;
  return j;
}

std::string eff_cone_text(const EffConeModel& model, const Embedding* e) {
  std::ostringstream os;
  os << "embedding:        " << model.embedding_name << "\n";
  os << "sample level:     " << model.max_level << "\n";
  os << "stabilized:       " << (model.stabilized ? "yes" : "no (increase the level)")
     << " (from level " << model.stabilized_at << ")\n";
  os << "pointed:          " << (model.pointed ? "yes" : "NO - contains a line") << "\n";
  os << "full dimensional: " << (model.full_dimensional ? "yes" : "no") << " (dim "
     << model.cone.dim() << " of " << model.cone.ambient_dim() << ")\n";
  os << "inequalities:\n";
  int tr = e ? e->target->rank() : -1;
  for (const auto& h : model.cone.halfspaces()) {
    bool first = true;
    os << "  ";
    for (size_t i = 0; i < h.size(); ++i) {
      if (h[i] == 0) continue;
      std::string var = tr < 0 ? "x" + std::to_string(i + 1)
                               : (static_cast<int>(i) < tr ? "mu" + std::to_string(i + 1)
                                                           : "la" + std::to_string(i + 1 - tr));
      BigInt coeff = h[i];
      if (first) {
        if (coeff < 0) os << "-";
        first = false;
      } else {
        os << (coeff < 0 ? " - " : " + ");
      }
      BigInt mag = coeff < 0 ? BigInt(-coeff) : coeff;
      if (mag != 1) os << mag << "*";
      os << var;
    }
    if (first) os << "0";
    os << " >= 0\n";
  }
  os << "note: " << model.sigma_note << "\n";
  return os.str();
}

}  // namespace branchlab
