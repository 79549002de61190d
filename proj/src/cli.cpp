#include "branchlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <memory>
#include <mutex>
#include <ostream>

#include "branchlab/asymptotics.hpp"
#include "branchlab/branching.hpp"
#include "branchlab/branching_cone.hpp"
#include "branchlab/cache.hpp"
#include "branchlab/wire.hpp"

namespace branchlab {

namespace {

using nlohmann::ordered_json;

// Multiplicity evaluator backed by the persistent cache; pure memo, so the
// output is byte-identical with the cache disabled.
MultiplicityFn cached_mult_fn(std::shared_ptr<MultiplicityCache> cache) {
  auto mtx = std::make_shared<std::mutex>();
  return [cache, mtx](const Embedding& e, const Weight& mu, const Weight& lambda) -> Mult {
    if (cache) {
      std::lock_guard<std::mutex> lock(*mtx);
      if (auto hit = cache->lookup(mu, lambda)) return *hit;
    }
    Mult m = branching_multiplicity(e, mu, lambda);
    if (cache) {
      std::lock_guard<std::mutex> lock(*mtx);
      cache->store(mu, lambda, m);
    }
    return m;
  };
}

std::shared_ptr<MultiplicityCache> open_cache(bool no_cache, const Embedding& e) {
  if (no_cache) return nullptr;
  return std::make_shared<MultiplicityCache>(MultiplicityCache::default_dir(), e.fingerprint);
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump() << "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"branchlab - exact branching multiplicities, branching cones, and their asymptotics"};
  app.require_subcommand(1);
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "disable the persistent multiplicity cache");

  struct {
    std::string espec, mu, lambda, points_file;
    int level = 4;
    int K = 12;
    double tol = 0.05;
    bool as_json = false;
  } opt;

  auto add_embedding = [&](CLI::App* cmd) {
    cmd->add_option("-e,--embedding", opt.espec,
                    "embedding spec: diag:<TYPE>, principal-a1:<A-TYPE>, id:<TYPE>, or a JSON file")
        ->required();
  };

  auto* dims_cmd = app.add_subcommand("dims", "flag-variety and quotient dimensions");
  add_embedding(dims_cmd);

  auto* branch_cmd = app.add_subcommand("branch", "decompose a restricted irreducible");
  add_embedding(branch_cmd);
  branch_cmd->add_option("--lambda", opt.lambda, "source highest weight")->required();
  branch_cmd->add_flag("--json", opt.as_json, "emit JSON");

  auto* mult_cmd = app.add_subcommand("mult", "single branching multiplicity");
  add_embedding(mult_cmd);
  mult_cmd->add_option("--mu", opt.mu, "target highest weight")->required();
  mult_cmd->add_option("--lambda", opt.lambda, "source highest weight")->required();

  auto* cone_cmd = app.add_subcommand("cone", "stabilized branching cone sample");
  add_embedding(cone_cmd);
  cone_cmd->add_option("--level", opt.level, "coordinatewise level bound for the support sample")
      ->required();
  cone_cmd->add_flag("--json", opt.as_json, "emit JSON");

  auto* stretch_cmd = app.add_subcommand("stretch", "stretched multiplicity sequence k -> m(k mu, k lambda)");
  add_embedding(stretch_cmd);
  stretch_cmd->add_option("--mu", opt.mu, "target highest weight")->required();
  stretch_cmd->add_option("--lambda", opt.lambda, "source highest weight")->required();
  stretch_cmd->add_option("-K", opt.K, "number of stretch steps (>= 8)")->required();

  auto* volume_cmd = app.add_subcommand("volume", "asymptotic fiber volume at an interior point");
  add_embedding(volume_cmd);
  volume_cmd->add_option("--mu", opt.mu, "target highest weight")->required();
  volume_cmd->add_option("--lambda", opt.lambda, "source highest weight")->required();
  volume_cmd->add_option("-K", opt.K, "number of stretch steps (>= 8)")->required();

  auto* logcc_cmd = app.add_subcommand("logcc", "midpoint log-concavity of fiber volumes");
  add_embedding(logcc_cmd);
  logcc_cmd->add_option("--points", opt.points_file, "file of interior points, one 'mu;lambda' per line")
      ->required();
  logcc_cmd->add_option("-K", opt.K, "number of stretch steps (>= 8)")->required();
  logcc_cmd->add_option("--tol", opt.tol, "relative tolerance in (0,1)")->required();

  for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("branchlab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& ex) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    ordered_json diag{{"code", "usage"}, {"message", ex.what()}};
    err << diag.dump() << "\n";
    return 1;
  }

  try {
    Embedding e = parse_embedding_spec(opt.espec);
    int tr = e.target->rank();
    int sr = e.source->rank();

    if (dims_cmd->parsed()) {
      auto d = space_dims(e);
      ordered_json j;
      j["dim_X"] = d.dim_X;
      j["dim_G"] = d.dim_G;
      j["n"] = d.n;
      if (d.floored) j["warning"] = "dim_G exceeds dim_X; n floored at 0";
      emit(out, j);
    } else if (branch_cmd->parsed()) {
      auto dec = branch(e, parse_weight(opt.lambda, sr));
      if (opt.as_json) {
        ordered_json j = ordered_json::object();
        for (const auto& [mu, m] : dec.table) j[format_weight(mu)] = m;
        emit(out, j);
      } else {
        for (const auto& [mu, m] : dec.table) out << format_weight(mu) << ": " << m << "\n";
        out << "total dimension: " << dec.total_dimension << "\n";
      }
    } else if (mult_cmd->parsed()) {
      auto cache = open_cache(no_cache, e);
      Mult m = cached_mult_fn(cache)(e, parse_weight(opt.mu, tr), parse_weight(opt.lambda, sr));
      if (cache) cache->flush();
      out << m << "\n";
    } else if (cone_cmd->parsed()) {
      auto model = branching_cone(e, opt.level);
      if (opt.as_json)
        emit(out, eff_cone_report(model));
      else
        out << eff_cone_text(model, &e);
    } else if (stretch_cmd->parsed()) {
      auto cache = open_cache(no_cache, e);
      auto seq = stretch_sequence(e, parse_weight(opt.mu, tr), parse_weight(opt.lambda, sr), opt.K,
                                  cached_mult_fn(cache));
      if (cache) cache->flush();
      emit(out, stretch_to_json(e, seq));
    } else if (volume_cmd->parsed()) {
      auto cache = open_cache(no_cache, e);
      auto vol = asymptotic_volume(e, parse_weight(opt.mu, tr), parse_weight(opt.lambda, sr), opt.K,
                                   cached_mult_fn(cache));
      if (cache) cache->flush();
      emit(out, volume_to_json(e, vol));
    } else if (logcc_cmd->parsed()) {
      std::ifstream in(opt.points_file);
      if (!in) fail(Errc::io, "cannot open points file '" + opt.points_file + "'");
      std::vector<std::vector<BigRat>> points;
      std::string line;
      while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char c : line)
          if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        points.push_back(parse_rational_point(line, tr + sr));
      }
      auto cache = open_cache(no_cache, e);
      auto report = logconcavity_report(e, points, opt.K, opt.tol, cached_mult_fn(cache));
      if (cache) cache->flush();
      emit(out, logcc_to_json(e, report));
    }
    return 0;
  } catch (const Error& ex) {
    ordered_json diag{{"code", errc_name(ex.code())}, {"message", ex.what()}};
    err << diag.dump() << "\n";
    return (ex.code() == Errc::usage || ex.code() == Errc::parse) ? 1 : 2;
  } catch (const std::exception& ex) {
    ordered_json diag{{"code", "internal"}, {"message", ex.what()}};
    err << diag.dump() << "\n";
    return 2;
  }
}

}  // namespace branchlab
