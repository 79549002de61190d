#include "branchlab/cache.hpp"

#include <json.hpp>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "branchlab/wire.hpp"

namespace branchlab {

namespace fs = std::filesystem;
using nlohmann::json;

MultiplicityCache::MultiplicityCache(std::string dir, std::string fingerprint)
    : dir_(std::move(dir)) {
  path_ = (fs::path(dir_) / ("mult-" + fingerprint + ".jsonl")).string();
  load_file(path_, entries_);
}

std::string MultiplicityCache::default_dir() {
  if (const char* env = std::getenv("BRANCHLAB_CACHE"); env && *env) return env;
  return ".branchlab-cache";
}

void MultiplicityCache::load_file(const std::string& path,
                                  std::map<std::pair<Weight, Weight>, Mult>& into) const {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto j = json::parse(line);
      std::string mu_s = j.at("mu").get<std::string>();
      std::string la_s = j.at("lambda").get<std::string>();
      Mult m = j.at("m").get<Mult>();
      auto split = [](const std::string& s) {
        Weight w;
        std::string tok;
        for (char c : s) {
          if (c == ',' || c == ';') {
            w.push_back(std::stoi(tok));
            tok.clear();
          } else {
            tok.push_back(c);
          }
        }
        if (!tok.empty()) w.push_back(std::stoi(tok));
        return w;
      };
      into[{split(mu_s), split(la_s)}] = m;
    } catch (...) {
      // Unreadable lines are ignored; the cache is a memo, not a store of record.
    }
  }
}

std::optional<Mult> MultiplicityCache::lookup(const Weight& mu, const Weight& lambda) const {
  auto it = entries_.find({mu, lambda});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MultiplicityCache::store(const Weight& mu, const Weight& lambda, Mult m) {
  auto [it, inserted] = entries_.emplace(std::make_pair(mu, lambda), m);
  if (inserted) dirty_ = true;
}

void MultiplicityCache::flush() {
  if (!dirty_) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);

  // Merge entries written by concurrent processes since we loaded.
  std::map<std::pair<Weight, Weight>, Mult> merged;
  load_file(path_, merged);
  for (const auto& [k, v] : entries_) merged.emplace(k, v);

  std::string tmp = path_ + ".tmp." + std::to_string(static_cast<long long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(Errc::io, "cannot write cache file '" + tmp + "'");
    for (const auto& [k, v] : merged) {
      json j;
      j["lambda"] = format_weight(k.second);
      j["m"] = v;
      j["mu"] = format_weight(k.first);
      out << j.dump() << "\n";
    }
  }
  fs::rename(tmp, path_, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(Errc::io, "cannot rename cache file into place: " + ec.message());
  }
  entries_ = std::move(merged);
  dirty_ = false;
}

}  // namespace branchlab
