#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "branchlab/root_system.hpp"

namespace branchlab {

/// Persistent multiplicity memo, one JSON object per line, keyed by the
/// embedding fingerprint (one file per embedding).  Re-computation always
/// equals the cached value; the cache never changes observable output.
class MultiplicityCache {
public:
  /// dir: cache directory; created on first flush.  fingerprint: embedding id.
  MultiplicityCache(std::string dir, std::string fingerprint);

  std::optional<Mult> lookup(const Weight& mu, const Weight& lambda) const;
  void store(const Weight& mu, const Weight& lambda, Mult m);

  /// Merge-and-rename: reloads the file, merges fresh entries, writes a
  /// temporary file and renames it into place.  A killed process leaves the
  /// previous file intact.
  void flush();

  size_t size() const { return entries_.size(); }
  const std::string& path() const { return path_; }

  /// Cache directory resolution: BRANCHLAB_CACHE env var, else
  /// ".branchlab-cache" under the working directory.
  static std::string default_dir();

private:
  void load_file(const std::string& path, std::map<std::pair<Weight, Weight>, Mult>& into) const;

  std::string dir_;
  std::string path_;
  std::map<std::pair<Weight, Weight>, Mult> entries_;
  bool dirty_ = false;
};

}  // namespace branchlab
