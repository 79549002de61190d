#pragma once

#include <stdexcept>
#include <string>

namespace branchlab {

/// Machine-readable error categories; each maps to a stable wire code
/// emitted by the CLI as a one-line JSON diagnostic.
enum class Errc {
  usage,
  parse,
  unsupported_type,
  dimension_mismatch,
  non_dominant,
  validation,
  resource_limit,
  inconsistent_embedding,
  not_interior,
  k_too_small,
  io,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

/// Resource caps threaded through enumeration-heavy operations.
struct Limits {
  long long max_weights = 5'000'000;  // materialized weight-table entries
  long long max_grid = 10'000;        // highest-weight grid points per enumeration
};

}  // namespace branchlab
