#pragma once

#include <string>
#include <utility>
#include <vector>

#include "branchlab/cone.hpp"
#include "branchlab/root_system.hpp"

namespace branchlab {

/// Weight wire format: comma-separated integer coordinates; product-factor
/// blocks may be joined with ';' ("1,1;1,1").  Both separators are accepted
/// interchangeably on input and flattened against the expected rank.
Weight parse_weight(const std::string& text, int rank);

/// Point wire format: target block then source block ("c;a,b").  Internally
/// just a flattened list of target.rank + source.rank coordinates.
std::pair<Weight, Weight> parse_point(const std::string& text, int target_rank, int source_rank);

/// Rational variant for interior-point files; coordinates may be "p/q".
std::vector<BigRat> parse_rational_point(const std::string& text, int length);

std::string format_weight(const Weight& w);
std::string format_point(const Weight& mu, const Weight& lambda);

}  // namespace branchlab
