#include "branchlab/wire.hpp"

#include <cctype>
#include <sstream>

namespace branchlab {

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ';') {
      tokens.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  tokens.push_back(cur);
  return tokens;
}

int parse_int(const std::string& tok, const std::string& context) {
  if (tok.empty()) fail(Errc::parse, "empty coordinate in " + context);
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (...) {
    fail(Errc::parse, "invalid integer '" + tok + "' in " + context);
  }
  if (pos != tok.size()) fail(Errc::parse, "invalid integer '" + tok + "' in " + context);
  return static_cast<int>(v);
}

}  // namespace

Weight parse_weight(const std::string& text, int rank) {
  auto tokens = tokenize(text);
  if (static_cast<int>(tokens.size()) != rank)
    fail(Errc::parse, "weight '" + text + "' has " + std::to_string(tokens.size()) +
                          " coordinates, expected " + std::to_string(rank));
  Weight w;
  w.reserve(rank);
  for (const auto& tok : tokens) w.push_back(parse_int(tok, "weight '" + text + "'"));
  return w;
}

std::pair<Weight, Weight> parse_point(const std::string& text, int target_rank, int source_rank) {
  auto tokens = tokenize(text);
  if (static_cast<int>(tokens.size()) != target_rank + source_rank)
    fail(Errc::parse, "point '" + text + "' has " + std::to_string(tokens.size()) +
                          " coordinates, expected " + std::to_string(target_rank + source_rank));
  Weight mu, lambda;
  for (int i = 0; i < target_rank; ++i) mu.push_back(parse_int(tokens[i], "point '" + text + "'"));
  for (int i = target_rank; i < target_rank + source_rank; ++i)
    lambda.push_back(parse_int(tokens[i], "point '" + text + "'"));
  return {std::move(mu), std::move(lambda)};
}

std::vector<BigRat> parse_rational_point(const std::string& text, int length) {
  auto tokens = tokenize(text);
  if (static_cast<int>(tokens.size()) != length)
    fail(Errc::parse, "point '" + text + "' has " + std::to_string(tokens.size()) +
                          " coordinates, expected " + std::to_string(length));
  std::vector<BigRat> out;
  out.reserve(length);
  for (const auto& tok : tokens) {
    auto slash = tok.find('/');
    if (slash == std::string::npos) {
      out.emplace_back(parse_int(tok, "point '" + text + "'"));
    } else {
      int num = parse_int(tok.substr(0, slash), "point '" + text + "'");
      int den = parse_int(tok.substr(slash + 1), "point '" + text + "'");
      if (den == 0) fail(Errc::parse, "zero denominator in '" + tok + "'");
      out.emplace_back(BigRat(num, den));
    }
  }
  return out;
}

std::string format_weight(const Weight& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << w[i];
  }
  return os.str();
}

std::string format_point(const Weight& mu, const Weight& lambda) {
  return format_weight(mu) + ";" + format_weight(lambda);
}

}  // namespace branchlab
