#include "wavelag/presets.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace wavelag {

namespace {

struct ParsedPreset {
  std::string name;
  std::vector<double> args;
};

ParsedPreset parse_preset(const std::string& spec) {
  ParsedPreset p;
  const auto open = spec.find('(');
  if (open == std::string::npos) {
    p.name = spec;
    return p;
  }
  if (spec.back() != ')') throw std::invalid_argument("preset '" + spec + "': missing ')'");
  p.name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, spec.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= args.size() && !args.empty()) {
    const auto comma = args.find(',', pos);
    const std::string tok = args.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) {
      throw std::invalid_argument("preset '" + spec + "': bad numeric argument '" + tok + "'");
    }
    p.args.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return p;
}

void expect_args(const ParsedPreset& p, std::size_t n, const std::string& spec) {
  if (p.args.size() != n) {
    throw std::invalid_argument("preset '" + spec + "': expected " + std::to_string(n) +
                                " argument(s)");
  }
}

}  // namespace

SpaceFn make_space_preset(const std::string& spec, double L) {
  const ParsedPreset p = parse_preset(spec);
  if (p.name == "zero") {
    expect_args(p, 0, spec);
    return [](double) { return 0.0; };
  }
  if (p.name == "constant") {
    expect_args(p, 1, spec);
    const double c = p.args[0];
    return [c](double) { return c; };
  }
  if (p.name == "gaussian") {
    expect_args(p, 3, spec);
    const double c = p.args[0], w = p.args[1], a = p.args[2];
    if (!(w > 0.0)) throw std::invalid_argument("preset '" + spec + "': width must be > 0");
    return [c, w, a](double x) { return a * std::exp(-(x - c) * (x - c) / (2.0 * w * w)); };
  }
  if (p.name == "sine") {
    expect_args(p, 1, spec);
    const double k = p.args[0];
    return [k, L](double x) { return std::sin(k * std::numbers::pi * x / L); };
  }
  throw std::invalid_argument("unknown space preset '" + p.name + "'");
}

HistoryFn make_history_preset(const std::string& spec) {
  const ParsedPreset p = parse_preset(spec);
  if (p.name == "zero") {
    expect_args(p, 0, spec);
    return [](double) { return 0.0; };
  }
  if (p.name == "constant") {
    expect_args(p, 1, spec);
    const double c = p.args[0];
    return [c](double) { return c; };
  }
  if (p.name == "ramp") {
    expect_args(p, 1, spec);
    const double slope = p.args[0];
    return [slope](double s) { return slope * s; };
  }
  throw std::invalid_argument("unknown history preset '" + p.name + "'");
}

}  // namespace wavelag
