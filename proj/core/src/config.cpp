#include "wavelag/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wavelag/presets.hpp"

namespace wavelag {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::simulate: return "simulate";
    case RunMode::spectrum: return "spectrum";
    case RunMode::resolvent_sweep: return "resolvent-sweep";
    case RunMode::sweep: return "sweep";
    case RunMode::check_params: return "check-params";
  }
  return "?";
}

RunMode parse_mode(const std::string& s) {
  if (s == "simulate") return RunMode::simulate;
  if (s == "spectrum") return RunMode::spectrum;
  if (s == "resolvent-sweep") return RunMode::resolvent_sweep;
  if (s == "sweep") return RunMode::sweep;
  if (s == "check-params") return RunMode::check_params;
  throw ConfigError("unknown mode '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& v, int line) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(x)) {
    throw ConfigError("expected a finite number, got '" + v + "'", line);
  }
  return x;
}

long parse_int(const std::string& v, int line) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long x = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw ConfigError("expected an integer, got '" + v + "'", line);
  }
  return x;
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const auto comma = v.find(',', pos);
    const std::string tok =
        trim(v.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (tok.empty()) throw ConfigError("empty entry in list '" + v + "'", line);
    out.push_back(parse_double(tok, line));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("empty list", line);
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected a boolean, got '" + v + "'", line);
}

struct Entry {
  std::string value;
  int line = 0;
};

}  // namespace

Config parse_config(const std::string& text, bool unsafe) {
  std::map<std::string, Entry> kv;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  static const std::set<std::string> known_sections = {
      "params", "grid", "initial", "run", "sweep", "resolvent"};

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (!known_sections.count(section)) {
        throw ConfigError("unknown section '" + section + "'", lineno);
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (value.empty()) throw ConfigError("empty value for key '" + key + "'", lineno);
    if (section.empty()) throw ConfigError("key '" + key + "' outside any section", lineno);

    const std::string full = section + "." + key;
    if (kv.count(full)) throw ConfigError("duplicate key '" + full + "'", lineno);
    kv[full] = Entry{value, lineno};
  }

  Config c;
  std::set<std::string> consumed;
  auto take = [&](const std::string& full) -> const Entry* {
    const auto it = kv.find(full);
    if (it == kv.end()) return nullptr;
    consumed.insert(full);
    return &it->second;
  };
  auto require = [&](const std::string& full) -> const Entry& {
    const Entry* e = take(full);
    if (!e) throw ConfigError("missing required key '" + full + "'");
    return *e;
  };

  {
    const Entry& ea = require("params.alpha");
    c.alpha = parse_double(ea.value, ea.line);
    const Entry& eb = require("params.beta");
    c.beta = parse_double(eb.value, eb.line);
    const Entry& et = require("params.tau");
    c.tau = parse_double(et.value, et.line);
  }
  if (const Entry* e = take("params.xi")) c.xi = parse_double(e->value, e->line);
  if (const Entry* e = take("params.safety")) {
    c.safety = parse_double(e->value, e->line);
    if (!(c.safety > 0.0 && c.safety < 1.0)) throw ConfigError("safety must lie in (0,1)", e->line);
  }

  if (const Entry* e = take("grid.L")) c.L = parse_double(e->value, e->line);
  if (const Entry* e = take("grid.N")) c.N = static_cast<int>(parse_int(e->value, e->line));
  if (const Entry* e = take("grid.M_min")) c.M_min = static_cast<int>(parse_int(e->value, e->line));
  if (const Entry* e = take("grid.cfl")) {
    c.cfl = parse_double(e->value, e->line);
    if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("cfl must lie in (0,1]", e->line);
  }

  if (const Entry* e = take("initial.y0")) c.y0 = e->value;
  if (const Entry* e = take("initial.z0")) c.z0 = e->value;
  if (const Entry* e = take("initial.f")) c.f = e->value;

  if (const Entry* e = take("run.T_final")) c.T_final = parse_double(e->value, e->line);
  if (const Entry* e = take("run.record_every")) {
    c.record_every = static_cast<int>(parse_int(e->value, e->line));
    if (c.record_every < 1) throw ConfigError("record_every must be >= 1", e->line);
  }
  if (const Entry* e = take("run.out")) c.out = e->value;
  if (const Entry* e = take("run.seed")) c.seed = static_cast<std::uint64_t>(parse_int(e->value, e->line));
  if (const Entry* e = take("run.mode")) {
    try {
      c.mode = parse_mode(e->value);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), e->line);
    }
  }

  if (const Entry* e = take("sweep.alpha")) c.sweep.alphas = parse_double_list(e->value, e->line);
  if (const Entry* e = take("sweep.beta")) c.sweep.betas = parse_double_list(e->value, e->line);
  if (const Entry* e = take("sweep.tau")) c.sweep.taus = parse_double_list(e->value, e->line);
  if (const Entry* e = take("sweep.T_final")) c.sweep.T_final = parse_double(e->value, e->line);
  if (const Entry* e = take("sweep.spectral")) c.sweep.spectral = parse_bool(e->value, e->line);
  if (const Entry* e = take("sweep.spectral_N"))
    c.sweep.spectral_N = static_cast<int>(parse_int(e->value, e->line));
  if (const Entry* e = take("sweep.spectral_M"))
    c.sweep.spectral_M = static_cast<int>(parse_int(e->value, e->line));

  if (const Entry* e = take("resolvent.gamma_min")) c.resolvent.gamma_min = parse_double(e->value, e->line);
  if (const Entry* e = take("resolvent.gamma_max")) c.resolvent.gamma_max = parse_double(e->value, e->line);
  if (const Entry* e = take("resolvent.count")) {
    c.resolvent.count = static_cast<int>(parse_int(e->value, e->line));
    if (c.resolvent.count < 2) throw ConfigError("resolvent count must be >= 2", e->line);
  }
  if (const Entry* e = take("resolvent.h_metric_every"))
    c.resolvent.h_metric_every = static_cast<int>(parse_int(e->value, e->line));

  for (const auto& [full, entry] : kv) {
    if (!consumed.count(full)) throw ConfigError("unknown key '" + full + "'", entry.line);
  }

  // structural checks that do not depend on the unsafe flag
  if (c.N < 8) throw ConfigError("grid.N must be >= 8");
  if (c.M_min < 4) throw ConfigError("grid.M_min must be >= 4");
  if (!(c.L > 0.0)) throw ConfigError("grid.L must be > 0");
  if (!(c.T_final >= 0.0)) throw ConfigError("run.T_final must be >= 0");

  // presets must resolve either way
  make_space_preset(c.y0, c.L);
  make_space_preset(c.z0, c.L);
  make_history_preset(c.f);

  if (!unsafe) {
    const double xi = c.xi ? *c.xi : c.alpha * c.tau;
    const ValidationReport rep = validate(c.alpha, c.beta, c.tau, xi);
    if (!rep.accepted) {
      std::ostringstream os;
      os << "inadmissible parameters (use --unsafe to force):";
      for (const auto& v : rep.violations) os << " [" << v << "]";
      throw ConfigError(os.str());
    }
  }
  return c;
}

Config load_config(const std::string& path, bool unsafe) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), unsafe);
}

SystemParams Config::make_params(bool unsafe) const {
  return unsafe ? SystemParams::make_unsafe(alpha, beta, tau, L, xi, safety)
                : SystemParams::make(alpha, beta, tau, L, xi, safety);
}

Scenario Config::make_scenario(bool unsafe) const {
  Scenario s;
  s.params = make_params(unsafe);
  s.N = N;
  s.M_min = M_min;
  s.cfl = cfl;
  s.initial.y0 = make_space_preset(y0, L);
  s.initial.z0 = make_space_preset(z0, L);
  s.initial.f = make_history_preset(f);
  s.initial.y0_name = y0;
  s.initial.z0_name = z0;
  s.initial.f_name = f;
  s.T_final = T_final;
  s.record_every = record_every;
  return s;
}

std::vector<std::pair<std::string, std::string>> Config::resolved_metadata(bool unsafe) const {
  const Scenario s = make_scenario(unsafe);
  const Discretization d = resolve(s);
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> m;
  m.emplace_back("alpha", num(s.params.alpha));
  m.emplace_back("beta", num(s.params.beta));
  m.emplace_back("tau", num(s.params.tau));
  m.emplace_back("xi", num(s.params.xi));
  m.emplace_back("safety", num(safety));
  m.emplace_back("delta", num(s.params.delta));
  m.emplace_back("varpi", num(s.params.varpi));
  m.emplace_back("L", num(s.params.L));
  m.emplace_back("N", std::to_string(s.N));
  m.emplace_back("M", std::to_string(d.grid.M));
  m.emplace_back("M_min", std::to_string(s.M_min));
  m.emplace_back("cfl", num(s.cfl));
  m.emplace_back("dt", num(d.dt));
  m.emplace_back("steps", std::to_string(d.steps));
  m.emplace_back("y0", y0);
  m.emplace_back("z0", z0);
  m.emplace_back("f", f);
  m.emplace_back("T_final", num(T_final));
  m.emplace_back("record_every", std::to_string(record_every));
  m.emplace_back("seed", std::to_string(seed));
  return m;
}

}  // namespace wavelag
