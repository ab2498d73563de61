#include "limitfrac/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "limitfrac/error.hpp"

namespace limitfrac {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("not a number");
  return x;
}

long long to_int(const std::string& s) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("not an integer");
  return x;
}

bool to_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("not a boolean");
}

Driver to_driver(const std::string& s) {
  if (s == "I" || s == "1") return Driver::I;
  if (s == "II" || s == "2") return Driver::II;
  if (s == "III" || s == "3") return Driver::III;
  throw std::invalid_argument("driver must be I, II or III");
}

struct RawModel {
  double alpha, beta, kappa, eps, lambda_c;
};

using Setter = std::function<void(Config&, RawModel&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"alpha", [](Config&, RawModel& m, const std::string& s) { m.alpha = to_double(s); }},
      {"beta", [](Config&, RawModel& m, const std::string& s) { m.beta = to_double(s); }},
      {"kappa", [](Config&, RawModel& m, const std::string& s) { m.kappa = to_double(s); }},
      {"eps", [](Config&, RawModel& m, const std::string& s) { m.eps = to_double(s); }},
      {"lambda_c", [](Config&, RawModel& m, const std::string& s) { m.lambda_c = to_double(s); }},
      {"c", [](Config& c, RawModel&, const std::string& s) { c.load.c = to_double(s); }},
      {"dt", [](Config& c, RawModel&, const std::string& s) { c.load.dt = to_double(s); }},
      {"n_steps", [](Config& c, RawModel&, const std::string& s) { c.load.n_steps = static_cast<int>(to_int(s)); }},
      {"mesh_n", [](Config& c, RawModel&, const std::string& s) { c.mesh_n = static_cast<int>(to_int(s)); }},
      {"slit_x", [](Config& c, RawModel&, const std::string& s) { c.slit_x = to_double(s); }},
      {"slit_depth", [](Config& c, RawModel&, const std::string& s) { c.slit_depth = to_double(s); }},
      {"theta", [](Config& c, RawModel&, const std::string& s) { c.adapt.theta = to_double(s); }},
      {"xi_rf", [](Config& c, RawModel&, const std::string& s) { c.adapt.xi_rf = to_double(s); }},
      {"max_refine_rounds", [](Config& c, RawModel&, const std::string& s) { c.adapt.max_refine_rounds = static_cast<int>(to_int(s)); }},
      {"schedule_ratio", [](Config& c, RawModel&, const std::string& s) { c.adapt.schedule_ratio = to_double(s); }},
      {"xi_cr", [](Config& c, RawModel&, const std::string& s) { c.xi_cr = to_double(s); }},
      {"xi_v", [](Config& c, RawModel&, const std::string& s) { c.solver.xi_v = to_double(s); }},
      {"xi_vn", [](Config& c, RawModel&, const std::string& s) { c.solver.xi_vn = to_double(s); }},
      {"picard_tol", [](Config& c, RawModel&, const std::string& s) { c.solver.picard_tol = to_double(s); }},
      {"picard_max", [](Config& c, RawModel&, const std::string& s) { c.solver.picard_max = static_cast<int>(to_int(s)); }},
      {"linear_tol", [](Config& c, RawModel&, const std::string& s) { c.solver.linear_tol = to_double(s); }},
      {"linear_max", [](Config& c, RawModel&, const std::string& s) { c.solver.linear_max = static_cast<int>(to_int(s)); }},
      {"altmin_max", [](Config& c, RawModel&, const std::string& s) { c.solver.altmin_max = static_cast<int>(to_int(s)); }},
      {"accept_altmin_cap", [](Config& c, RawModel&, const std::string& s) { c.solver.accept_altmin_cap = to_bool(s); }},
      {"driver", [](Config& c, RawModel&, const std::string& s) { c.driver = to_driver(s); }},
      {"output_dir", [](Config& c, RawModel&, const std::string& s) { c.output_dir = s; }},
      {"snapshot_every", [](Config& c, RawModel&, const std::string& s) { c.snapshot_every = static_cast<int>(to_int(s)); }},
      {"seed", [](Config& c, RawModel&, const std::string& s) { c.seed = static_cast<std::uint64_t>(to_int(s)); }},
      {"threads", [](Config& c, RawModel&, const std::string& s) { c.threads = static_cast<int>(to_int(s)); }},
  };
  return table;
}

}  // namespace

void Config::validate() const {
  solver.validate();
  adapt.validate();
  load.validate();
  if (!(xi_cr > 0.0)) throw ConfigError("xi_cr must be > 0");
  if (mesh_n < 1) throw ConfigError("mesh_n must be >= 1");
  if (!(slit_depth >= 0.0 && slit_depth < 1.0)) throw ConfigError("slit_depth must lie in [0, 1)");
  if (!(slit_x > 0.0 && slit_x < 1.0)) throw ConfigError("slit_x must lie in (0, 1)");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

Config parse_config_text(const std::string& text) {
  Config cfg;
  const auto d = ModelParams::defaults();
  RawModel raw{d.alpha(), d.beta(), d.kappa(), d.eps(), d.lambda_c()};
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no);
    }
    if (seen.count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'",
                        line_no);
    }
    seen[key] = line_no;
    try {
      it->second(cfg, raw, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": bad value '" + value + "' for " +
                            key + " (" + e.what() + ")",
                        line_no);
    }
  }
  auto line_of = [&](const std::string& msg) {
    // Attribute an invariant violation to the line that set the offending key.
    for (const auto& [key, ln] : seen) {
      if (msg.rfind(key + " ", 0) == 0) return ln;
    }
    return 0;
  };
  try {
    cfg.model = ModelParams(raw.alpha, raw.beta, raw.kappa, raw.eps, raw.lambda_c);
    cfg.validate();
  } catch (const std::exception& e) {
    const int ln = line_of(e.what());
    throw ConfigError(ln > 0 ? "line " + std::to_string(ln) + ": " + e.what() : e.what(), ln);
  }
  return cfg;
}

void apply_env_overrides(Config& cfg) {
  if (const char* t = std::getenv("LIMITFRAC_THREADS"); t != nullptr && *t != '\0') {
    long long n = 0;
    try {
      n = to_int(t);
    } catch (const std::invalid_argument&) {
      throw ConfigError(std::string("LIMITFRAC_THREADS is not an integer: ") + t);
    }
    if (n < 1) throw ConfigError("LIMITFRAC_THREADS must be a positive integer");
    cfg.threads = static_cast<int>(n);
  }
  if (const char* o = std::getenv("LIMITFRAC_OUTDIR"); o != nullptr && *o != '\0') {
    cfg.output_dir = o;
  }
}

Config parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Config cfg = parse_config_text(buf.str());
  apply_env_overrides(cfg);
  return cfg;
}

const char* driver_name(Driver d) {
  switch (d) {
    case Driver::I: return "I";
    case Driver::II: return "II";
    case Driver::III: return "III";
  }
  return "?";
}

void echo_config(const Config& cfg, std::ostream& out) {
  std::ostringstream s;
  s.precision(17);
  const auto& m = cfg.model;
  s << "alpha = " << m.alpha() << '\n'
    << "beta = " << m.beta() << '\n'
    << "kappa = " << m.kappa() << '\n'
    << "eps = " << m.eps() << '\n'
    << "lambda_c = " << m.lambda_c() << '\n'
    << "c = " << cfg.load.c << '\n'
    << "dt = " << cfg.load.dt << '\n'
    << "n_steps = " << cfg.load.n_steps << '\n'
    << "mesh_n = " << cfg.mesh_n << '\n'
    << "slit_x = " << cfg.slit_x << '\n'
    << "slit_depth = " << cfg.slit_depth << '\n'
    << "theta = " << cfg.adapt.theta << '\n'
    << "xi_rf = " << cfg.adapt.xi_rf << '\n'
    << "max_refine_rounds = " << cfg.adapt.max_refine_rounds << '\n'
    << "schedule_ratio = " << cfg.adapt.schedule_ratio << '\n'
    << "xi_cr = " << cfg.xi_cr << '\n'
    << "xi_v = " << cfg.solver.xi_v << '\n'
    << "xi_vn = " << cfg.solver.xi_vn << '\n'
    << "picard_tol = " << cfg.solver.picard_tol << '\n'
    << "picard_max = " << cfg.solver.picard_max << '\n'
    << "linear_tol = " << cfg.solver.linear_tol << '\n'
    << "linear_max = " << cfg.solver.linear_max << '\n'
    << "altmin_max = " << cfg.solver.altmin_max << '\n'
    << "accept_altmin_cap = " << (cfg.solver.accept_altmin_cap ? "true" : "false") << '\n'
    << "driver = " << driver_name(cfg.driver) << '\n'
    << "output_dir = " << cfg.output_dir << '\n'
    << "snapshot_every = " << cfg.snapshot_every << '\n'
    << "seed = " << cfg.seed << '\n'
    << "threads = " << cfg.threads << '\n';
  out << s.str();
}

}  // namespace limitfrac
