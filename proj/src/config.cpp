#include "mixtura/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "mixtura/errors.hpp"

namespace mixtura {

namespace pt = boost::property_tree;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"mixture", {"m1", "m2", "mu", "nu"}},
    {"grid", {"cells", "length", "boundary", "sweep_cells", "temporal_cells"}},
    {"time",
     {"dt", "t_end", "formulation", "picard_tol", "picard_max", "cfl_limit",
      "output_every", "dt_coefficient", "temporal_dts", "mms_t_end",
      "temporal_t_end", "quadrature", "lagrangian_time"}},
    {"initial",
     {"type", "rho1_star", "rho2_star", "amplitude", "mode", "velocity_amplitude",
      "seed", "mms_amplitude", "delta", "epsilons"}},
    {"output", {"dir"}},
};

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string origin)
      : tree_(tree), origin_(std::move(origin)) {}

  template <typename T>
  T get(const std::string& key, T fallback) const {
    const auto node = tree_.get_child_optional(pt::ptree::path_type(key, '.'));
    if (!node) return fallback;
    const std::string raw = node->data();
    std::istringstream is(raw);
    T value{};
    is >> value;
    if (is.fail() || !(is >> std::ws).eof()) fail(key, "cannot parse '" + raw + "'");
    return value;
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    return v ? *v : fallback;
  }

  bool has(const std::string& key) const {
    return static_cast<bool>(tree_.get_child_optional(pt::ptree::path_type(key, '.')));
  }

  template <typename T>
  std::vector<T> get_list(const std::string& key, std::vector<T> fallback) const {
    if (!has(key)) return fallback;
    std::string raw = get_string(key, "");
    for (char& c : raw) {
      if (c == ',') c = ' ';
    }
    std::istringstream is(raw);
    std::vector<T> out;
    T v{};
    while (is >> v) out.push_back(v);
    if (!is.eof() || out.empty()) fail(key, "cannot parse list '" + raw + "'");
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const {
    throw ConfigError(origin_ + ": [" + key.substr(0, key.find('.')) + "] " +
                      key.substr(key.find('.') + 1) + ": " + why);
  }

 private:
  const pt::ptree& tree_;
  std::string origin_;
};

void check_schema(const pt::ptree& tree, const std::string& origin) {
  for (const auto& [section, body] : tree) {
    const auto it = kSchema.find(section);
    if (it == kSchema.end()) {
      throw ConfigError(origin + ": unknown section [" + section + "]");
    }
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(origin + ": key '" + section + "' outside of a section");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) {
        throw ConfigError(origin + ": unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": line " + std::to_string(e.line()) + ": " + e.message());
  }
  check_schema(tree, origin);
  const Reader r(tree, origin);

  auto build = [&]() {
    try {
      MixtureParams params(r.get("mixture.m1", 1.0), r.get("mixture.m2", 2.0),
                           r.get("mixture.mu", 0.1), r.get("mixture.nu", 0.1));
      Grid1D grid(r.get("grid.cells", 128), r.get("grid.length", 1.0),
                  parse_boundary(r.get_string("grid.boundary", "wall")));
      return SimConfig(params, grid);
    } catch (const DomainError& e) {
      throw ConfigError(origin + ": " + e.what());
    }
  };
  ExperimentConfig cfg(build());
  cfg.source_path = origin;
  cfg.sha256 = sha256_hex(text);

  SimConfig& s = cfg.sim;
  s.dt = r.get("time.dt", s.dt);
  s.t_end = r.get("time.t_end", s.t_end);
  s.formulation = parse_formulation(r.get_string("time.formulation", "entropic"));
  s.picard_tol = r.get("time.picard_tol", s.picard_tol);
  s.picard_max = r.get("time.picard_max", s.picard_max);
  s.cfl_limit = r.get("time.cfl_limit", s.cfl_limit);
  s.output_every = r.get("time.output_every", s.output_every);

  auto& ic = s.initial;
  ic.type = parse_initial_type(r.get_string("initial.type", "mode"));
  ic.rho1_star = r.get("initial.rho1_star", ic.rho1_star);
  ic.rho2_star = r.get("initial.rho2_star", ic.rho2_star);
  ic.amplitude = r.get("initial.amplitude", ic.amplitude);
  ic.mode = r.get("initial.mode", ic.mode);
  if (r.has("initial.velocity_amplitude")) {
    ic.velocity_amplitude = r.get("initial.velocity_amplitude", 0.0);
  }
  ic.seed = r.get<std::uint64_t>("initial.seed", ic.seed);

  cfg.sweep_cells = r.get_list("grid.sweep_cells", cfg.sweep_cells);
  cfg.temporal_cells = r.get("grid.temporal_cells", cfg.temporal_cells);
  cfg.dt_coefficient = r.get("time.dt_coefficient", cfg.dt_coefficient);
  cfg.temporal_dts = r.get_list("time.temporal_dts", cfg.temporal_dts);
  cfg.mms_t_end = r.get("time.mms_t_end", cfg.mms_t_end);
  cfg.temporal_t_end = r.get("time.temporal_t_end", cfg.temporal_t_end);
  cfg.quadrature = r.get("time.quadrature", cfg.quadrature);
  cfg.lagrangian_time = r.get("time.lagrangian_time", cfg.lagrangian_time);
  cfg.mms_amplitude = r.get("initial.mms_amplitude", cfg.mms_amplitude);
  cfg.delta = r.get("initial.delta", cfg.delta);
  cfg.epsilons = r.get_list("initial.epsilons", cfg.epsilons);
  cfg.output_dir = r.get_string("output.dir", cfg.output_dir);

  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  for (int n : cfg.sweep_cells) {
    if (n < Grid1D::kMinCells) throw ConfigError(origin + ": sweep_cells entries must be >= 8");
  }
  if (cfg.temporal_cells < Grid1D::kMinCells) {
    throw ConfigError(origin + ": temporal_cells must be >= 8");
  }
  if (!(cfg.dt_coefficient > 0.0)) throw ConfigError(origin + ": dt_coefficient must be positive");
  for (double dt : cfg.temporal_dts) {
    if (!(dt > 0.0)) throw ConfigError(origin + ": temporal_dts must be positive");
  }
  if (cfg.quadrature < 2 || cfg.quadrature % 2) {
    throw ConfigError(origin + ": quadrature must be an even number >= 2");
  }
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw ConfigError(origin + ": delta must lie in (0, 1)");
  }
  for (double e : cfg.epsilons) {
    if (!(e > 0.0)) throw ConfigError(origin + ": epsilons must be positive");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path);
}

}  // namespace mixtura
