#include "mixtura/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mixtura {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_series_csv(std::ostream& os, const std::vector<TimeSeriesRecord>& rows) {
  os << kSeriesHeader << '\n';
  for (const auto& r : rows) {
    for (double v : {r.t, r.mass_total, r.mass1, r.mass2, r.l2_zeta, r.l2_u, r.l2_h,
                     r.linf_zeta, r.linf_u, r.linf_h, r.min_rho1, r.max_rho1,
                     r.min_rho2, r.max_rho2}) {
      os << format_double(v) << ',';
    }
    os << r.picard_iters << '\n';
  }
}

std::vector<TimeSeriesRecord> read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != kSeriesHeader) throw Error(path.string() + ": unexpected CSV header");
  std::vector<TimeSeriesRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 15) throw Error(path.string() + ": malformed row");
    TimeSeriesRecord r;
    double* f[] = {&r.t, &r.mass_total, &r.mass1, &r.mass2, &r.l2_zeta, &r.l2_u,
                   &r.l2_h, &r.linf_zeta, &r.linf_u, &r.linf_h, &r.min_rho1,
                   &r.max_rho1, &r.min_rho2, &r.max_rho2};
    for (int i = 0; i < 14; ++i) *f[i] = v[i];
    r.picard_iters = static_cast<int>(v[14]);
    rows.push_back(r);
  }
  return rows;
}

nlohmann::json spectrum_json(const SpectrumReport& s) {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& l : s.eigenvalues) ev.push_back({l.real(), l.imag()});
  return {{"eigenvalues", ev},
          {"zero_mode_count", s.zero_mode_count},
          {"expected_zero_modes", s.expected_zero_modes},
          {"zero_threshold", s.zero_threshold},
          {"spectral_abscissa_mean_zero", s.spectral_abscissa_mean_zero},
          {"decay_rate", s.decay_rate},
          {"kernel_residual", s.kernel_residual}};
}

nlohmann::json final_state_json(const RunResult& r, const SimConfig& cfg) {
  return {{"t", r.t_final},
          {"steps", r.steps},
          {"formulation", to_string(cfg.formulation)},
          {"grid",
           {{"cells", cfg.grid.cells()},
            {"length", cfg.grid.length()},
            {"boundary", to_string(cfg.grid.boundary())}}},
          {"x_cells", cfg.grid.cell_centers()},
          {"x_nodes", cfg.grid.node_positions()},
          {"rho1", r.primitive.rho1},
          {"rho2", r.primitive.rho2},
          {"rho", r.entropic.rho},
          {"h", r.entropic.h},
          {"u", r.entropic.u}};
}

OutputDir::OutputDir(std::filesystem::path dir, bool force)
    : dir_(std::move(dir)), force_(force) {}

void OutputDir::claim(const std::vector<std::string>& names) const {
  if (force_) return;
  for (const auto& n : names) {
    if (std::filesystem::exists(dir_ / n)) {
      throw OutputExists("refusing to overwrite " + (dir_ / n).string() +
                         " (use --force)");
    }
  }
}

void OutputDir::write(const std::string& name, const std::string& content) {
  claim({name});
  std::filesystem::create_directories(dir_);
  const auto target = dir_ / name;
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + target.string());
  out << content;
  if (!out) throw Error("write failed for " + target.string());
  if (std::find(written_.begin(), written_.end(), name) == written_.end()) {
    written_.push_back(name);
  }
}

void OutputDir::write_json(const std::string& name, const nlohmann::json& j) {
  write(name, j.dump(2) + "\n");
}

}  // namespace mixtura
