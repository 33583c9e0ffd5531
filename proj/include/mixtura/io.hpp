#pragma once

#include <filesystem>
#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "mixtura/dynamics.hpp"
#include "mixtura/errors.hpp"
#include "mixtura/linear_analysis.hpp"

namespace mixtura {

/// Output file already present and --force not given.
class OutputExists : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// 17 significant digits, round-trips IEEE-754 doubles.
std::string format_double(double x);

inline constexpr const char* kSeriesHeader =
    "t,mass_total,mass1,mass2,l2_zeta,l2_u,l2_h,linf_zeta,linf_u,linf_h,"
    "min_rho1,max_rho1,min_rho2,max_rho2,picard_iters";

void write_series_csv(std::ostream& os, const std::vector<TimeSeriesRecord>& rows);
/// Parses a file written by write_series_csv.
std::vector<TimeSeriesRecord> read_series_csv(const std::filesystem::path& path);

nlohmann::json spectrum_json(const SpectrumReport& s);
nlohmann::json final_state_json(const RunResult& r, const SimConfig& cfg);

/// Output directory guard: refuses to overwrite existing files unless
/// forced, and remembers what was written for the manifest.
class OutputDir {
 public:
  OutputDir(std::filesystem::path dir, bool force);

  const std::filesystem::path& path() const noexcept { return dir_; }
  /// Throws OutputExists if any of the names exist and force is off.
  void claim(const std::vector<std::string>& names) const;
  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  const std::vector<std::string>& written() const noexcept { return written_; }

 private:
  std::filesystem::path dir_;
  bool force_;
  std::vector<std::string> written_;
};

}  // namespace mixtura
