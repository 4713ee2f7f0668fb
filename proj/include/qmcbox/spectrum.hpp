#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace qmcbox {

/// Ordered set of eigenenergies E_1 < E_2 < ... < E_N (dimensionless).
///
/// Construction validates strict monotonicity and N >= 2, so every Spectrum
/// in circulation is usable as a knot sequence and as a vertex generator.
/// Instances are immutable and safe to share between threads.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> energies, std::string name = {});

  const std::vector<double>& energies() const noexcept { return energies_; }
  const std::string& name() const noexcept { return name_; }

  std::size_t size() const noexcept { return energies_.size(); }
  double operator[](std::size_t i) const { return energies_[i]; }
  double lowest() const noexcept { return energies_.front(); }
  double highest() const noexcept { return energies_.back(); }

  double mean() const noexcept;
  /// Root-mean-square deviation from zero.
  double rms() const noexcept;
  /// Euclidean norm of (E_i - mean).
  double centred_norm() const noexcept;

  /// Copy with every level multiplied by `factor` (> 0).
  Spectrum scaled(double factor) const;

 private:
  std::vector<double> energies_;
  std::string name_;
};

/// Symmetric discretised Gaussian: midpoint normal quantiles
/// Phi^-1((i - 1/2) / n), rescaled so that the rms equals `target_rms`.
Spectrum generate_gaussian(std::size_t n, double target_rms);

/// The 10-level Gaussian-like spectrum used for all box-volume studies,
/// stored at its printed 3-decimal precision.
Spectrum reference_spectrum10();

nlohmann::json to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const nlohmann::json& doc);

void save_spectrum(const Spectrum& spectrum, const std::filesystem::path& path);
Spectrum load_spectrum(const std::filesystem::path& path);

/// FNV-1a over the IEEE-754 bit patterns of the energies.
std::uint64_t spectrum_hash(const Spectrum& spectrum);
std::string spectrum_hash_hex(const Spectrum& spectrum);

}  // namespace qmcbox
