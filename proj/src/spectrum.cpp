#include "qmcbox/spectrum.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace qmcbox {

Spectrum::Spectrum(std::vector<double> energies, std::string name)
    : energies_(std::move(energies)), name_(std::move(name)) {
  if (energies_.size() < 2) {
    throw std::invalid_argument("spectrum needs at least 2 levels, got " +
                                std::to_string(energies_.size()));
  }
  for (std::size_t i = 0; i < energies_.size(); ++i) {
    if (!std::isfinite(energies_[i])) {
      throw std::invalid_argument("spectrum level " + std::to_string(i + 1) +
                                  " is not finite");
    }
    if (i > 0 && !(energies_[i - 1] < energies_[i])) {
      std::ostringstream msg;
      msg << "spectrum must be strictly increasing: E_" << i << " = "
          << energies_[i - 1] << " is not below E_" << i + 1 << " = "
          << energies_[i];
      throw std::invalid_argument(msg.str());
    }
  }
}

double Spectrum::mean() const noexcept {
  double sum = 0.0;
  for (double e : energies_) sum += e;
  return sum / static_cast<double>(energies_.size());
}

double Spectrum::rms() const noexcept {
  double sum = 0.0;
  for (double e : energies_) sum += e * e;
  return std::sqrt(sum / static_cast<double>(energies_.size()));
}

double Spectrum::centred_norm() const noexcept {
  const double m = mean();
  double sum = 0.0;
  for (double e : energies_) sum += (e - m) * (e - m);
  return std::sqrt(sum);
}

Spectrum Spectrum::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<double> out(energies_);
  for (double& e : out) e *= factor;
  return Spectrum(std::move(out), name_);
}

Spectrum generate_gaussian(std::size_t n, double target_rms) {
  if (n < 2) throw std::invalid_argument("generate_gaussian: n must be >= 2");
  if (!(target_rms > 0.0) || !std::isfinite(target_rms)) {
    throw std::invalid_argument("generate_gaussian: target_rms must be positive");
  }
  std::vector<double> e(n, 0.0);
  // Lower half from the quantile function, upper half mirrored so that
  // E_i = -E_{n+1-i} holds bit-exactly.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    e[i] = -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
    e[n - 1 - i] = -e[i];
  }
  double sum_sq = 0.0;
  for (double x : e) sum_sq += x * x;
  const double factor = target_rms / std::sqrt(sum_sq / static_cast<double>(n));
  for (double& x : e) x *= factor;

  std::ostringstream name;
  name << "gaussian-n" << n << "-rms" << std::setprecision(6) << target_rms;
  return Spectrum(std::move(e), name.str());
}

Spectrum reference_spectrum10() {
  return Spectrum({-0.929, -0.679, -0.466, -0.273, -0.09, 0.09, 0.273, 0.466, 0.679, 0.929},
                  "reference-10");
}

nlohmann::json to_json(const Spectrum& spectrum) {
  return nlohmann::json{{"name", spectrum.name()}, {"energies", spectrum.energies()}};
}

Spectrum spectrum_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("spectrum file: top level must be an object");
  if (!doc.contains("energies") || !doc["energies"].is_array()) {
    throw std::invalid_argument("spectrum file: missing array field \"energies\"");
  }
  std::vector<double> energies;
  for (const auto& v : doc["energies"]) {
    if (!v.is_number()) throw std::invalid_argument("spectrum file: energies must be numbers");
    energies.push_back(v.get<double>());
  }
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw std::invalid_argument("spectrum file: name must be a string");
    name = doc["name"].get<std::string>();
  }
  return Spectrum(std::move(energies), std::move(name));
}

void save_spectrum(const Spectrum& spectrum, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << to_json(spectrum).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Spectrum load_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectrum file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("spectrum file " + path.string() + ": " + e.what());
  }
  return spectrum_from_json(doc);
}

std::uint64_t spectrum_hash(const Spectrum& spectrum) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double e : spectrum.energies()) {
    auto bits = std::bit_cast<std::uint64_t>(e);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string spectrum_hash_hex(const Spectrum& spectrum) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << spectrum_hash(spectrum);
  return out.str();
}

}  // namespace qmcbox
