#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qmcbox/spectrum.hpp"

using namespace qmcbox;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qmcbox_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("generate_gaussian matches the rms of the reference spectrum") {
  const auto s = generate_gaussian(10, 0.5699);
  REQUIRE(s.size() == 10);
  CHECK(std::abs(s.rms() - 0.5699) <= 1e-12 * 0.5699);
  CHECK(std::abs(s.mean()) <= 1e-12);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1] < s[i]);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == -s[s.size() - 1 - i]);
}

TEST_CASE("two symmetric levels with unit rms are forced to -1, 1") {
  const auto s = generate_gaussian(2, 1.0);
  CHECK(s[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("four-level spectrum is centred") {
  const auto s = generate_gaussian(4, 1.0 / std::sqrt(2.0));
  CHECK(std::abs(s.mean()) <= 1e-12);
  CHECK(s.rms() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("odd level counts put a level at zero") {
  const auto s = generate_gaussian(5, 1.0);
  CHECK(s[2] == 0.0);
  CHECK(s[0] == -s[4]);
}

TEST_CASE("generator rejects bad arguments") {
  CHECK_THROWS_AS(generate_gaussian(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_gaussian(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_gaussian(10, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_gaussian(10, std::nan("")), std::invalid_argument);
}

TEST_CASE("rescaling multiplies every level by the rms ratio") {
  const auto a = generate_gaussian(12, 0.5);
  const auto b = generate_gaussian(12, 1.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(b[i] == doctest::Approx(a[i] * 3.0).epsilon(1e-15));
  }
  const auto c = a.scaled(3.0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(c[i] == a[i] * 3.0);
  CHECK_THROWS_AS(a.scaled(0.0), std::invalid_argument);
}

TEST_CASE("generator is deterministic") {
  CHECK(generate_gaussian(14, 0.7).energies() == generate_gaussian(14, 0.7).energies());
}

TEST_CASE("reference spectrum holds the printed values") {
  const auto s = reference_spectrum10();
  REQUIRE(s.size() == 10);
  CHECK(s.lowest() == -0.929);
  CHECK(s.highest() == 0.929);
  CHECK(s[4] == -0.09);
  CHECK(s[5] == 0.09);
  CHECK(std::abs(s.mean()) < 1e-15);
  CHECK(s.rms() == doctest::Approx(0.5699).epsilon(1e-4));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Spectrum({}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({0.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({0.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum({0.0, INFINITY}), std::invalid_argument);
  CHECK_NOTHROW(Spectrum({-1.0, 1.0}));
}

TEST_CASE("save and load round-trip bit-exactly") {
  for (const auto& s : {reference_spectrum10(), generate_gaussian(13, 1.0 / std::sqrt(2.0))}) {
    const auto path = temp_file("roundtrip.json");
    save_spectrum(s, path);
    const auto t = load_spectrum(path);
    CHECK(t.energies() == s.energies());
    CHECK(t.name() == s.name());
    CHECK(spectrum_hash(t) == spectrum_hash(s));
  }
}

TEST_CASE("loading rejects invalid files") {
  auto write = [](const std::string& name, const std::string& text) {
    const auto path = temp_file(name);
    std::ofstream(path) << text;
    return path;
  };
  CHECK_THROWS_AS(load_spectrum(write("dup.json", R"({"name":"d","energies":[0,0.5,0.5]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_spectrum(write("empty.json", R"({"name":"e","energies":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_spectrum(write("one.json", R"({"energies":[1.0]})")), std::invalid_argument);
  CHECK_THROWS_AS(load_spectrum(write("noarr.json", R"({"name":"x"})")), std::invalid_argument);
  CHECK_THROWS_AS(load_spectrum(write("text.json", R"({"energies":["a","b"]})")),
                  std::invalid_argument);
  CHECK_THROWS(load_spectrum(write("broken.json", "{ not json")));
  CHECK_THROWS(load_spectrum(temp_file("does_not_exist.json")));
}

TEST_CASE("hash separates different spectra") {
  CHECK(spectrum_hash(reference_spectrum10()) != spectrum_hash(generate_gaussian(10, 0.5699)));
  CHECK(spectrum_hash_hex(reference_spectrum10()).size() == 16);
}
