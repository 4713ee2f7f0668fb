// qmcbox: spectra, enclosing-box rejection sampling and reproduction drivers.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmcbox/analysis.hpp"
#include "qmcbox/boxes.hpp"
#include "qmcbox/polytope.hpp"
#include "qmcbox/reproduce.hpp"
#include "qmcbox/sampler.hpp"
#include "qmcbox/spectrum.hpp"

namespace fs = std::filesystem;
using namespace qmcbox;

namespace {

std::string command_line(int argc, char** argv) {
  std::string s;
  for (int k = 0; k < argc; ++k) {
    if (k) s += ' ';
    s += argv[k];
  }
  return s;
}

void print_spectrum(const Spectrum& s, std::ostream& out) {
  out << "name: " << (s.name().empty() ? "(unnamed)" : s.name()) << '\n'
      << "N: " << s.size() << '\n'
      << std::setprecision(12) << "mean: " << s.mean() << '\n'
      << "rms: " << s.rms() << '\n'
      << "hash: " << spectrum_hash_hex(s) << '\n'
      << "energies:";
  for (double e : s.energies()) out << ' ' << e;
  out << '\n';
}

struct SampleArgs {
  std::string spectrum;
  double e_av = 0.0;
  std::string algorithm = "r";
  std::string optimize = "prescribed";
  double trials = 1e6;  // accepts 1e8 notation
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t store = 0;
  std::string out = "run";
};

EnclosingBox make_box(const Polytope& polytope, const SampleArgs& a, nlohmann::json& box_info) {
  const std::size_t n = polytope.levels();
  if (a.algorithm == "r") {
    std::vector<Eigen::VectorXd> inputs;
    if (a.optimize == "prescribed") {
      const auto seq = r_prescription(polytope);
      inputs = unit_inputs(n, seq);
      box_info["sequence"] = seq;
    } else if (a.optimize == "search") {
      if (n > 10) {
        throw std::invalid_argument("--optimize search enumerates every sequence and is limited to N <= 10; "
                                    "use --optimize prescribed for larger spectra");
      }
      const auto report = sequence_search_exhaustive(polytope);
      inputs = unit_inputs(n, report.best_sequence);
      box_info["sequence"] = report.best_sequence;
    } else {
      auto rng = substream(a.seed, 0xB0B);
      inputs = random_sphere_inputs(n, polytope.dimension(), rng);
      box_info["sequence"] = "random-sphere";
    }
    return build_rect_box(polytope, inputs);
  }

  Vertex origin;
  if (a.optimize == "prescribed") {
    origin = nr_prescription(polytope);
  } else if (a.optimize == "search") {
    origin = nr_vertex_scan(polytope).argmin.front();
  } else {
    throw std::invalid_argument("--optimize random-sphere applies to the rectangular algorithm only");
  }
  box_info["origin"] = origin.label();
  return build_nr_box(polytope, origin);
}

int cmd_sample(const SampleArgs& a, const std::string& cmdline) {
  if (!(a.trials >= 1.0) || a.trials != std::floor(a.trials) || a.trials > 1.8e19) {
    throw std::invalid_argument("--n must be a positive integer");
  }
  const Spectrum spectrum = load_spectrum(a.spectrum);
  const Polytope polytope(spectrum, a.e_av);

  nlohmann::json box_info;
  const EnclosingBox box = make_box(polytope, a, box_info);

  RunOptions ro;
  ro.trials = static_cast<std::uint64_t>(a.trials);
  ro.seed = a.seed;
  ro.workers = a.workers;
  ro.store_cap = a.store;
  const RunResult res = run(box, polytope, ro);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::vector<std::string> outputs;

  {
    const auto path = dir / "acceptance.csv";
    std::ofstream f(path);
    f << "n_s,n_a,r,r_stderr,box_volume,predicted_r\n" << std::setprecision(12) << res.trials << ','
      << res.accepted << ',' << res.rate << ',' << res.rate_stderr << ',' << box.volume << ','
      << manifold_volume(spectrum, a.e_av) / box.volume << '\n';
    outputs.push_back(path.string());
  }
  if (a.store > 0) {
    const auto path = dir / "points.csv";
    std::ofstream f(path);
    write_points_csv(res, spectrum.size(), f);
    outputs.push_back(path.string());
    if (res.points.size() >= 100) {
      const auto occ = dir / "occupations.csv";
      std::ofstream g(occ);
      write_occupation_csv(occupation_report(res, spectrum, a.e_av), g);
      outputs.push_back(occ.string());
    }
  }

  nlohmann::json m;
  m["spectrum_hash"] = spectrum_hash_hex(spectrum);
  m["spectrum_name"] = spectrum.name();
  m["e_av"] = a.e_av;
  m["algorithm"] = a.algorithm;
  m["optimize"] = a.optimize;
  m["box"] = box_info;
  m["box_volume"] = box.volume;
  m["n_s"] = res.trials;
  m["n_a"] = res.accepted;
  m["r"] = res.rate;
  m["r_stderr"] = res.rate_stderr;
  m["seed"] = res.seed;
  m["workers"] = res.workers;
  m["stored_points"] = res.points.size();
  m["storage_truncated"] = res.storage_truncated;
  m["duration_s"] = res.wall_seconds;
  m["command"] = cmdline;
  const auto manifest = dir / "manifest.json";
  outputs.push_back(manifest.string());
  m["outputs"] = outputs;
  m["tool_version"] = QMCBOX_VERSION;
  std::ofstream(manifest) << m.dump(2) << '\n';

  std::cout << std::setprecision(6) << "n_s " << res.trials << "  n_a " << res.accepted << "  r "
            << res.rate << " +- " << res.rate_stderr << "  V_B " << box.volume << "  ("
            << res.wall_seconds << " s)\n"
            << "wrote " << manifest.string() << '\n';
  return 0;
}

int cmd_reproduce(const std::string& target, ReproduceOptions opts, double trials,
                  const std::string& cmdline) {
  if (!(trials >= 1.0) || trials != std::floor(trials)) {
    throw std::invalid_argument("--trials must be a positive integer");
  }
  opts.trials = static_cast<std::uint64_t>(trials);
  const std::vector<std::string> targets =
      target == "all" ? reproduce_targets() : std::vector<std::string>{target};

  bool ok = true;
  nlohmann::json doc;
  doc["command"] = cmdline;
  doc["tool_version"] = QMCBOX_VERSION;
  doc["seed"] = opts.seed;
  doc["trials"] = opts.trials;
  doc["workers"] = opts.workers;
  doc["long"] = opts.long_run;
  for (const auto& t : targets) {
    const auto summary = reproduce(t, opts);
    print_summary(summary, std::cout);
    ok = ok && summary.all_passed();
    auto& entry = doc["targets"][t];
    entry["passed"] = summary.all_passed();
    entry["outputs"] = summary.outputs;
    entry["warnings"] = summary.warnings;
    for (const auto& c : summary.checks) {
      entry["checks"].push_back({{"name", c.name},
                                 {"measured", c.measured},
                                 {"expected", c.expected},
                                 {"tolerance", c.tolerance},
                                 {"passed", c.passed},
                                 {"note", c.note}});
    }
  }
  const auto path = opts.out_dir / "summary.json";
  std::ofstream(path) << doc.dump(2) << '\n';
  std::cout << (ok ? "all golden comparisons passed" : "some golden comparisons FAILED") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform sampling of the energy-constrained occupation polytope"};
  app.set_version_flag("--version", std::string(QMCBOX_VERSION));
  app.require_subcommand(1);
  const std::string cmdline = command_line(argc, argv);
  int status = 0;

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "Create or inspect spectrum files");
  spec->require_subcommand(1);

  std::size_t gen_n = 10;
  double gen_rms = 1.0 / std::sqrt(2.0);
  std::string gen_out;
  std::string gen_name;
  auto* gen = spec->add_subcommand("gen", "Discretised Gaussian spectrum");
  gen->add_option("--n", gen_n, "Number of levels")->required()->check(CLI::Range(2, 100000));
  gen->add_option("--rms", gen_rms, "Target root-mean-square")->required();
  gen->add_option("--out", gen_out, "Output JSON file")->required();
  gen->add_option("--name", gen_name, "Spectrum label");
  gen->callback([&] {
    auto s = generate_gaussian(gen_n, gen_rms);
    if (!gen_name.empty()) s = Spectrum(s.energies(), gen_name);
    save_spectrum(s, gen_out);
    print_spectrum(s, std::cout);
  });

  std::string ref_out;
  auto* ref = spec->add_subcommand("reference", "The 10-level reference spectrum");
  ref->add_option("--out", ref_out, "Output JSON file")->required();
  ref->callback([&] {
    const auto s = reference_spectrum10();
    save_spectrum(s, ref_out);
    print_spectrum(s, std::cout);
  });

  std::string show_path;
  auto* show = spec->add_subcommand("show", "Print a spectrum file");
  show->add_option("file", show_path, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  show->callback([&] { print_spectrum(load_spectrum(show_path), std::cout); });

  // vertices
  std::string v_spec;
  double v_eav = 0.0;
  std::string v_out;
  auto* vert = app.add_subcommand("vertices", "List the polytope vertices");
  vert->add_option("--spectrum", v_spec, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  vert->add_option("--eav", v_eav, "Energy expectation value")->required();
  vert->add_option("--out", v_out, "Output CSV (stdout if omitted)");
  vert->callback([&] {
    const Polytope p(load_spectrum(v_spec), v_eav);
    if (v_out.empty()) {
      write_vertices_csv(p, std::cout);
    } else {
      std::ofstream f(v_out);
      write_vertices_csv(p, f);
      std::cout << "K " << p.k() << "  L " << p.l() << "  vertices " << p.vertices().size()
                << "\nwrote " << v_out << '\n';
    }
  });

  // sample
  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Rejection sampling in an enclosing box");
  sample->add_option("--spectrum", sa.spectrum, "Spectrum JSON")->required()->check(CLI::ExistingFile);
  sample->add_option("--eav", sa.e_av, "Energy expectation value")->required();
  sample->add_option("--algorithm", sa.algorithm, "r (rectangular) or nr (parallelotope)")
      ->check(CLI::IsMember({"r", "nr"}));
  sample->add_option("--optimize", sa.optimize, "prescribed, search or random-sphere")
      ->check(CLI::IsMember({"prescribed", "search", "random-sphere"}));
  sample->add_option("--n", sa.trials, "Number of trials");
  sample->add_option("--seed", sa.seed, "64-bit seed");
  sample->add_option("--workers", sa.workers, "Worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--store", sa.store, "Keep up to this many accepted points (0: none)");
  sample->add_option("--out", sa.out, "Output directory");
  sample->callback([&] { status = cmd_sample(sa, cmdline); });

  // reproduce
  std::string target;
  ReproduceOptions ro;
  std::string ro_out = "reproduce";
  double ro_trials = 1e8;
  auto* repro = app.add_subcommand("reproduce", "Regenerate the reference tables and figures");
  std::vector<std::string> choices = reproduce_targets();
  choices.push_back("all");
  repro->add_option("target", target, "table1 table2 table3 fig1 fig4 fig5 fig6 or all")
      ->required()
      ->check(CLI::IsMember(choices));
  repro->add_option("--out", ro_out, "Output directory");
  repro->add_flag("--long", ro.long_run, "Include the N=12 acceptance-rate rows");
  repro->add_option("--trials", ro_trials, "Trials per sampling run");
  repro->add_option("--seed", ro.seed, "64-bit seed");
  repro->add_option("--workers", ro.workers, "Worker threads")->check(CLI::PositiveNumber);
  repro->callback([&] {
    ro.out_dir = ro_out;
    status = cmd_reproduce(target, ro, ro_trials, cmdline);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
