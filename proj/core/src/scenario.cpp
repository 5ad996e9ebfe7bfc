// Copyright 2026 The Spintomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spintomo/scenario.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "spintomo/benchmark.hpp"
#include "spintomo/errors.hpp"
#include "spintomo/fock_oracle.hpp"
#include "spintomo/folded_search.hpp"
#include "spintomo/gaussian_state.hpp"
#include "spintomo/interactions.hpp"
#include "spintomo/recon_grid.hpp"
#include "spintomo/schemes.hpp"
#include "spintomo/tomography.hpp"
#include "spintomo/version.hpp"

namespace spintomo {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct RunContext {
  std::uint64_t seed = 0;
  int threads = 1;
  fs::path out_dir;
};

RunContext read_run(Config& cfg) {
  RunContext ctx;
  ctx.seed = cfg.get_u64("run.seed");  // mandatory: no wall-clock fallback
  ctx.threads = static_cast<int>(cfg.get_long("run.threads", 1));
  if (ctx.threads < 0)
    throw config_error(cfg.origin() + ": run.threads must be >= 0");
  ctx.out_dir = cfg.get_string("run.out", ".");
  fs::create_directories(ctx.out_dir);
  return ctx;
}

StatePrep read_state(Config& cfg) {
  StatePrep prep;
  const std::string kind = cfg.get_string("state.kind", "vacuum");
  if (kind == "vacuum") {
    prep.kind = StatePrep::Kind::Vacuum;
  } else if (kind == "coherent") {
    prep.kind = StatePrep::Kind::Coherent;
    prep.alpha = {cfg.get_double("state.alpha_re", 0.0),
                  cfg.get_double("state.alpha_im", 0.0)};
  } else if (kind == "squeezed") {
    prep.kind = StatePrep::Kind::Squeezed;
    prep.r = cfg.get_double("state.r");
  } else if (kind == "thermal") {
    prep.kind = StatePrep::Kind::Thermal;
    prep.thermal_v = cfg.get_double("state.thermal_v");
  } else {
    throw config_error(cfg.origin() +
                       ": state.kind must be vacuum|coherent|squeezed|thermal");
  }
  return prep;
}

std::vector<double> uniform_angles(long n) {
  if (n < 1) throw config_error("angle count must be >= 1");
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k)
    angles[static_cast<std::size_t>(k)] = M_PI * static_cast<double>(k) / static_cast<double>(n);
  return angles;
}

long positive(Config& cfg, const std::string& key, long fallback) {
  const long v = cfg.get_long(key, fallback);
  if (v < 1) throw config_error(cfg.origin() + ": " + key + " must be >= 1");
  return v;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
}

void write_json(const fs::path& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_manifest(const RunContext& ctx, const Config& cfg, const std::string& sub,
                    const std::vector<std::string>& artifacts) {
  ordered_json m;
  m["tool"] = "spintomo";
  m["version"] = kVersion;
  m["subcommand"] = sub;
  m["config_hash"] = cfg.config_hash_hex();
  m["seed"] = ctx.seed;
  m["artifacts"] = artifacts;
  write_json(ctx.out_dir / "manifest.json", m);
}

RunResult run_scheme(Config& cfg, const RunContext& ctx) {
  const std::string name = cfg.get_string("scheme.name");
  const long shots = positive(cfg, "scheme.shots", 10000);
  const AcquisitionOptions opts{ctx.seed, static_cast<unsigned>(ctx.threads)};

  SampleSet set;
  if (name == "single_pass_probe") {
    const double r = cfg.get_double("scheme.light_r", 0.0);
    set = single_pass_probe(read_state(cfg), r, static_cast<std::size_t>(shots), opts);
  } else if (name == "two_pass_tomography") {
    const long n_angles = positive(cfg, "scheme.angles", 30);
    set = tomography_scan(read_state(cfg), uniform_angles(n_angles),
                          static_cast<std::size_t>(shots), opts);
  } else if (name == "three_pass_husimi") {
    set = husimi_acquisition(read_state(cfg), static_cast<std::size_t>(shots), opts);
  } else if (name == "fock_tomography") {
    const long n_angles = positive(cfg, "scheme.angles", 30);
    const long fock_n = cfg.get_long("scheme.fock_n", 1);
    const long dim = positive(cfg, "scheme.fock_dim", 20);
    set = fock_tomography_scan(static_cast<int>(fock_n), static_cast<int>(dim),
                               uniform_angles(n_angles),
                               static_cast<std::size_t>(shots), opts);
  } else {
    throw config_error(cfg.origin() + ": unknown scheme.name '" + name + "'");
  }
  cfg.finish();

  set.save((ctx.out_dir / "samples.csv").string());
  return {{"samples.csv"},
          name + ": " + std::to_string(set.records.size()) + " records"};
}

RunResult run_tomography(Config& cfg, const RunContext& ctx) {
  const std::string source = cfg.get_string("tomography.source", "gaussian");
  const long n_angles = positive(cfg, "tomography.angles", 30);
  const long shots = positive(cfg, "tomography.shots", 20000);
  const long bins = positive(cfg, "tomography.bins", 201);
  const double q_max = cfg.get_double("tomography.q_max", 6.0);
  FbpOptions fbp;
  fbp.cutoff = cfg.get_double("tomography.cutoff", 4.0);
  fbp.grid.extent = cfg.get_double("tomography.extent", 5.0);
  fbp.grid.resolution = static_cast<int>(positive(cfg, "tomography.resolution", 64));
  fbp.threads = ctx.threads;
  const AcquisitionOptions opts{ctx.seed, static_cast<unsigned>(ctx.threads)};

  SampleSet set;
  if (source == "gaussian") {
    set = tomography_scan(read_state(cfg), uniform_angles(n_angles),
                          static_cast<std::size_t>(shots), opts);
  } else if (source == "fock") {
    const long fock_n = cfg.get_long("tomography.fock_n", 1);
    const long dim = positive(cfg, "tomography.fock_dim", 20);
    set = fock_tomography_scan(static_cast<int>(fock_n), static_cast<int>(dim),
                               uniform_angles(n_angles),
                               static_cast<std::size_t>(shots), opts);
  } else {
    throw config_error(cfg.origin() + ": tomography.source must be gaussian|fock");
  }
  cfg.finish();

  const Sinogram sino = Sinogram::from_samples(set, static_cast<int>(bins), q_max);
  const ReconGrid grid = fbp_reconstruct(sino, fbp);

  set.save((ctx.out_dir / "samples.csv").string());
  grid.save((ctx.out_dir / "wigner.csv").string());
  grid.save_gnuplot((ctx.out_dir / "wigner.dat").string());
  const double w0 = fbp_point(sino, 0.0, 0.0, fbp.cutoff);
  return {{"samples.csv", "wigner.csv", "wigner.dat"},
          "tomography: W(0,0) = " + fmt(w0)};
}

RunResult run_husimi(Config& cfg, const RunContext& ctx) {
  const long shots = positive(cfg, "husimi.shots", 100000);
  HusimiOptions hopt;
  hopt.grid.extent = cfg.get_double("husimi.extent", 3.0);
  hopt.grid.resolution = static_cast<int>(positive(cfg, "husimi.resolution", 128));
  hopt.bandwidth = cfg.get_double("husimi.bandwidth", 0.0);
  hopt.threads = ctx.threads;
  if (!cfg.get_bool("husimi.undo_rotation", true)) hopt.rotation_override = 0.0;
  const StatePrep prep = read_state(cfg);
  cfg.finish();

  const AcquisitionOptions opts{ctx.seed, static_cast<unsigned>(ctx.threads)};
  const SampleSet set = husimi_acquisition(prep, static_cast<std::size_t>(shots), opts);
  const ReconGrid grid = husimi_estimate(set, hopt);

  set.save((ctx.out_dir / "samples.csv").string());
  grid.save((ctx.out_dir / "husimi.csv").string());
  grid.save_gnuplot((ctx.out_dir / "husimi.dat").string());
  const Eigen::Vector2d peak = grid_peak(grid);
  return {{"samples.csv", "husimi.csv", "husimi.dat"},
          "husimi: peak at (" + fmt(peak.x()) + ", " + fmt(peak.y()) + ")"};
}

RunResult run_benchmark_cmd(Config& cfg, const RunContext& ctx) {
  BenchmarkConfig bc;
  bc.eta = cfg.get_double("benchmark.eta", 1.0);
  bc.lambda = cfg.get_double("benchmark.lambda", 1.0);
  bc.phi = cfg.get_double("benchmark.phi", 0.0);
  bc.n_draws = positive(cfg, "benchmark.draws", 2000);
  bc.seed = ctx.seed;
  bc.threads = ctx.threads;

  const std::string channel = cfg.get_string("benchmark.channel", "identity");
  BenchmarkResult res;
  if (channel == "identity") {
    cfg.finish();
    res = run_benchmark(GaussianChannel::identity(), bc);
  } else if (channel == "attenuator") {
    const double ch_eta = cfg.get_double("benchmark.channel_eta");
    const double ch_phi = cfg.get_double("benchmark.channel_phi", 0.0);
    cfg.finish();
    res = run_benchmark(GaussianChannel::attenuator(ch_eta, ch_phi), bc);
  } else if (channel == "measure_prepare") {
    MeasureAndPrepare mp{cfg.get_double("benchmark.gain", 1.0)};
    cfg.finish();
    res = run_benchmark(mp, bc);
  } else {
    throw config_error(cfg.origin() +
                       ": benchmark.channel must be identity|attenuator|measure_prepare");
  }

  ordered_json v;
  v["eta"] = res.eta;
  v["lambda"] = res.lambda;
  v["phi"] = res.phi;
  v["F_bar"] = res.f_bar;
  v["F_bar_err"] = res.f_bar_err;
  v["F_c"] = res.f_c;
  v["delta_bar"] = res.delta_bar;
  v["delta_bar_err"] = res.delta_bar_err;
  v["delta_threshold"] = res.delta_threshold;
  v["pass_fidelity"] = res.pass_fidelity;
  v["pass_delta"] = res.pass_delta;
  v["seed"] = res.seed;
  write_json(ctx.out_dir / "verdict.json", v);
  return {{"verdict.json"},
          "benchmark: F_bar = " + fmt(res.f_bar) + " vs F_c = " + fmt(res.f_c) +
              (res.pass_fidelity || res.pass_delta ? " (non-classical)" : " (no pass)")};
}

RunResult run_oracle_check(Config& cfg, const RunContext& ctx) {
  const int dim = static_cast<int>(positive(cfg, "oracle.dim", 40));
  const double kappa = cfg.get_double("oracle.kappa", 1.0);
  const double tol = cfg.get_double("oracle.tol", 1e-4);
  cfg.finish();

  struct Case {
    const char* label;
    StatePrep light, spin;
    CouplingType type;
    int sign;
  };
  const auto coh = [](double re, double im) {
    StatePrep p;
    p.kind = StatePrep::Kind::Coherent;
    p.alpha = {re, im};
    return p;
  };
  const auto sqz = [](double r) {
    StatePrep p;
    p.kind = StatePrep::Kind::Squeezed;
    p.r = r;
    return p;
  };
  const std::vector<Case> cases = {
      {"coh(0.3)/coh(0.2-0.3i)/Z+", coh(0.3, 0.0), coh(0.2, -0.3), CouplingType::Z, +1},
      {"coh(0.5i)/coh(-0.4)/Y+", coh(0.0, 0.5), coh(-0.4, 0.0), CouplingType::Y, +1},
      {"coh(-0.6+0.4i)/coh(0.5i)/Z-", coh(-0.6, 0.4), coh(0.0, 0.5), CouplingType::Z, -1},
      {"sqz(0.5)/coh(0.3)/Z+", sqz(0.5), coh(0.3, 0.0), CouplingType::Z, +1},
      {"coh(1)/sqz(0.3)/Y-", coh(1.0, 0.0), sqz(0.3), CouplingType::Y, -1},
  };

  const auto& layout = light_spin_layout();
  ordered_json report;
  report["dim"] = dim;
  report["kappa"] = kappa;
  report["tol"] = tol;
  report["cases"] = ordered_json::array();
  double worst = 0.0;

  const auto fock_prep = [&](const StatePrep& p) {
    if (p.kind == StatePrep::Kind::Squeezed) return fock::squeezed_vacuum_fock(dim, p.r);
    return fock::coherent_fock(dim, p.alpha);
  };

  for (const auto& c : cases) {
    GaussianState state = vacuum_state(layout);
    prepare_mode(state, modes::kLight, c.light);
    prepare_mode(state, modes::kSpin, c.spin);
    state = apply_map(state, fr_pass(layout, {c.type, c.sign, kappa},
                                     modes::kLight, modes::kSpin));

    fock::TruncatedFockState oracle = fock::product(fock_prep(c.light), fock_prep(c.spin));
    fock::apply_gate(oracle, c.type, kappa, c.sign);
    const fock::QuadratureMoments m = fock::quadrature_moments(oracle);

    const double mean_diff = (state.mean - m.mean).cwiseAbs().maxCoeff();
    const double cov_diff = (state.cov - m.cov).cwiseAbs().maxCoeff();
    worst = std::max({worst, mean_diff, cov_diff});
    ordered_json entry;
    entry["label"] = c.label;
    entry["max_mean_diff"] = mean_diff;
    entry["max_cov_diff"] = cov_diff;
    report["cases"].push_back(entry);
  }
  report["max_diff"] = worst;
  report["pass"] = worst <= tol;
  write_json(ctx.out_dir / "oracle_check.json", report);

  if (worst > tol)
    throw invariant_error("oracle-check: max moment difference " + fmt(worst) +
                          " exceeds tolerance " + fmt(tol));
  return {{"oracle_check.json"}, "oracle-check: max diff " + fmt(worst)};
}

RunResult run_folded_search(Config& cfg, const RunContext& ctx) {
  const std::string target_name = cfg.get_string("search.target", "swap");
  SymplecticMap target;
  std::string default_layout;
  if (target_name == "swap") {
    target = three_pass_swap_map(1.0);
    default_layout = "fig1b";
  } else if (target_name == "transducer") {
    target = two_pass_transducer_map(1.0);
    default_layout = "fig2b";
  } else {
    throw config_error(cfg.origin() + ": search.target must be swap|transducer");
  }
  const std::string layout = cfg.get_string("search.layout", default_layout);
  const bool stokes = cfg.get_bool("search.stokes", false);
  cfg.finish();

  SearchTemplate tmpl;
  if (layout == "fig1b") {
    tmpl = fig1b_template(stokes);
  } else if (layout == "fig2b") {
    tmpl = fig2b_template(stokes);
  } else if (layout == "unfolded_zyz") {
    tmpl = unfolded_zyz_template();
  } else {
    throw config_error(cfg.origin() + ": search.layout must be fig1b|fig2b|unfolded_zyz");
  }

  const SearchResult result = folded_scheme_search(target, tmpl);

  ordered_json j;
  j["target"] = target_name;
  j["layout"] = layout;
  j["with_stokes"] = stokes;
  j["space_size"] = result.space_size;
  j["found"] = result.found;
  j["matches"] = ordered_json::array();
  for (const auto& match : result.matches) j["matches"].push_back(match.labels());
  write_json(ctx.out_dir / "search.json", j);
  return {{"search.json"},
          "folded-search: " + std::to_string(result.matches.size()) + " of " +
              std::to_string(result.space_size) + " assignments match"};
}

}  // namespace

RunResult run_subcommand(const std::string& subcommand, Config& cfg) {
  RunContext ctx = read_run(cfg);
  RunResult result;
  if (subcommand == "scheme") {
    result = run_scheme(cfg, ctx);
  } else if (subcommand == "tomography") {
    result = run_tomography(cfg, ctx);
  } else if (subcommand == "husimi") {
    result = run_husimi(cfg, ctx);
  } else if (subcommand == "benchmark") {
    result = run_benchmark_cmd(cfg, ctx);
  } else if (subcommand == "oracle-check") {
    result = run_oracle_check(cfg, ctx);
  } else if (subcommand == "folded-search") {
    result = run_folded_search(cfg, ctx);
  } else {
    throw config_error("unknown subcommand '" + subcommand + "'");
  }
  write_manifest(ctx, cfg, subcommand, result.artifacts);
  return result;
}

}  // namespace spintomo
