// resokit command-line front end.
//
// Subcommands:
//   resonances  dump a ball resonance set as JSON (cached on disk)
//   scatdet     scattering determinant on a real-lambda grid (CSV)
//   pipeline    resonances -> heat samples -> invariants -> identification
//   wave        smoothed wave-trace scan (CSV)
//
// Exit codes: 0 success, 2 invalid flags, 3 solver/library failure,
// 4 missing calibration constants (pipeline only).
//
// Determinism contract: identical flags and library version produce
// byte-identical outputs; numeric fields are printed with 17 significant
// digits. Cache directory resolution: --cache-dir flag, then RESOKIT_CACHE_DIR,
// then $XDG_CACHE_HOME/resokit, $HOME/.cache/resokit, ./.resokit-cache.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "resokit/cache.hpp"
#include "resokit/errors.hpp"
#include "resokit/heat_trace.hpp"
#include "resokit/rigidity.hpp"
#include "resokit/scattering.hpp"
#include "resokit/version.hpp"
#include "resokit/wave_trace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using resokit::radial::BoundaryCondition;

namespace {

// Distinct from resokit::Error so the dispatcher can map it to exit code 4.
struct MissingCalibration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::map<std::string, BoundaryCondition>& bc_names() {
  static const std::map<std::string, BoundaryCondition> names{
      {"neumann", BoundaryCondition::Neumann},
      {"dirichlet", BoundaryCondition::Dirichlet},
  };
  return names;
}

struct ResonanceArgs {
  int d = 3;
  double rho = 1.0;
  int lmax = 60;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  std::string cache_dir;
  bool no_cache = false;
};

void add_resonance_flags(CLI::App* cmd, ResonanceArgs& args) {
  cmd->add_option("--d", args.d, "odd space dimension >= 3")
      ->capture_default_str();
  cmd->add_option("--rho", args.rho, "ball radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--lmax", args.lmax, "largest angular mode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--bc", args.bc, "boundary condition (neumann|dirichlet)")
      ->transform(CLI::CheckedTransformer(bc_names(), CLI::ignore_case));
  cmd->add_option("--cache-dir", args.cache_dir,
                  "resonance cache directory (default: RESOKIT_CACHE_DIR or "
                  "the user cache directory)");
  cmd->add_flag("--no-cache", args.no_cache,
                "recompute without reading or writing the cache");
}

resokit::cache::CacheKey key_of(const ResonanceArgs& args) {
  return {args.d, args.rho, args.bc, args.lmax};
}

resokit::radial::ResonanceSet obtain_resonances(const ResonanceArgs& args) {
  if (args.no_cache) {
    return resokit::radial::ball_resonances(args.d, args.rho, args.lmax, args.bc);
  }
  const fs::path dir = args.cache_dir.empty() ? resokit::cache::default_cache_dir()
                                              : fs::path(args.cache_dir);
  return resokit::cache::cached_ball_resonances(dir, key_of(args));
}

// path empty or "-" means stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw resokit::Error("cannot open output file: " + path);
  out << text;
  if (!out) throw resokit::Error("failed writing output file: " + path);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    grid.push_back(lo);
    return grid;
  }
  for (int i = 0; i < n; ++i) {
    grid.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return grid;
}

// ---- resonances -------------------------------------------------------------

struct ResonancesCmd {
  ResonanceArgs res;
  std::string out;
};

int run_resonances(const ResonancesCmd& cmd) {
  const resokit::radial::ResonanceSet set = obtain_resonances(cmd.res);
  write_text(cmd.out, resokit::cache::serialize_resonances(key_of(cmd.res), set));
  return 0;
}

// ---- scatdet ----------------------------------------------------------------

struct ScatdetCmd {
  ResonanceArgs res;
  std::string mode = "direct";
  double lambda_min = 0.1;
  double lambda_max = 3.0;
  int n = 32;
  std::string out;
};

int run_scatdet(const ScatdetCmd& cmd) {
  const bool want_direct = cmd.mode == "direct" || cmd.mode == "both";
  const bool want_product = cmd.mode == "product" || cmd.mode == "both";
  const auto direct = [&](double lambda) {
    return resokit::scattering::det_S_direct(cmd.res.d, cmd.res.rho, lambda,
                                             cmd.res.lmax, cmd.res.bc);
  };

  resokit::scattering::CanonicalProductParams params;
  if (want_product) {
    params.genus = cmd.res.d;
    params.resonances = obtain_resonances(cmd.res);
    // The canonical product carries one undetermined real constant; fit it
    // against the mode-sum determinant on a dense internal grid.
    const std::vector<double> fit_grid =
        linspace(std::max(0.05, cmd.lambda_min), std::max(cmd.lambda_max, 0.1),
                 std::max(64, 2 * cmd.n));
    params.c = resokit::scattering::fit_constant_c(params.resonances, direct,
                                                   fit_grid);
  }

  std::ostringstream csv;
  csv << "lambda";
  if (want_direct) csv << ",direct_abs,direct_arg";
  if (want_product) csv << ",product_abs,product_arg";
  csv << "\n";

  double max_rel_err = 0.0;
  for (const double lambda : linspace(cmd.lambda_min, cmd.lambda_max, cmd.n)) {
    csv << fmt17(lambda);
    std::complex<double> sd, sp;
    if (want_direct) {
      sd = direct(lambda);
      csv << ',' << fmt17(std::abs(sd)) << ',' << fmt17(std::arg(sd));
    }
    if (want_product) {
      sp = resokit::scattering::det_S_product(params, lambda);
      csv << ',' << fmt17(std::abs(sp)) << ',' << fmt17(std::arg(sp));
    }
    if (want_direct && want_product) {
      max_rel_err = std::max(max_rel_err, std::abs(sp / sd - 1.0));
    }
    csv << "\n";
  }
  if (cmd.mode == "both") {
    csv << "# c = " << fmt17(params.c) << " max_rel_err = " << fmt17(max_rel_err)
        << "\n";
  } else if (want_product) {
    csv << "# c = " << fmt17(params.c) << "\n";
  }
  write_text(cmd.out, csv.str());
  return 0;
}

// ---- pipeline ---------------------------------------------------------------

struct PipelineCmd {
  ResonanceArgs res;
  std::string out_dir;
  double tmin = 0.0;  // absolute times; 0 = keep the calibration's factors
  double tmax = 0.0;
  int nt = 0;
  bool calibrate = false;
  std::string calibration_file;
  double calibration_rho = 1.0;
  int calibration_lmax = 60;
  std::vector<double> invariants;  // direct-identification mode when size 3
};

json calibration_to_json(const resokit::heat::CalibrationConstants& cal) {
  json j;
  j["schema"] = "resokit-calibration-v1";
  j["version"] = resokit::kVersion;
  j["d"] = cal.d;
  j["alpha1"] = cal.alpha1;
  j["alpha2"] = cal.alpha2;
  j["alpha3"] = cal.alpha3;
  j["rho_cal"] = cal.rho_cal;
  j["t_min_factor"] = cal.t_min_factor;
  j["t_max_factor"] = cal.t_max_factor;
  j["nt"] = cal.nt;
  j["n_max"] = cal.n_max;
  j["l_max"] = cal.l_max;
  j["quad_order"] = cal.quad_order;
  return j;
}

std::optional<resokit::heat::CalibrationConstants> load_calibration(
    const std::string& path, int d) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception&) {
    return std::nullopt;
  }
  if (j.value("schema", "") != "resokit-calibration-v1") return std::nullopt;
  if (!j.contains("d") || j["d"].get<int>() != d) return std::nullopt;
  try {
    resokit::heat::CalibrationConstants cal;
    cal.d = d;
    cal.alpha1 = j.at("alpha1").get<double>();
    cal.alpha2 = j.at("alpha2").get<double>();
    cal.alpha3 = j.at("alpha3").get<double>();
    cal.rho_cal = j.at("rho_cal").get<double>();
    cal.t_min_factor = j.at("t_min_factor").get<double>();
    cal.t_max_factor = j.at("t_max_factor").get<double>();
    cal.nt = j.at("nt").get<int>();
    cal.n_max = j.at("n_max").get<int>();
    cal.l_max = j.at("l_max").get<int>();
    cal.quad_order = j.at("quad_order").get<int>();
    return cal;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

std::string verdict_summary(const resokit::rigidity::RigidityVerdict& verdict,
                            const resokit::rigidity::RigidityTolerances& tol) {
  std::ostringstream line;
  if (verdict.is_ball_union) {
    char rho[32];
    std::snprintf(rho, sizeof rho, "%.2f", verdict.rho);
    line << "union_of_equal_balls: true, m=" << verdict.m << ", rho=" << rho
         << "±" << tol.integer_tolerance;
  } else {
    line << "union_of_equal_balls: false (" << verdict.reason << ")";
  }
  return line.str();
}

json verdict_to_json(const resokit::rigidity::RigidityVerdict& verdict,
                     const resokit::geometry::BoundaryInvariants& inv) {
  json j;
  j["schema"] = "resokit-identify-v1";
  j["version"] = resokit::kVersion;
  j["is_ball_union"] = verdict.is_ball_union;
  j["m"] = verdict.m;
  j["m_estimate"] = verdict.m_estimate;
  j["rho"] = verdict.rho;
  j["cs_defect"] = verdict.cs_defect;
  j["reason"] = verdict.reason;
  j["invariants"] = {{"A1", inv.A1}, {"A2", inv.A2}, {"A3", inv.A3}, {"d", inv.d}};
  return j;
}

void write_json_file(const fs::path& path, const json& j) {
  write_text(path.string(), j.dump(2) + "\n");
}

int run_pipeline(const PipelineCmd& cmd) {
  const auto tolerances = resokit::rigidity::pipeline_tolerances();

  if (!cmd.invariants.empty()) {
    // Direct identification from user-supplied invariants; no solver stages.
    resokit::geometry::BoundaryInvariants inv;
    inv.A1 = cmd.invariants[0];
    inv.A2 = cmd.invariants[1];
    inv.A3 = cmd.invariants[2];
    inv.d = cmd.res.d;
    const auto verdict = resokit::rigidity::decide_ball_union(inv, tolerances);
    std::cout << verdict_summary(verdict, tolerances) << "\n";
    if (!cmd.out_dir.empty()) {
      fs::create_directories(cmd.out_dir);
      write_json_file(fs::path(cmd.out_dir) / "identify.json",
                      verdict_to_json(verdict, inv));
    }
    return 0;
  }

  if (cmd.out_dir.empty()) {
    std::cerr << "pipeline: --out-dir is required (or pass --invariants for "
                 "direct identification)\n";
    return 2;
  }
  fs::create_directories(cmd.out_dir);
  const fs::path out_dir(cmd.out_dir);

  // Stage 1: calibration constants (resolved first so a missing table fails
  // fast, before any solver stage runs).
  resokit::heat::CalibrationConstants cal;
  const std::string cal_path = cmd.calibration_file.empty()
                                   ? (out_dir / "calibration.json").string()
                                   : cmd.calibration_file;
  if (cmd.calibrate) {
    resokit::heat::CalibrationOptions options;
    options.rho_cal = cmd.calibration_rho;
    options.l_max = cmd.calibration_lmax;
    cal = resokit::heat::calibrate_alphas(cmd.res.d, options);
    write_json_file(cal_path, calibration_to_json(cal));
    std::cout << "calibration: alpha1=" << fmt17(cal.alpha1)
              << " alpha2=" << fmt17(cal.alpha2)
              << " alpha3=" << fmt17(cal.alpha3) << " (rho_cal="
              << fmt17(cal.rho_cal) << ", saved to " << cal_path << ")\n";
  } else {
    const auto loaded = load_calibration(cal_path, cmd.res.d);
    if (!loaded) {
      throw MissingCalibration(
          "pipeline: no calibration constants for d=" + std::to_string(cmd.res.d) +
          " at " + cal_path + "; rerun with --calibrate (optionally "
          "--calibration-rho R) or point --calibration at a saved table");
    }
    cal = *loaded;
    std::cout << "calibration: loaded " << cal_path << "\n";
  }

  // Optional heat-grid override (absolute times -> radius-free factors).
  if (cmd.nt > 0) cal.nt = cmd.nt;
  const double rho2 = cmd.res.rho * cmd.res.rho;
  if (cmd.tmin > 0.0) cal.t_min_factor = cmd.tmin / rho2;
  if (cmd.tmax > 0.0) cal.t_max_factor = cmd.tmax / rho2;

  // Stage 2: resonances (cached).
  const resokit::radial::ResonanceSet set = obtain_resonances(cmd.res);
  write_text((out_dir / "resonances.json").string(),
             resokit::cache::serialize_resonances(key_of(cmd.res), set));
  std::cout << "resonances: " << set.entries.size()
            << " distinct, total multiplicity " << set.total_multiplicity()
            << "\n";

  // Stage 3: heat samples and coefficient fit.
  const auto samples = resokit::heat::heat_samples_from_resonances(set, cal);
  std::ostringstream csv;
  csv << "t,trace\n";
  for (std::size_t i = 0; i < samples.t.size(); ++i) {
    csv << fmt17(samples.t[i]) << ',' << fmt17(samples.value[i]) << "\n";
  }
  write_text((out_dir / "heat_samples.csv").string(), csv.str());

  const auto coeffs =
      resokit::heat::fit_heat_coefficients(samples, cmd.res.d, cal.n_max);
  json jc;
  jc["schema"] = "resokit-heat-coefficients-v1";
  jc["version"] = resokit::kVersion;
  jc["d"] = coeffs.d;
  jc["a"] = coeffs.a;
  jc["residual_rms"] = coeffs.residual_rms;
  jc["a0_c_entangled"] = coeffs.a0_c_entangled;
  write_json_file(out_dir / "coefficients.json", jc);
  std::cout << "heat fit: " << samples.t.size() << " samples in ["
            << fmt17(samples.t.front()) << ", " << fmt17(samples.t.back())
            << "], residual_rms=" << fmt17(coeffs.residual_rms) << "\n";

  // Stage 4: invariants and identification.
  const auto inv = resokit::heat::invariants_from_resonances(set, cal);
  json ji;
  ji["schema"] = "resokit-invariants-v1";
  ji["version"] = resokit::kVersion;
  ji["d"] = inv.d;
  ji["A1"] = inv.A1;
  ji["A2"] = inv.A2;
  ji["A3"] = inv.A3;
  ji["calibration"] = calibration_to_json(cal);
  write_json_file(out_dir / "invariants.json", ji);
  std::cout << "invariants: A1=" << fmt17(inv.A1) << " A2=" << fmt17(inv.A2)
            << " A3=" << fmt17(inv.A3) << "\n";

  const auto verdict = resokit::rigidity::decide_ball_union(inv, tolerances);
  write_json_file(out_dir / "identify.json", verdict_to_json(verdict, inv));
  std::cout << verdict_summary(verdict, tolerances) << "\n";
  return 0;
}

// ---- wave -------------------------------------------------------------------

struct WaveCmd {
  ResonanceArgs res;
  double tmin = 0.01;
  double tmax = 4.0;
  int nt = 64;
  std::vector<double> eps;
  double imag_cut = 6.0;
  std::string out;
};

int run_wave(const WaveCmd& cmd) {
  const resokit::radial::ResonanceSet set = obtain_resonances(cmd.res);
  resokit::wave::WaveScanConfig config;
  config.t_min = cmd.tmin;
  config.t_max = cmd.tmax;
  config.nt = cmd.nt;
  config.imag_cut = cmd.imag_cut;
  if (!cmd.eps.empty()) config.eps = cmd.eps;
  const auto result = resokit::wave::scan_wave_trace(set, config);

  std::ostringstream csv;
  csv << "t,exponent";
  for (const double e : result.eps) csv << ",abs_u_eps_" << fmt17(e);
  csv << "\n";
  for (const auto& point : result.points) {
    csv << fmt17(point.t) << ',' << fmt17(point.exponent);
    for (const double mag : point.magnitude) csv << ',' << fmt17(mag);
    csv << "\n";
  }
  write_text(cmd.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resokit: resonances, scattering determinants, heat invariants, "
               "and ball-union identification for exterior Laplacians"};
  app.set_version_flag("--version", std::string(resokit::kVersion));
  app.require_subcommand(1);

  ResonancesCmd resonances_cmd;
  CLI::App* resonances = app.add_subcommand(
      "resonances", "compute (or fetch from cache) a ball resonance set");
  add_resonance_flags(resonances, resonances_cmd.res);
  resonances->add_option("--out", resonances_cmd.out,
                         "output JSON path ('-' or absent: stdout)");

  ScatdetCmd scatdet_cmd;
  CLI::App* scatdet = app.add_subcommand(
      "scatdet", "scattering determinant on a real-lambda grid");
  add_resonance_flags(scatdet, scatdet_cmd.res);
  scatdet->add_option("--mode", scatdet_cmd.mode, "direct|product|both")
      ->check(CLI::IsMember({"direct", "product", "both"}))
      ->capture_default_str();
  scatdet->add_option("--lambda-min", scatdet_cmd.lambda_min, "grid start")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scatdet->add_option("--lambda-max", scatdet_cmd.lambda_max, "grid end")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scatdet->add_option("--n", scatdet_cmd.n, "number of grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scatdet->add_option("--out", scatdet_cmd.out,
                      "output CSV path ('-' or absent: stdout)");

  PipelineCmd pipeline_cmd;
  CLI::App* pipeline = app.add_subcommand(
      "pipeline", "resonances -> heat trace -> invariants -> identification");
  add_resonance_flags(pipeline, pipeline_cmd.res);
  pipeline->add_option("--out-dir", pipeline_cmd.out_dir,
                       "directory for stage outputs (required unless "
                       "--invariants is given)");
  pipeline->add_option("--tmin", pipeline_cmd.tmin, "smallest heat time")
      ->check(CLI::PositiveNumber);
  pipeline->add_option("--tmax", pipeline_cmd.tmax, "largest heat time")
      ->check(CLI::PositiveNumber);
  pipeline->add_option("--nt", pipeline_cmd.nt, "number of heat samples")
      ->check(CLI::PositiveNumber);
  pipeline->add_flag("--calibrate", pipeline_cmd.calibrate,
                     "compute calibration constants before running");
  pipeline->add_option("--calibration", pipeline_cmd.calibration_file,
                       "calibration JSON path (default <out-dir>/calibration.json)");
  pipeline->add_option("--calibration-rho", pipeline_cmd.calibration_rho,
                       "radius of the calibration ball (with --calibrate)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline->add_option("--calibration-lmax", pipeline_cmd.calibration_lmax,
                       "mode cutoff of the calibration run (with --calibrate)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  pipeline->add_option("--invariants", pipeline_cmd.invariants,
                       "identify directly from A1,A2,A3 (skips all solver stages)")
      ->delimiter(',')
      ->expected(3);

  WaveCmd wave_cmd;
  CLI::App* wave = app.add_subcommand(
      "wave", "smoothed wave-trace scan over a time grid");
  add_resonance_flags(wave, wave_cmd.res);
  wave->add_option("--tmin", wave_cmd.tmin, "scan start time")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  wave->add_option("--tmax", wave_cmd.tmax, "scan end time")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  wave->add_option("--nt", wave_cmd.nt, "number of scan times")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  wave->add_option("--eps", wave_cmd.eps,
                   "comma-separated smoothing widths (two or more)")
      ->delimiter(',');
  wave->add_option("--imag-cut", wave_cmd.imag_cut,
                   "drop resonances deeper than this below the real axis")
      ->capture_default_str();
  wave->add_option("--out", wave_cmd.out,
                   "output CSV path ('-' or absent: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (resonances->parsed()) return run_resonances(resonances_cmd);
    if (scatdet->parsed()) return run_scatdet(scatdet_cmd);
    if (pipeline->parsed()) return run_pipeline(pipeline_cmd);
    if (wave->parsed()) return run_wave(wave_cmd);
  } catch (const MissingCalibration& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const resokit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
