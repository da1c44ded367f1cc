// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: experiment runs, presets, config validation and
// the shaped-error spectrum diagnostic.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdris/config_io.hpp"
#include "sdris/errors.hpp"
#include "sdris/link.hpp"
#include "sdris/precoder.hpp"
#include "sdris/presets.hpp"
#include "sdris/rng.hpp"
#include "sdris/sigma_delta.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

struct CommonOptions {
  std::string config_path;
  std::string preset_name;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string snr_spec;
  std::optional<int> threads;
  std::optional<int> early_stop;
};

void add_common_options(CLI::App& cmd, CommonOptions& o) {
  auto* config = cmd.add_option("--config", o.config_path, "Experiment config JSON file");
  auto* preset = cmd.add_option("--preset", o.preset_name, "Built-in preset (fig4, fig5, desk)");
  config->excludes(preset);
  cmd.add_option("--set", o.sets,
                 "Override a config key (dotted path), e.g. --set scenario.n_users=4")
      ->take_all();
  cmd.add_option("--seed", o.seed, "Master seed (overrides config)");
  cmd.add_option("--trials", o.trials, "Number of Monte-Carlo trials (overrides config)");
  cmd.add_option("--snr", o.snr_spec, "SNR grid lo:step:hi in dB (overrides config)");
  cmd.add_option("--threads", o.threads, "Worker threads, 0 = hardware (overrides config)");
  cmd.add_option("--early-stop-errors", o.early_stop,
                 "Stop a point once it has at least this many bit errors, 0 = off");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sdris::ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Precedence: defaults < config file / preset < --set overrides < flags.
sdris::ExperimentConfig resolve_config(const CommonOptions& o) {
  std::string text;
  if (!o.preset_name.empty())
    text = sdris::experiment_to_json_text(sdris::preset(o.preset_name));
  else if (!o.config_path.empty())
    text = slurp(o.config_path);
  else
    throw sdris::ConfigError("either --config or --preset is required");
  if (!o.sets.empty()) text = sdris::apply_overrides(text, o.sets);
  sdris::ExperimentConfig cfg = sdris::experiment_from_json_text(text);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.trials) cfg.n_trials = *o.trials;
  if (!o.snr_spec.empty()) cfg.snr_grid_db = sdris::parse_snr_range(o.snr_spec);
  if (o.threads) cfg.n_threads = *o.threads;
  if (o.early_stop) cfg.early_stop_errors = *o.early_stop;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << contents;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void print_config_banner(const sdris::ExperimentConfig& cfg) {
  const auto& s = cfg.scenario;
  std::cout << "scenario: N=" << s.n_elements << " d/lambda=" << s.spacing_over_wavelength
            << " arrival=" << s.arrival_angle_deg << " deg, K=" << s.n_users << " in ["
            << s.user_sector_lo_deg << ", " << s.user_sector_hi_deg << "] deg (sep >= "
            << s.min_separation_deg << " deg), gain r0=" << s.gain_r0 << " r1=["
            << s.gain_r1_lo << ", " << s.gain_r1_hi << "]\n";
  std::cout << "experiment: trials=" << cfg.n_trials << " T=" << cfg.block_len << " "
            << cfg.constellation_order << "-QAM, seed=" << cfg.master_seed
            << ", steer target=" << cfg.steer_target_or_default() << " deg, snr=[";
  for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i)
    std::cout << (i ? "," : "") << cfg.snr_grid_db[i];
  std::cout << "] dB\nschemes:";
  for (const auto& sch : cfg.schemes) {
    std::cout << " " << sch.id();
    if (sch.n_levels) std::cout << "(L=" << sch.n_levels << ")";
  }
  std::cout << "\n";
}

int cmd_run(const CommonOptions& o, const std::string& out_prefix) {
  const sdris::ExperimentConfig cfg = resolve_config(o);
  print_config_banner(cfg);
  const std::vector<sdris::BerCurve> curves = sdris::run_experiment(cfg);
  write_file(out_prefix + ".csv", sdris::curves_to_csv(curves, cfg));
  write_file(out_prefix + ".meta.json", sdris::experiment_to_json_text(cfg));
  std::cout << sdris::summarize(curves);
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".meta.json\n";
  return kExitOk;
}

int cmd_preset(const std::string& name, const std::string& out_path) {
  const std::string text = sdris::experiment_to_json_text(sdris::preset(name));
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  return kExitOk;
}

int cmd_validate(const CommonOptions& o) {
  const sdris::ExperimentConfig cfg = resolve_config(o);
  std::cout << "config OK: " << cfg.schemes.size() << " scheme(s), "
            << cfg.snr_grid_db.size() << " SNR point(s), " << cfg.n_trials << " trial(s)\n";
  return kExitOk;
}

struct SpectrumOptions {
  int runs = 100;
  int block_len = 50;
  int n_levels = 4;
  std::string grid_spec = "0:0.5:80";
  bool no_dither = false;
  std::optional<double> overload;
  std::string out_path;
};

/// Shaped-error power averaged over dithered sigma-delta ZF blocks on an
/// angle grid; the minimum sits at the steered target angle.
int cmd_spectrum(const CommonOptions& o, const SpectrumOptions& so) {
  sdris::ExperimentConfig cfg = resolve_config(o);
  const sdris::ArrayGeometry geometry = cfg.scenario.geometry();
  const double steer = sdris::steer_phase_for(cfg.steer_target_or_default(),
                                              cfg.scenario.arrival_angle_deg, geometry);
  const sdris::PhaseAlphabet alphabet = sdris::PhaseAlphabet::discrete(so.n_levels);
  const std::vector<double> grid = sdris::parse_snr_range(so.grid_spec);
  Eigen::VectorXd grid_deg(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid_deg(static_cast<Eigen::Index>(i)) = grid[i];

  const sdris::Constellation constellation = sdris::Constellation::qam(cfg.constellation_order);
  const sdris::ModulatorConfig mod = sdris::ModulatorConfig::with_alphabet(alphabet, steer);
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(grid_deg.size());
  std::uint64_t n_spectra = 0;

  for (int run = 0; run < so.runs; ++run) {
    sdris::Rng scene_rng(sdris::derive_seed(cfg.master_seed, sdris::StreamPurpose::kScene,
                                            static_cast<std::uint64_t>(run)));
    const sdris::Scene scene = sdris::draw_scene(cfg.scenario, scene_rng);
    sdris::Rng symbol_rng(sdris::derive_seed(cfg.master_seed, sdris::StreamPurpose::kSymbols,
                                             static_cast<std::uint64_t>(run)));
    const Eigen::MatrixXi indices = sdris::draw_symbol_indices(
        cfg.scenario.n_users, so.block_len, constellation, symbol_rng);
    const sdris::SymbolBlock block = sdris::symbols_from_indices(indices, constellation);

    sdris::SdZfOptions options;
    options.dither = !so.no_dither;
    options.rng_seed = sdris::derive_seed(cfg.master_seed, sdris::StreamPurpose::kDither,
                                          static_cast<std::uint64_t>(run));
    options.overload_amplitude = so.overload;
    options.keep_error_sequences = true;
    options.sigma_q_sq = cfg.sigma_q_sq;
    options.gain_form = cfg.gain_form;
    const sdris::PrecodeBlock pb =
        sdris::sigma_delta_zf_precode(scene, block, alphabet, steer, 0.0, options);

    sdris::ModulatorRun mr;
    for (Eigen::Index t = 0; t < pb.error_sequences->cols(); ++t) {
      mr.errors = pb.error_sequences->col(t);
      avg += sdris::shaped_error_spectrum(mr, mod, grid_deg, cfg.scenario.arrival_angle_deg,
                                          geometry);
      ++n_spectra;
    }
  }
  avg /= static_cast<double>(n_spectra);

  std::ostringstream csv;
  csv << "angle_deg,avg_shaped_error_power\n";
  char line[64];
  for (Eigen::Index i = 0; i < grid_deg.size(); ++i) {
    std::snprintf(line, sizeof(line), "%g,%.9e\n", grid_deg(i), avg(i));
    csv << line;
  }
  if (so.out_path.empty())
    std::cout << csv.str();
  else
    write_file(so.out_path, csv.str());

  Eigen::Index min_at = 0;
  avg.minCoeff(&min_at);
  std::cerr << "spectrum minimum at " << grid_deg(min_at) << " deg (steer target "
            << cfg.steer_target_or_default() << " deg), " << n_spectra
            << " spectra averaged\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial sigma-delta precoding simulator for RIS downlinks"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string run_out = "results";
  CLI::App* run = app.add_subcommand("run", "Run an experiment and write CSV + metadata");
  add_common_options(*run, run_opts);
  run->add_option("--out", run_out, "Output prefix for <prefix>.csv and <prefix>.meta.json");

  std::string preset_name;
  std::string preset_out;
  CLI::App* preset_cmd = app.add_subcommand("preset", "Print a built-in preset config as JSON");
  preset_cmd->add_option("name", preset_name, "Preset name (fig4, fig5, desk)")->required();
  preset_cmd->add_option("--out", preset_out, "Write to file instead of stdout");

  CommonOptions validate_opts;
  CLI::App* validate = app.add_subcommand("validate", "Validate a config and exit");
  add_common_options(*validate, validate_opts);

  CommonOptions spectrum_opts;
  SpectrumOptions spectrum_extra;
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "Emit the averaged shaped-error spectrum as CSV");
  add_common_options(*spectrum, spectrum_opts);
  spectrum->add_option("--runs", spectrum_extra.runs, "Number of precoded blocks to average");
  spectrum->add_option("--spectrum-block-len", spectrum_extra.block_len,
                       "Slots per block for the spectrum average");
  spectrum->add_option("--levels", spectrum_extra.n_levels, "Alphabet size L");
  spectrum->add_option("--grid", spectrum_extra.grid_spec, "Angle grid lo:step:hi in degrees");
  spectrum->add_flag("--no-dither", spectrum_extra.no_dither, "Disable the dither signal");
  spectrum->add_option("--overload", spectrum_extra.overload, "Overload amplitude");
  spectrum->add_option("--out", spectrum_extra.out_path, "Write CSV to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts, run_out);
    if (preset_cmd->parsed()) return cmd_preset(preset_name, preset_out);
    if (validate->parsed()) return cmd_validate(validate_opts);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_opts, spectrum_extra);
  } catch (const sdris::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
