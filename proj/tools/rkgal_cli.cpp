// Command-line driver for seeded, reproducible reconstruction experiments:
// single runs, quasi-optimality and stability tables, figure-style data
// grids, and admissibility/stability diagnostics.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rkgal/experiments.hpp"

namespace fs = std::filesystem;
using namespace rkgal;

namespace {

struct CliOptions {
  std::vector<std::string> generators;
  std::string testgen = "indicator";
  std::vector<int> laws;
  std::vector<int> Ls;
  int Ltilde = -1;
  std::vector<std::string> samplings;
  std::string shift_mode;
  double shift_bound = 0.2;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;
  double tol = 1e-10;
  std::string out = ".";
  double gap_lo = 0.9;
  double gap_hi = 1.1;
  double jitter = 0.1;
  double ctem_grid_step = 1e-3;
  double ctem_root_tol = 1e-10;
  int pad = 10;
  int signal_pad = 20;
  std::string signal_path;
  bool iterate = false;
  double iter_tol = 1e-12;
  int max_iter = 10000;
};

void add_common_options(CLI::App* cmd, CliOptions& opt, bool lists) {
  cmd->add_option("--generator", opt.generators,
                  "generator kind(s): sinc, gauss, spline")
      ->delimiter(',');
  cmd->add_option("--testgen", opt.testgen, "test generator: indicator");
  cmd->add_option("--law", opt.laws, "signal law(s) in 0..3")->delimiter(',');
  cmd->add_option("--L", opt.Ls, lists ? "trial half-width list"
                                       : "trial half-width")
      ->delimiter(',');
  cmd->add_option("--Ltilde", opt.Ltilde,
                  "test half-width (sub-Galerkin least squares when > L)");
  cmd->add_option("--sampling", opt.samplings,
                  "sampling kind(s): nonuniform, jittered, ctem")
      ->delimiter(',');
  cmd->add_option("--shift-mode", opt.shift_mode,
                  "family shift mode override: zero or random");
  cmd->add_option("--shift-bound", opt.shift_bound,
                  "uniform shift bound in (0, 1/2]");
  cmd->add_option("--seed", opt.seed, "base seed");
  cmd->add_option("--seeds", opt.seeds, "seed list (overrides --seed)")
      ->delimiter(',');
  cmd->add_option("--tol", opt.tol, "quadrature tolerance");
  cmd->add_option("--out", opt.out, "output directory");
  cmd->add_option("--gap-lo", opt.gap_lo, "nonuniform gap lower bound");
  cmd->add_option("--gap-hi", opt.gap_hi, "nonuniform gap upper bound");
  cmd->add_option("--jitter", opt.jitter, "jitter half-width (< 1/2)");
  cmd->add_option("--ctem-grid-step", opt.ctem_grid_step,
                  "C-TEM scan grid step");
  cmd->add_option("--ctem-root-tol", opt.ctem_root_tol,
                  "C-TEM bisection tolerance");
  cmd->add_option("--pad", opt.pad, "truncated-kernel padding M");
  cmd->add_option("--signal-pad", opt.signal_pad,
                  "reference-signal window padding");
}

ProtocolConfig to_config(const CliOptions& opt, GeneratorKind gen, int law,
                         int L, SamplingKind sampling, std::uint64_t seed) {
  if (opt.testgen != "indicator")
    throw ParseError("test generator must be 'indicator'");
  ProtocolConfig cfg;
  cfg.generator = gen;
  cfg.law = law;
  cfg.L = L;
  cfg.sampling = sampling;
  cfg.seed = seed;
  cfg.test_halfwidth = opt.Ltilde;
  cfg.signal_pad = opt.signal_pad;
  cfg.kernel_pad = opt.pad;
  cfg.shift_bound = opt.shift_bound;
  cfg.gap_range = {opt.gap_lo, opt.gap_hi};
  cfg.jitter = opt.jitter;
  cfg.ctem_grid_step = opt.ctem_grid_step;
  cfg.ctem_root_tol = opt.ctem_root_tol;
  cfg.quad.abs_tol = opt.tol;
  cfg.quad.rel_tol = opt.tol;
  return cfg;
}

int effective_law(const CliOptions& opt, int law) {
  if (opt.shift_mode.empty()) return law;
  if (opt.shift_mode == "zero") return law % 2;
  if (opt.shift_mode == "random") return 2 + law % 2;
  throw ParseError("shift mode must be 'zero' or 'random'");
}

std::vector<std::uint64_t> seed_list(const CliOptions& opt) {
  if (!opt.seeds.empty()) return opt.seeds;
  return {opt.seed};
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open '" + path.string() + "' for writing");
  return os;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + v[i];
  return out;
}

template <typename T>
std::string join_values(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void write_config_comment(std::ostream& os, const std::string& command,
                          const CliOptions& opt,
                          const std::vector<std::string>& gens,
                          const std::vector<int>& laws,
                          const std::vector<int>& Ls,
                          const std::vector<std::string>& kinds) {
  os << "# rkgal " << command << " generator=" << join(gens)
     << " law=" << join_values(laws) << " L=" << join_values(Ls)
     << " sampling=" << join(kinds) << " seeds=" << join_values(seed_list(opt))
     << " Ltilde=" << opt.Ltilde << " shift-bound=" << format_g17(opt.shift_bound)
     << " gap=[" << format_g17(opt.gap_lo) << "," << format_g17(opt.gap_hi)
     << "] jitter=" << format_g17(opt.jitter) << " pad=" << opt.pad
     << " signal-pad=" << opt.signal_pad << " tol=" << format_g17(opt.tol)
     << "\n";
}

void write_grid(const fs::path& path, const std::string& comment,
                const Vector& ts, const Vector& values) {
  std::ofstream os = open_output(path);
  os << comment;
  os << "t,value\n";
  for (Eigen::Index k = 0; k < ts.size(); ++k)
    os << format_g17(ts(k)) << ',' << format_g17(values(k)) << "\n";
}

int cmd_reconstruct(const CliOptions& opt) {
  const GeneratorKind gen = generator_kind_from_string(
      opt.generators.empty() ? "sinc" : opt.generators.front());
  const int law = effective_law(opt, opt.laws.empty() ? 0 : opt.laws.front());
  const SamplingKind kind = sampling_kind_from_string(
      opt.samplings.empty() ? "nonuniform" : opt.samplings.front());
  const std::uint64_t seed = seed_list(opt).front();
  fs::create_directories(opt.out);

  int L = opt.Ls.empty() ? 30 : opt.Ls.front();
  ProtocolConfig cfg = to_config(opt, gen, law, L, kind, seed);

  ReconstructionRun run;
  if (!opt.signal_path.empty()) {
    // externally supplied reference signal; its family is the trial family
    const FriSignal x = load_signal(opt.signal_path);
    if (opt.Ls.empty() || L > x.family.window.halfwidth)
      L = x.family.window.halfwidth;
    cfg.L = L;
    run.trial = x.family;
    run.test = build_family(Generator::indicator(), ShiftMode::Zero,
                            std::max(L, cfg.lt()), 0);
    run.reference = x;
    const SamplingSet set = protocol_sampling_set(cfg, x);
    run.record = capture(x, set);
    run.system =
        assemble_system(run.trial, run.test, run.record, cfg.L, cfg.lt());
    const Vector coeffs = (cfg.lt() == cfg.L)
                              ? solve_galerkin(run.system)
                              : solve_subgalerkin_lsq(run.system);
    run.galerkin.family = run.trial;
    run.galerkin.coeff_window = IndexWindow{cfg.L};
    run.galerkin.coeffs = coeffs;
    const BestApproximation best =
        best_approximation(x, run.trial, cfg.L, cfg.quad);
    run.best.family = run.trial;
    run.best.coeff_window = IndexWindow{cfg.L};
    run.best.coeffs = best.coeffs;
    run.quality = quasi_optimality(x, run.best, run.galerkin, cfg.quad);
  } else {
    run = run_reconstruction(cfg);
  }

  save_signal((fs::path(opt.out) / "signal.txt").string(), run.reference);
  save_sampling_set((fs::path(opt.out) / "sampling.txt").string(),
                    run.record.set);
  save_signal((fs::path(opt.out) / "solution.txt").string(), run.galerkin);
  {
    std::ofstream os = open_output(fs::path(opt.out) / "metrics.csv");
    write_config_comment(os, "reconstruct", opt, {to_string(gen)}, {law}, {L},
                         {to_string(kind)});
    os << "e,epsilon,ratio_bound\n";
    os << format_g17(run.quality.e) << ',' << format_g17(run.quality.epsilon)
       << ',' << format_g17(run.quality.ratio_bound) << "\n";
  }
  if (opt.iterate) {
    const ObliqueProjector projector =
        build_projector(run.trial, run.test, cfg.L, cfg.quad);
    const auto [coeffs, report] =
        iterate_ap(run.trial, run.test, run.record, cfg.L, projector,
                   opt.iter_tol, opt.max_iter);
    FriSignal iterative = run.galerkin;
    iterative.coeffs = coeffs;
    save_signal((fs::path(opt.out) / "solution_iterative.txt").string(),
                iterative);
    std::ofstream os = open_output(fs::path(opt.out) / "iteration.csv");
    os << "# converged=" << (report.converged ? 1 : 0)
       << " steps=" << report.steps
       << " certified_bound=" << format_g17(report.certified_bound)
       << " certified_bound_inf=" << format_g17(report.certified_bound_inf)
       << " contraction_estimate=" << format_g17(report.contraction_estimate)
       << " contractive=" << (report.contractive ? 1 : 0) << "\n";
    write_iteration_report(os, report);
  }
  std::cout << "wrote signal.txt sampling.txt solution.txt metrics.csv to "
            << opt.out << "\n";
  return 0;
}

int cmd_table1(const CliOptions& opt) {
  // default protocol cells; explicit flags replace them by a cross product
  std::vector<std::pair<std::string, int>> cells;
  if (opt.generators.empty() && opt.laws.empty()) {
    cells = {{"sinc", 0}, {"sinc", 1}, {"sinc", 2},
             {"sinc", 3}, {"gauss", 0}, {"spline", 0}};
  } else {
    const std::vector<std::string> gens =
        opt.generators.empty() ? std::vector<std::string>{"sinc", "gauss",
                                                          "spline"}
                               : opt.generators;
    const std::vector<int> laws =
        opt.laws.empty() ? std::vector<int>{0} : opt.laws;
    for (const auto& g : gens)
      for (int law : laws) cells.emplace_back(g, law);
  }
  const std::vector<int> Ls =
      opt.Ls.empty() ? std::vector<int>{10, 15, 20, 25, 30} : opt.Ls;
  const std::vector<std::string> kinds =
      opt.samplings.empty()
          ? std::vector<std::string>{"nonuniform", "jittered", "ctem"}
          : opt.samplings;

  std::vector<Table1Row> rows;
  for (const auto& [gen, law] : cells)
    for (const std::string& kind : kinds)
      for (int L : Ls)
        for (std::uint64_t seed : seed_list(opt))
          rows.push_back(run_table1_cell(
              to_config(opt, generator_kind_from_string(gen),
                        effective_law(opt, law), L,
                        sampling_kind_from_string(kind), seed)));
  std::stable_sort(rows.begin(), rows.end(), [](const Table1Row& a,
                                                const Table1Row& b) {
    return std::tie(a.generator, a.law, a.sampling, a.L, a.seed) <
           std::tie(b.generator, b.law, b.sampling, b.L, b.seed);
  });

  fs::create_directories(opt.out);
  std::ofstream os = open_output(fs::path(opt.out) / "table1.csv");
  std::vector<std::string> gen_names;
  std::vector<int> law_values;
  for (const auto& [g, l] : cells) {
    gen_names.push_back(g);
    law_values.push_back(l);
  }
  write_config_comment(os, "table1", opt, gen_names, law_values, Ls, kinds);
  os << "generator,law,sampling,L,seed,e,epsilon,ratio_bound,status\n";
  for (const Table1Row& r : rows)
    os << r.generator << ',' << r.law << ',' << r.sampling << ',' << r.L << ','
       << r.seed << ',' << format_g17(r.e) << ',' << format_g17(r.epsilon)
       << ',' << format_g17(r.ratio_bound) << ',' << r.status << "\n";
  std::cout << "wrote table1.csv (" << rows.size() << " rows) to " << opt.out
            << "\n";
  return 0;
}

int cmd_table2(const CliOptions& opt) {
  const std::vector<std::string> gens =
      opt.generators.empty()
          ? std::vector<std::string>{"sinc", "gauss", "spline"}
          : opt.generators;
  const std::vector<std::string> modes =
      opt.shift_mode.empty() ? std::vector<std::string>{"zero", "random"}
                             : std::vector<std::string>{opt.shift_mode};
  const std::vector<int> Ls =
      opt.Ls.empty() ? std::vector<int>{10, 15, 20, 25, 30} : opt.Ls;
  const std::vector<std::string> kinds =
      opt.samplings.empty()
          ? std::vector<std::string>{"nonuniform", "jittered"}
          : opt.samplings;

  std::vector<Table2Row> rows;
  for (const std::string& gen : gens)
    for (const std::string& mode : modes)
      for (const std::string& kind : kinds)
        for (int L : Ls)
          for (std::uint64_t seed : seed_list(opt)) {
            CliOptions cell = opt;
            cell.shift_mode.clear();
            rows.push_back(run_table2_cell(
                to_config(cell, generator_kind_from_string(gen), 0, L,
                          sampling_kind_from_string(kind), seed),
                mode == "zero" ? ShiftMode::Zero : ShiftMode::UniformRandom));
          }
  std::stable_sort(rows.begin(), rows.end(), [](const Table2Row& a,
                                                const Table2Row& b) {
    return std::tie(a.generator, a.shift_mode, a.sampling, a.L, a.seed) <
           std::tie(b.generator, b.shift_mode, b.sampling, b.L, b.seed);
  });

  fs::create_directories(opt.out);
  std::ofstream os = open_output(fs::path(opt.out) / "table2.csv");
  write_config_comment(os, "table2", opt, gens, {}, Ls, kinds);
  os << "generator,shift_mode,sampling,L,seed,cond,status\n";
  for (const Table2Row& r : rows)
    os << r.generator << ',' << r.shift_mode << ',' << r.sampling << ','
       << r.L << ',' << r.seed << ',' << format_g17(r.cond) << ',' << r.status
       << "\n";
  std::cout << "wrote table2.csv (" << rows.size() << " rows) to " << opt.out
            << "\n";
  return 0;
}

int cmd_figures(const CliOptions& opt) {
  const GeneratorKind gen = generator_kind_from_string(
      opt.generators.empty() ? "sinc" : opt.generators.front());
  const int law = effective_law(opt, opt.laws.empty() ? 0 : opt.laws.front());
  const int L = opt.Ls.empty() ? 30 : opt.Ls.front();
  const SamplingKind kind = sampling_kind_from_string(
      opt.samplings.empty() ? "nonuniform" : opt.samplings.front());
  const std::uint64_t seed = seed_list(opt).front();

  const FigureGrids grids =
      run_figures(to_config(opt, gen, law, L, kind, seed));
  fs::create_directories(opt.out);
  std::stringstream comment;
  write_config_comment(comment, "figures", opt, {to_string(gen)}, {law}, {L},
                       {to_string(kind)});
  write_grid(fs::path(opt.out) / "original_signal.csv", comment.str(),
             grids.ts, grids.original);
  write_grid(fs::path(opt.out) / "pre_difference.csv", comment.str(), grids.ts,
             grids.pre_difference);
  write_grid(fs::path(opt.out) / "galerkin_difference.csv", comment.str(),
             grids.ts, grids.galerkin_difference);
  write_grid(fs::path(opt.out) / "best_difference.csv", comment.str(),
             grids.ts, grids.best_difference);
  std::cout << "wrote 4 grid files to " << opt.out << "\n";
  return 0;
}

int cmd_diagnose(const CliOptions& opt) {
  const GeneratorKind gen = generator_kind_from_string(
      opt.generators.empty() ? "gauss" : opt.generators.front());
  const int law = effective_law(opt, opt.laws.empty() ? 0 : opt.laws.front());
  const int L = opt.Ls.empty() ? 10 : opt.Ls.front();
  const SamplingKind kind = sampling_kind_from_string(
      opt.samplings.empty() ? "nonuniform" : opt.samplings.front());
  const std::uint64_t seed = seed_list(opt).front();

  const std::vector<DiagnosticRow> rows =
      run_diagnose(to_config(opt, gen, law, L, kind, seed));
  fs::create_directories(opt.out);
  std::ofstream os = open_output(fs::path(opt.out) / "report.csv");
  write_config_comment(os, "diagnose", opt, {to_string(gen)}, {law}, {L},
                       {to_string(kind)});
  os << "name,value,flag\n";
  for (const DiagnosticRow& r : rows)
    os << r.name << ',' << format_g17(r.value) << ',' << r.flag << "\n";
  std::cout << "wrote report.csv to " << opt.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Galerkin reconstruction of finite-rate-of-innovation signals from "
      "nonuniform, jittered and crossing-TEM samples"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value file with one [subcommand] section; write it "
                 "before the subcommand name; explicit flags override");

  CliOptions opt;
  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "run one reconstruction cell");
  add_common_options(reconstruct, opt, false);
  reconstruct->add_option("--signal", opt.signal_path,
                          "read the reference signal from a file");
  reconstruct->add_flag("--iterate", opt.iterate,
                        "also solve by the approximation-projection iteration "
                        "and write iteration.csv");
  reconstruct->add_option("--iter-tol", opt.iter_tol,
                          "iteration increment tolerance");
  reconstruct->add_option("--max-iter", opt.max_iter,
                          "iteration step limit");
  CLI::App* table1 = app.add_subcommand(
      "table1", "quasi-optimality table (e, epsilon, ratio bound)");
  add_common_options(table1, opt, true);
  CLI::App* table2 =
      app.add_subcommand("table2", "stability table (condition numbers)");
  add_common_options(table2, opt, true);
  CLI::App* figures = app.add_subcommand(
      "figures", "signal / pre-reconstruction / Galerkin difference grids");
  add_common_options(figures, opt, false);
  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "admissibility and stability diagnostic report");
  add_common_options(diagnose, opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (reconstruct->parsed()) return cmd_reconstruct(opt);
    if (table1->parsed()) return cmd_table1(opt);
    if (table2->parsed()) return cmd_table2(opt);
    if (figures->parsed()) return cmd_figures(opt);
    if (diagnose->parsed()) return cmd_diagnose(opt);
  } catch (const Error& err) {
    std::cerr << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 1;
}
