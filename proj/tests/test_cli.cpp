// End-to-end checks of the command-line driver: exit codes, error names on
// stderr, output files, and byte-identical reruns. Runs the real binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "rkgal/family.hpp"
#include "rkgal/io.hpp"

namespace fs = std::filesystem;

namespace {

int checks = 0, failures = 0;

void expect(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    ++failures;
    std::cerr << "FAILED: " << what << "\n";
  }
}

struct RunResult {
  int exit_code = -1;
  std::string stderr_text;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd =
      std::string(RKGAL_CLI_PATH) + " " + args + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(err);
  std::stringstream ss;
  ss << is.rdbuf();
  result.stderr_text = ss.str();
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "rkgal_cli_tests";
  fs::remove_all(work);
  fs::create_directories(work);

  {
    const fs::path out = work / "run";
    const RunResult r = run_cli(
        "reconstruct --generator sinc --law 0 --L 20 --sampling nonuniform "
        "--seed 7 --out " + out.string(), work);
    expect(r.exit_code == 0, "reconstruct exits 0");
    for (const char* name :
         {"signal.txt", "sampling.txt", "solution.txt", "metrics.csv"})
      expect(fs::exists(out / name), std::string("reconstruct wrote ") + name);
    const rkgal::FriSignal sol =
        rkgal::load_signal((out / "solution.txt").string());
    expect(sol.coeff_window.halfwidth == 20, "solution has the requested L");
  }

  {
    const RunResult r =
        run_cli("reconstruct --sampling jittered --jitter 0.6 --L 10 --out " +
                    (work / "bad").string(), work);
    expect(r.exit_code == 2, "oversized jitter exits 2");
    expect(r.stderr_text.find("JitterTooLarge") != std::string::npos,
           "oversized jitter names JitterTooLarge on stderr");
  }

  {
    // a zero signal cannot drive the crossing sampler
    const rkgal::ShiftedFamily fam = rkgal::build_family(
        rkgal::Generator::sinc(), rkgal::ShiftMode::Zero, 10, 0);
    rkgal::save_signal((work / "zero.txt").string(),
                       rkgal::zero_signal(fam, 10));
    const RunResult r = run_cli(
        "reconstruct --signal " + (work / "zero.txt").string() +
            " --sampling ctem --out " + (work / "zerorun").string(), work);
    expect(r.exit_code == 2, "ctem on the zero signal exits 2");
    expect(r.stderr_text.find("ZeroSignal") != std::string::npos,
           "ctem on the zero signal names ZeroSignal on stderr");
  }

  {
    const std::string args =
        "table1 --generator sinc --law 0 --L 10 --sampling "
        "nonuniform,jittered --seeds 1,2 --out ";
    const RunResult a = run_cli(args + (work / "t1a").string(), work);
    const RunResult b = run_cli(args + (work / "t1b").string(), work);
    expect(a.exit_code == 0 && b.exit_code == 0, "table1 exits 0");
    const std::string ta = slurp(work / "t1a" / "table1.csv");
    expect(ta == slurp(work / "t1b" / "table1.csv"),
           "table1 outputs are byte-identical across reruns");
    expect(ta.rfind("# rkgal table1", 0) == 0,
           "table1 embeds the config comment");
    int rows = -2;  // header comment + column row
    for (char c : ta) rows += (c == '\n');
    expect(rows == 4, "table1 has one row per cell x seed");
  }

  {
    const RunResult r = run_cli(
        "table2 --generator gauss --L 10 --sampling jittered --seeds 1,2,3 "
        "--out " + (work / "t2").string(), work);
    expect(r.exit_code == 0, "table2 exits 0");
    const std::string t2 = slurp(work / "t2" / "table2.csv");
    expect(t2.find("generator,shift_mode,sampling,L,seed,cond,status") !=
               std::string::npos,
           "table2 has the documented column header");
    expect(t2.find("gauss,random,jittered,10,1,") != std::string::npos,
           "table2 contains shifted-mode rows");
  }

  {
    const RunResult r = run_cli(
        "figures --generator sinc --law 0 --L 10 --sampling jittered --seed 3 "
        "--out " + (work / "figs").string(), work);
    expect(r.exit_code == 0, "figures exits 0");
    for (const char* name : {"original_signal.csv", "pre_difference.csv",
                             "galerkin_difference.csv", "best_difference.csv"})
      expect(fs::exists(work / "figs" / name),
             std::string("figures wrote ") + name);
    const std::string grid = slurp(work / "figs" / "original_signal.csv");
    expect(grid.find("t,value") != std::string::npos,
           "figure grids carry the t,value header");
  }

  {
    const RunResult r = run_cli(
        "diagnose --generator gauss --L 5 --sampling jittered --seed 1 "
        "--pad 5 --out " + (work / "diag").string(), work);
    expect(r.exit_code == 0, "diagnose exits 0");
    const std::string rep = slurp(work / "diag" / "report.csv");
    for (const char* name : {"D1,", "D2,", "D4,", "r0,", "kernel_norm_W,",
                             "omega_delta_W,", "C1,", "C2,", "cond,"})
      expect(rep.find(name) != std::string::npos,
             std::string("diagnose reports ") + name);
    expect(rep.find("approximate (grid-based)") != std::string::npos,
           "diagnose flags grid-based values");
  }

  {
    const RunResult r = run_cli("reconstruct --generator cosine", work);
    expect(r.exit_code != 0, "unknown generator rejected");
  }

  {
    std::ofstream cfg(work / "run.ini");
    cfg << "[reconstruct]\ngenerator=spline\nlaw=0\nL=8\nsampling=jittered\n"
        << "seed=5\nout=" << (work / "cfgrun").string() << "\n";
    cfg.close();
    const RunResult r =
        run_cli("--config " + (work / "run.ini").string() + " reconstruct",
                work);
    expect(r.exit_code == 0, "config file run exits 0");
    const std::string sig = slurp(work / "cfgrun" / "signal.txt");
    expect(sig.rfind("generator=spline", 0) == 0,
           "config file options are applied");
  }

  std::printf("cli tests: %d checks, %d failures\n", checks, failures);
  return failures == 0 ? 0 : 1;
}
