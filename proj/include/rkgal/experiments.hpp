#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rkgal/diagnostics.hpp"
#include "rkgal/io.hpp"
#include "rkgal/reconstruct.hpp"

namespace rkgal {

/// One reconstruction experiment cell. The signal law couples a coefficient
/// law with the family shift mode: 0 = random coefficients / zero shifts,
/// 1 = cosine coefficients / zero shifts, 2 and 3 = the same laws on a
/// randomly shifted family (bound shift_bound).
struct ProtocolConfig {
  GeneratorKind generator = GeneratorKind::Sinc;
  int law = 0;
  int L = 30;
  SamplingKind sampling = SamplingKind::Nonuniform;
  std::uint64_t seed = 1;

  int test_halfwidth = -1;  // Ltilde; -1 means square (Ltilde = L)
  int signal_pad = 20;      // reference signal window = L + signal_pad
  int kernel_pad = 10;      // truncated-kernel padding M
  Scalar shift_bound = 0.2;
  Interval gap_range{0.9, 1.1};
  Scalar jitter = 0.1;
  Scalar ctem_grid_step = 1e-3;
  Scalar ctem_root_tol = 1e-10;
  QuadratureSpec quad;

  int lt() const { return test_halfwidth < 0 ? L : test_halfwidth; }
};

CoefficientLaw law_coefficients(int law);
ShiftMode law_shift_mode(int law);

/// Trial family of the cell (window L + max(signal_pad, kernel_pad)).
ShiftedFamily protocol_trial_family(const ProtocolConfig& cfg);
/// Unshifted indicator test family on the same window.
ShiftedFamily protocol_test_family(const ProtocolConfig& cfg);
/// Reference signal x(phi0, law) truncated at L + signal_pad.
FriSignal protocol_reference_signal(const ProtocolConfig& cfg,
                                    const ShiftedFamily& trial);
/// Sampling set of the requested kind (C-TEM runs on the reference signal).
SamplingSet protocol_sampling_set(const ProtocolConfig& cfg,
                                  const FriSignal& reference);

/// Full cell: sample the reference, solve the (sub-)Galerkin system, and
/// compare against the best approximation.
struct ReconstructionRun {
  ShiftedFamily trial;
  ShiftedFamily test;
  FriSignal reference;
  SampleRecord record;
  GalerkinSystem system;
  FriSignal galerkin;
  FriSignal best;
  QuasiOptimality quality;
  /// True when the square system was singular (a nonuniform draw left a test
  /// cell empty) and the wide-test-window least-squares sub-Galerkin
  /// reconstruction was used instead.
  bool used_subgalerkin_fallback = false;
};

ReconstructionRun run_reconstruction(const ProtocolConfig& cfg);

struct Table1Row {
  std::string generator;
  int law = 0;
  std::string sampling;
  int L = 0;
  std::uint64_t seed = 0;
  Scalar e = 0.0;
  Scalar epsilon = 0.0;
  Scalar ratio_bound = 0.0;
  std::string status = "ok";
};

struct Table2Row {
  std::string generator;
  std::string shift_mode;
  std::string sampling;
  int L = 0;
  std::uint64_t seed = 0;
  Scalar cond = 0.0;
  std::string status = "ok";
};

Table1Row run_table1_cell(const ProtocolConfig& cfg);
Table2Row run_table2_cell(const ProtocolConfig& cfg, ShiftMode mode);

/// Figure-style data grids (step 0.01 over the sampling interval):
/// the reference signal, its pre-reconstruction difference, its Galerkin
/// difference, and the best-approximation-vs-Galerkin difference.
struct FigureGrids {
  Vector ts;
  Vector original;
  Vector pre_difference;
  Vector galerkin_difference;
  Vector best_difference;
};

FigureGrids run_figures(const ProtocolConfig& cfg);

/// Admissibility/stability diagnostics of one cell, as name/value/flag rows.
struct DiagnosticRow {
  std::string name;
  Scalar value = 0.0;
  std::string flag;
};

std::vector<DiagnosticRow> run_diagnose(const ProtocolConfig& cfg);

/// Deterministic conversion of sup-norm distance between two signals on a
/// uniform grid over [a, b] (step 0.01), restricted to |t| <= cutoff.
Scalar grid_sup_difference(const FriSignal& a, const FriSignal& b,
                           Interval range, Scalar cutoff);

}  // namespace rkgal
