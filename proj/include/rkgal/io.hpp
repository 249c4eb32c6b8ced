#pragma once

#include <iosfwd>
#include <string>

#include "rkgal/family.hpp"
#include "rkgal/sampling.hpp"

namespace rkgal {

/// Number formatted with 17 significant digits, locale-independent.
std::string format_g17(Scalar v);

/// Line-oriented signal format: header lines `generator=<kind>`, `L=<int>`,
/// `seed=<u64>`, then one `i theta_i c_i` triple per line.
void write_signal(std::ostream& os, const FriSignal& f);
FriSignal read_signal(std::istream& is);

/// Sampling-set format: header lines `kind=`, `seed=`, `interval=<a> <b>`,
/// then one `gamma_n w_n` pair per line.
void write_sampling_set(std::ostream& os, const SamplingSet& set);
SamplingSet read_sampling_set(std::istream& is);

struct IterationReport;

/// CSV rows `step,increment_norm`, one per iteration.
void write_iteration_report(std::ostream& os, const IterationReport& report);

void save_signal(const std::string& path, const FriSignal& f);
FriSignal load_signal(const std::string& path);
void save_sampling_set(const std::string& path, const SamplingSet& set);
SamplingSet load_sampling_set(const std::string& path);

}  // namespace rkgal
