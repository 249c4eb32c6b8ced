#include "rkgal/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rkgal/errors.hpp"
#include "rkgal/rng.hpp"

namespace rkgal {

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

// Maximize |x| over [lo, hi] by golden-section search; deterministic fixed
// iteration count bringing the bracket below 1e-15 of its initial width.
Scalar polish_max_abs(const FriSignal& x, Scalar lo, Scalar hi) {
  constexpr Scalar inv_phi = 0.6180339887498949;
  Scalar a = lo, b = hi;
  Scalar c = b - inv_phi * (b - a);
  Scalar d = a + inv_phi * (b - a);
  Scalar fc = std::abs(eval_signal(x, c));
  Scalar fd = std::abs(eval_signal(x, d));
  for (int iter = 0; iter < 80; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(eval_signal(x, c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(eval_signal(x, d));
    }
  }
  return std::max(fc, fd);
}

}  // namespace

Scalar SamplingSet::delta() const {
  if (abscissae.size() < 2) return 0.0;
  Scalar max_gap = 0.0;
  for (Eigen::Index n = 1; n < abscissae.size(); ++n)
    max_gap = std::max(max_gap, abscissae(n) - abscissae(n - 1));
  return 0.5 * max_gap;
}

Vector trapezoid_weights(const Vector& abscissae) {
  const auto n = abscissae.size();
  Vector w(n);
  if (n == 0) return w;
  if (n == 1) {
    w(0) = 0.0;
    return w;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Scalar next = (k + 1 < n) ? abscissae(k + 1) : abscissae(n - 1);
    const Scalar prev = (k > 0) ? abscissae(k - 1) : abscissae(0);
    w(k) = 0.5 * (next - prev);
  }
  return w;
}

SamplingSet make_nonuniform(int L, Interval gap_range, std::uint64_t seed) {
  if (!(gap_range.a > 0.0) || gap_range.a > gap_range.b)
    throw InvalidBound("gap range must satisfy 0 < lo <= hi");
  const int count = 2 * L + 5;
  SamplingSet set;
  set.kind = SamplingKind::Nonuniform;
  set.seed = seed;
  set.abscissae.resize(count);
  SeededRng rng(seed);
  set.abscissae(0) = -(L + 2);
  for (int k = 1; k < count; ++k)
    set.abscissae(k) =
        set.abscissae(k - 1) + rng.uniform(gap_range.a, gap_range.b);
  set.weights = trapezoid_weights(set.abscissae);
  set.interval = {set.abscissae(0), set.abscissae(count - 1)};
  return set;
}

SamplingSet make_jittered(int L, Scalar jitter, std::uint64_t seed) {
  if (jitter < 0.0) throw InvalidBound("jitter must be nonnegative");
  if (jitter >= 0.5) throw JitterTooLarge("jitter must be < 1/2");
  const int count = 2 * L + 5;
  SamplingSet set;
  set.kind = SamplingKind::Jittered;
  set.seed = seed;
  set.abscissae.resize(count);
  SeededRng rng(seed);
  for (int k = 0; k < count; ++k)
    set.abscissae(k) = (k - L - 2) + rng.uniform(-jitter, jitter);
  set.weights = trapezoid_weights(set.abscissae);
  set.interval = {set.abscissae(0), set.abscissae(count - 1)};
  return set;
}

SamplingSet make_ctem(const FriSignal& x, Interval interval, Scalar grid_step,
                      Scalar root_tol) {
  if (interval.empty()) throw InvalidBound("empty C-TEM interval");
  if (!(grid_step > 0.0) || !(root_tol > 0.0))
    throw InvalidBound("grid_step and root_tol must be positive");

  const int n = static_cast<int>(std::ceil(interval.length() / grid_step)) + 1;
  const Scalar step = interval.length() / (n - 1);
  Vector ts(n), xs(n);
  for (int k = 0; k < n; ++k) {
    ts(k) = interval.a + k * step;
    xs(k) = eval_signal(x, ts(k));
  }

  int argmax = 0;
  for (int k = 1; k < n; ++k)
    if (std::abs(xs(k)) > std::abs(xs(argmax))) argmax = k;
  Scalar m = std::abs(xs(argmax));
  const Scalar lo = ts(std::max(0, argmax - 1));
  const Scalar hi = ts(std::min(n - 1, argmax + 1));
  m = std::max(m, polish_max_abs(x, lo, hi));
  if (m <= 1e-14) throw ZeroSignal("signal is numerically zero on the interval");

  auto residual = [&](Scalar t) {
    return eval_signal(x, t) - m * std::sin(kPi * t);
  };

  std::vector<Scalar> roots;
  bool tangential = false;
  Scalar r_prev = residual(ts(0));
  if (r_prev == 0.0) roots.push_back(ts(0));
  for (int k = 1; k < n; ++k) {
    const Scalar r_here = residual(ts(k));
    if (r_here == 0.0) {
      roots.push_back(ts(k));
    } else if (r_prev != 0.0 && std::signbit(r_prev) != std::signbit(r_here)) {
      Scalar a = ts(k - 1), b = ts(k);
      Scalar ra = r_prev;
      while (b - a > root_tol) {
        const Scalar mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const Scalar rm = residual(mid);
        if (rm == 0.0) {
          a = b = mid;
          break;
        }
        if (std::signbit(ra) != std::signbit(rm)) {
          b = mid;
        } else {
          a = mid;
          ra = rm;
        }
      }
      roots.push_back(0.5 * (a + b));
    } else if (std::abs(r_here) <= root_tol) {
      // Tangential near-root at a grid point.
      if (roots.empty() || ts(k) - roots.back() > step) {
        roots.push_back(ts(k));
        tangential = true;
      }
    }
    r_prev = r_here;
  }
  if (roots.empty()) throw NoCrossings("no crossings located on the interval");
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](Scalar a, Scalar b) { return b - a <= root_tol; }),
              roots.end());

  SamplingSet set;
  set.kind = SamplingKind::Ctem;
  set.seed = x.seed;
  set.interval = interval;
  set.has_tangential = tangential;
  set.ctem_threshold = m;
  set.abscissae = Eigen::Map<Vector>(roots.data(), static_cast<Eigen::Index>(roots.size()));
  set.weights = trapezoid_weights(set.abscissae);
  return set;
}

SampleRecord capture(const FriSignal& x, const SamplingSet& set) {
  SampleRecord rec;
  rec.set = set;
  rec.values = eval_signal(x, set.abscissae);
  rec.source_norm_inf = set.ctem_threshold;
  return rec;
}

FriSignal pre_reconstruct(const SampleRecord& rec,
                          const TruncatedKernel& kernel) {
  const int n = rec.set.size();
  if (n == 0) throw EmptySampleSet("pre-reconstruction needs samples");
  const Scalar reach = kernel.padded.halfwidth + 0.5;
  if (rec.set.abscissae(0) < -reach || rec.set.abscissae(n - 1) > reach)
    throw WindowMismatch("kernel window does not cover the sampling interval");

  // S f = sum_i phi_i(. - i) [B d]_i with d_j = sum_n w_n f(gamma_n)
  // phit_j(gamma_n - j) over the padded window.
  const Matrix test_vals = kernel.test_stack_rows(rec.set.abscissae);
  const Vector d =
      test_vals.transpose() * rec.set.weights.cwiseProduct(rec.values).matrix();
  FriSignal out;
  out.family = kernel.trial;
  out.coeff_window = kernel.padded;
  out.coeffs = kernel.kernel_coeffs * d;
  out.seed = rec.set.seed;
  return out;
}

std::string to_string(SamplingKind kind) {
  switch (kind) {
    case SamplingKind::Nonuniform:
      return "nonuniform";
    case SamplingKind::Jittered:
      return "jittered";
    case SamplingKind::Ctem:
      return "ctem";
  }
  return "unknown";
}

SamplingKind sampling_kind_from_string(const std::string& name) {
  if (name == "nonuniform") return SamplingKind::Nonuniform;
  if (name == "jittered") return SamplingKind::Jittered;
  if (name == "ctem") return SamplingKind::Ctem;
  throw ParseError("unknown sampling kind '" + name + "'");
}

}  // namespace rkgal
