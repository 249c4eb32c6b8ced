#include <doctest.h>

#include <cmath>
#include <random>

#include "rkgal/diagnostics.hpp"
#include "rkgal/errors.hpp"
#include "rkgal/reconstruct.hpp"

using namespace rkgal;

namespace {

ShiftedFamily lattice(GeneratorKind kind, int L) {
  return build_family(Generator::make(kind), ShiftMode::Zero, L, 0);
}

SampleRecord sample_signal(const FriSignal& x, const SamplingSet& set) {
  return capture(x, set);
}

FriSignal random_trial_signal(const ShiftedFamily& fam, int L,
                              std::uint64_t seed) {
  return make_test_signal(fam, CoefficientLaw::RandomDecay, L, seed);
}

}  // namespace

TEST_CASE("a single sample produces the rank-one pairing matrix") {
  const int L = 3;
  const ShiftedFamily trial =
      build_family(Generator::gauss(), ShiftMode::UniformRandom, L, 4, 0.2);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
  SamplingSet set;
  set.abscissae = Vector::Constant(1, 0.7);
  set.weights = Vector::Constant(1, 1.0);  // endpoint convention gives 0;
  set.interval = {0.7, 0.7};               // use unit weight explicitly
  SampleRecord rec;
  rec.set = set;
  rec.values = Vector::Constant(1, 2.5);
  const GalerkinSystem sys = assemble_system(trial, test, rec, L, L);
  for (int i = -L; i <= L; ++i)
    for (int j = -L; j <= L; ++j) {
      const Scalar expected =
          eval_generator(trial.generator, 0.7 - i - trial.shift(i)) *
          eval_generator(test.generator, 0.7 - j);
      CHECK(sys.matrix(i + L, j + L) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("indicator test columns only see samples inside their cell") {
  const int L = 5;
  const ShiftedFamily trial = lattice(GeneratorKind::Sinc, L);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
  const SamplingSet set = make_nonuniform(L, 11);
  const FriSignal x = random_trial_signal(trial, L, 12);
  const GalerkinSystem sys =
      assemble_system(trial, test, sample_signal(x, set), L, L);
  for (int j = -L; j <= L; ++j) {
    // brute-force column: only samples with gamma in [j-1/2, j+1/2)
    for (int i = -L; i <= L; ++i) {
      Scalar acc = 0.0;
      for (int n = 0; n < set.size(); ++n) {
        const Scalar g = set.abscissae(n);
        if (g >= j - 0.5 && g < j + 0.5)
          acc += set.weights(n) * eval_generator(trial.generator, g - i);
      }
      CHECK(sys.matrix(i + L, j + L) == doctest::Approx(acc).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("assembly matches an independent triple-loop oracle") {
  const int L = 6, Lt = 8;
  const ShiftedFamily trial =
      build_family(Generator::cubic_bspline(), ShiftMode::UniformRandom, L, 2,
                   0.2);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, Lt);
  const SamplingSet set = make_jittered(Lt, 0.1, 21);
  const FriSignal x = random_trial_signal(trial, L, 22);
  const SampleRecord rec = sample_signal(x, set);
  const GalerkinSystem sys = assemble_system(trial, test, rec, L, Lt);

  for (int j = -Lt; j <= Lt; ++j) {
    Scalar rhs = 0.0;
    for (int n = 0; n < set.size(); ++n)
      rhs += set.weights(n) * rec.values(n) *
             eval_generator(test.generator, set.abscissae(n) - j);
    CHECK(sys.rhs(j + Lt) == doctest::Approx(rhs).epsilon(1e-13).scale(1.0));
    for (int i = -L; i <= L; ++i) {
      Scalar acc = 0.0;
      for (int n = 0; n < set.size(); ++n)
        acc += set.weights(n) *
               eval_generator(trial.generator,
                              set.abscissae(n) - i - trial.shift(i)) *
               eval_generator(test.generator, set.abscissae(n) - j);
      CHECK(sys.matrix(i + L, j + Lt) ==
            doctest::Approx(acc).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("Galerkin solve recovers trial-space signals exactly") {
  for (GeneratorKind kind :
       {GeneratorKind::Sinc, GeneratorKind::Gauss, GeneratorKind::CubicBSpline}) {
    for (int L : {5, 12}) {
      const ShiftedFamily trial =
          build_family(Generator::make(kind), ShiftMode::UniformRandom, L,
                       31 + L, 0.2);
      const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
      const FriSignal h = random_trial_signal(trial, L, 77);
      const SamplingSet set = make_nonuniform(L, 5);
      const GalerkinSystem sys =
          assemble_system(trial, test, sample_signal(h, set), L, L);
      const Vector c = solve_galerkin(sys);
      CHECK((c - h.coeffs).norm() / h.coeffs.norm() < 1e-8);
    }
  }
}

TEST_CASE("a structurally empty test cell makes the system singular") {
  const int L = 4;
  const ShiftedFamily trial = lattice(GeneratorKind::Sinc, L);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
  // integer lattice without the j = 0 cell: no sample lands in [-1/2, 1/2)
  std::vector<Scalar> pts;
  for (int k = -L - 2; k <= L + 2; ++k)
    if (k != 0) pts.push_back(static_cast<Scalar>(k));
  SamplingSet set;
  set.abscissae =
      Eigen::Map<Vector>(pts.data(), static_cast<Eigen::Index>(pts.size()));
  set.weights = trapezoid_weights(set.abscissae);
  set.interval = {pts.front(), pts.back()};
  const ShiftedFamily fam = lattice(GeneratorKind::Sinc, L);
  const FriSignal x = random_trial_signal(fam, L, 3);
  const GalerkinSystem sys =
      assemble_system(trial, test, sample_signal(x, set), L, L);
  CHECK_THROWS_AS(solve_galerkin(sys), SingularSystem);
}

TEST_CASE("least squares equals the square solve when Lt = L") {
  const int L = 8;
  const ShiftedFamily trial =
      build_family(Generator::gauss(), ShiftMode::UniformRandom, L, 9, 0.2);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
  const FriSignal h = random_trial_signal(trial, L, 10);
  const SamplingSet set = make_jittered(L, 0.1, 11);
  const GalerkinSystem sys =
      assemble_system(trial, test, sample_signal(h, set), L, L);
  const Vector square = solve_galerkin(sys);
  const Vector lsq = solve_subgalerkin_lsq(sys);
  CHECK((square - lsq).norm() < 1e-10 * square.norm());
}

TEST_CASE("overdetermined consistent systems recover the signal") {
  const int L = 6, Lt = 11;
  const ShiftedFamily trial = lattice(GeneratorKind::Sinc, Lt);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, Lt);
  const FriSignal h = random_trial_signal(trial, L, 13);
  const SamplingSet set = make_nonuniform(Lt, 14);
  const GalerkinSystem sys =
      assemble_system(trial, test, sample_signal(h, set), L, Lt);
  const Vector c = solve_subgalerkin_lsq(sys);
  Vector expected = Vector::Zero(2 * L + 1);
  for (int i = -L; i <= L; ++i) expected(i + L) = h.coeff(i);
  CHECK((c - expected).norm() / expected.norm() < 1e-8);
}

TEST_CASE("rank deficiency is detected") {
  const int L = 6, Lt = 6;
  const ShiftedFamily trial = lattice(GeneratorKind::Sinc, Lt);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, Lt);
  SamplingSet set;  // far too few samples for 2L+1 unknowns
  set.abscissae = Vector::LinSpaced(4, -2.0, 2.0);
  set.weights = trapezoid_weights(set.abscissae);
  set.interval = {-2.0, 2.0};
  SampleRecord rec;
  rec.set = set;
  rec.values = Vector::Zero(4);
  const GalerkinSystem sys = assemble_system(trial, test, rec, L, Lt);
  CHECK_THROWS_AS(solve_subgalerkin_lsq(sys), RankDeficient);
}

TEST_CASE("projector block inverse is consistent") {
  const int L = 10;
  const ShiftedFamily sinc_fam = lattice(GeneratorKind::Sinc, L);
  const ObliqueProjector p0 = build_projector(sinc_fam, sinc_fam, L);
  CHECK((p0.inverse_block - Matrix::Identity(2 * L + 1, 2 * L + 1))
            .cwiseAbs()
            .maxCoeff() < 1e-8);

  const ShiftedFamily gauss_fam =
      build_family(Generator::gauss(), ShiftMode::UniformRandom, L, 41, 0.2);
  const ShiftedFamily ind_fam = lattice(GeneratorKind::Indicator, L);
  const ObliqueProjector p = build_projector(gauss_fam, ind_fam, L);
  const Matrix residual = p.inverse_block * p.correlation_block -
                          Matrix::Identity(2 * L + 1, 2 * L + 1);
  CHECK(spectral_norm(residual) < 1e-10);
}

TEST_CASE("projector reproduces trial-space signals and is idempotent") {
  const int L = 10;
  for (GeneratorKind kind :
       {GeneratorKind::Sinc, GeneratorKind::Gauss, GeneratorKind::CubicBSpline}) {
    const ShiftedFamily trial =
        build_family(Generator::make(kind), ShiftMode::UniformRandom, L + 10,
                     51, 0.2);
    const ShiftedFamily test = lattice(GeneratorKind::Indicator, L + 10);
    const ObliqueProjector p = build_projector(trial, test, L);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const FriSignal h = random_trial_signal(trial, L, 100 + seed);
      const Vector ph = apply_projector(p, h);
      CHECK((ph - h.coeffs).norm() <= 1e-9 * std::max(1.0, h.coeffs.norm()));
    }

    // idempotence on a signal outside the window: P(Pf) = Pf
    const FriSignal f = random_trial_signal(trial, L + 10, 500);
    const Vector pf = apply_projector(p, f);
    FriSignal pf_signal;
    pf_signal.family = trial;
    pf_signal.coeff_window = IndexWindow{L};
    pf_signal.coeffs = pf;
    const Vector ppf = apply_projector(p, pf_signal);
    CHECK((ppf - pf).norm() <= 1e-8 * std::max(1.0, pf.norm()));

    // zero in, zero out
    const Vector pz = apply_projector(p, zero_signal(trial, L));
    CHECK(pz.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("projector preserves pairings against the test space") {
  const int L = 8;
  const ShiftedFamily trial =
      build_family(Generator::gauss(), ShiftMode::UniformRandom, L + 10, 61,
                   0.2);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L + 10);
  const ObliqueProjector p = build_projector(trial, test, L);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FriSignal f = random_trial_signal(trial, L + 10, 700 + seed);
    FriSignal pf;
    pf.family = trial;
    pf.coeff_window = IndexWindow{L};
    pf.coeffs = apply_projector(p, f);
    const FriSignal g =
        make_test_signal(test, CoefficientLaw::RandomDecay, L, 800 + seed);

    // <Pf, g> and <f, g> via correlation sums
    auto pairing = [&](const FriSignal& s) {
      Scalar acc = 0.0;
      for (int i = -s.coeff_window.halfwidth; i <= s.coeff_window.halfwidth;
           ++i)
        for (int j = -L; j <= L; ++j)
          acc += s.coeff(i) * g.coeff(j) *
                 correlation(s.family.generator, test.generator,
                             s.family.center(i), test.center(j));
      return acc;
    };
    const Scalar lhs = pairing(pf);
    const Scalar rhs = pairing(f);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("projector applies to general evaluables through quadrature") {
  const int L = 6;
  const ShiftedFamily trial =
      build_family(Generator::gauss(), ShiftMode::Zero, L + 4, 0);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L + 4);
  const ObliqueProjector p = build_projector(trial, test, L);
  const FriSignal h = random_trial_signal(trial, L, 900);
  const Vector via_signal = apply_projector(p, h);
  const Vector via_evaluable = apply_projector(
      p, [&](Scalar t) { return eval_signal(h, t); });
  CHECK((via_signal - via_evaluable).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("identity iteration matrix converges in one step") {
  // indicator/indicator on the integer lattice: A_Gamma = A_L = I
  const int L = 5;
  const ShiftedFamily fam = lattice(GeneratorKind::Indicator, L);
  const ObliqueProjector p = build_projector(fam, fam, L);
  const FriSignal h = random_trial_signal(fam, L, 33);
  const SamplingSet set = make_jittered(L, 0.0, 1);
  const auto [c, report] = iterate_ap(fam, fam, capture(h, set), L, p);
  CHECK(report.converged);
  CHECK(report.steps == 1);
  CHECK(report.certified_bound < 1e-12);
  CHECK((c - h.coeffs).norm() < 1e-12);
}

TEST_CASE("iteration limit matches the direct solve when contractive") {
  const int L = 8;
  for (GeneratorKind kind :
       {GeneratorKind::Sinc, GeneratorKind::Gauss, GeneratorKind::CubicBSpline}) {
    const ShiftedFamily trial =
        build_family(Generator::make(kind), ShiftMode::UniformRandom, L, 71,
                     0.2);
    const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
    const ObliqueProjector p = build_projector(trial, test, L);
    const FriSignal h = random_trial_signal(trial, L, 72);
    const SamplingSet set = make_jittered(L, 0.1, 73);
    const SampleRecord rec = capture(h, set);
    const auto [c, report] = iterate_ap(trial, test, rec, L, p);
    if (report.certified_bound < 1.0) {
      CHECK(report.converged);
      const Vector direct =
          solve_galerkin(assemble_system(trial, test, rec, L, L));
      CHECK((c - direct).norm() / direct.norm() < 1e-8);
      // increments contract at least at the certified rate
      for (std::size_t m = 1; m < report.increment_norms.size(); ++m)
        CHECK(report.increment_norms[m] <=
              report.certified_bound * report.increment_norms[m - 1] *
                      (1.0 + 1e-6) +
                  1e-300);
    }
  }
}

TEST_CASE("divergence is detected on grossly undersampled systems") {
  const int L = 6;
  const ShiftedFamily trial = lattice(GeneratorKind::Sinc, L);
  const ShiftedFamily test = lattice(GeneratorKind::Indicator, L);
  const ObliqueProjector p = build_projector(trial, test, L);
  // gap ~ 3: far below the density the contraction needs
  const SamplingSet sparse = make_nonuniform(L, Interval{2.9, 3.1}, 5);
  const FriSignal h = random_trial_signal(trial, L, 6);
  const SampleRecord rec = capture(h, sparse);
  bool diverged = false;
  try {
    const auto [c, report] = iterate_ap(trial, test, rec, L, p, 1e-12, 2000);
    (void)c;
    CHECK(!report.contractive);  // must at least be flagged non-contractive
  } catch (const DivergenceDetected&) {
    diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("spectral norm estimate matches singular values") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix m(12, 12);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) m(i, j) = u(rng);
    Eigen::BDCSVD<Matrix> svd(m);
    const Scalar expected = svd.singularValues()(0);
    CHECK(spectral_norm(m) == doctest::Approx(expected).epsilon(1e-6));
  }
}
