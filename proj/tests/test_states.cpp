#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chsh/states.hpp"
#include "test_support.hpp"

namespace chsh {
namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void expect_amplitudes_near(const PureState& psi, const Amplitudes& want, double tol) {
  for (int i = 0; i < 4; ++i) EXPECT_LE(std::abs(psi[i] - want[i]), tol) << "amplitude " << i;
}

DensityMatrix werner(double p) {
  const PureState singlet = PureState::from_amplitudes({0.0, kInvSqrt2, -kInvSqrt2, 0.0});
  SmallMatrix m = singlet.projector().matrix() * p + SmallMatrix::identity(4) * ((1.0 - p) / 4.0);
  return DensityMatrix::from_matrix(m);
}

TEST(PureState, Validation) {
  EXPECT_THROW(PureState::from_amplitudes({1.0, 1.0, 0.0, 0.0}), ValidationError);
  EXPECT_THROW(PureState::normalized({0.0, 0.0, 0.0, 0.0}), ValidationError);
  EXPECT_THROW(PureState::from_amplitudes({std::nan(""), 0.0, 0.0, 0.0}), std::invalid_argument);
  const PureState psi = PureState::normalized({1.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(std::abs(psi[0]), kInvSqrt2, 1e-16);
}

TEST(DensityMatrix, Validation) {
  SmallMatrix not_herm = SmallMatrix::identity(4) * 0.25;
  not_herm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::from_matrix(not_herm), ValidationError);
  EXPECT_THROW(DensityMatrix::from_matrix(SmallMatrix::identity(4)), ValidationError);
  const double d[] = {0.6, 0.6, -0.1, -0.1};
  EXPECT_THROW(DensityMatrix::from_matrix(SmallMatrix::diagonal(d)), ValidationError);
  EXPECT_THROW(DensityMatrix::from_matrix(SmallMatrix::identity(2) * 0.5), ValidationError);
}

TEST(CanonicalState, Examples) {
  expect_amplitudes_near(canonical_state(kPi / 2, 0.0), {0.0, kInvSqrt2, kInvSqrt2, 0.0}, 1e-15);
  expect_amplitudes_near(canonical_state(0.0, 1.234), {0.0, 1.0, 0.0, 0.0}, 0.0);
  // cos(pi/6) = sqrt3/2, e^{i pi} sin(pi/6) = -1/2
  expect_amplitudes_near(canonical_state(kPi / 3, kPi), {0.0, std::sqrt(3.0) / 2, -0.5, 0.0}, 1e-15);
}

TEST(CanonicalState, DomainErrors) {
  EXPECT_THROW(canonical_state(-0.1, 0.0), DomainError);
  EXPECT_THROW(canonical_state(kPi + 1e-9, 0.0), DomainError);
  EXPECT_NO_THROW(canonical_state(kPi, 0.0));
}

TEST(LocalUnitary, FormulaAndRecovery) {
  const LocalUnitary u = LocalUnitary::from_angles(0.3, 1.1, 0.7, -0.4);
  EXPECT_LE(u.matrix().unitary_residual(), 1e-15);
  // Direct evaluation of the parametrization at (0.3, 1.1, 0.7, -0.4).
  const Complex g = std::polar(1.0, -0.3);
  EXPECT_LE(std::abs(u.matrix()(0, 0) - g * std::polar(std::cos(0.35), -(1.1 - 0.4) / 2)), 1e-15);
  EXPECT_LE(std::abs(u.matrix()(0, 1) + g * std::polar(std::sin(0.35), (-1.1 - 0.4) / 2)), 1e-15);
  EXPECT_LE(std::abs(u.matrix()(1, 0) - g * std::polar(std::sin(0.35), (1.1 + 0.4) / 2)), 1e-15);
  EXPECT_LE(std::abs(u.matrix()(1, 1) - g * std::polar(std::cos(0.35), (1.1 - 0.4) / 2)), 1e-15);

  const LocalUnitary back = LocalUnitary::from_matrix(u.matrix());
  EXPECT_LE((back.matrix() - u.matrix()).max_abs(), 1e-12);
  EXPECT_NEAR(back.gamma(), 0.7, 1e-12);
}

TEST(LocalUnitary, GaugeAtPoles) {
  const LocalUnitary diag = LocalUnitary::from_matrix(
      SmallMatrix(2, {std::polar(1.0, 0.4), 0.0, 0.0, std::polar(1.0, -0.2)}));
  EXPECT_EQ(diag.gamma(), 0.0);
  EXPECT_DOUBLE_EQ(diag.beta(), diag.delta());

  const LocalUnitary anti = LocalUnitary::from_matrix(
      SmallMatrix(2, {0.0, std::polar(1.0, 0.9), std::polar(1.0, 0.1), 0.0}));
  EXPECT_NEAR(anti.gamma(), kPi, 1e-15);
  EXPECT_DOUBLE_EQ(anti.beta(), -anti.delta());
}

TEST(LocalUnitary, RandomRoundTrip) {
  SeededRng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const LocalUnitary u = LocalUnitary::from_angles(rng.gaussian(), rng.gaussian() * 3,
                                                     kPi * rng.uniform(), rng.gaussian() * 3);
    const LocalUnitary back = LocalUnitary::from_matrix(u.matrix());
    ASSERT_LE((back.matrix() - u.matrix()).max_abs(), 1e-12);
    ASSERT_LE(back.matrix().unitary_residual(), 1e-12);
  }
  EXPECT_THROW(LocalUnitary::from_matrix(SmallMatrix::identity(2) * 2.0), ValidationError);
}

TEST(Schmidt, Examples) {
  EXPECT_NEAR(schmidt_decompose(canonical_state(kPi / 2, 0.0)).theta, kPi / 2, 1e-15);
  EXPECT_EQ(schmidt_decompose(PureState::from_amplitudes({1.0, 0.0, 0.0, 0.0})).theta, 0.0);
  // C = 1/2 [[1, 1], [1, -1]] has C C^dagger = I/2: equal Schmidt weights.
  EXPECT_NEAR(schmidt_decompose(PureState::from_amplitudes({0.5, 0.5, 0.5, -0.5})).theta, kPi / 2,
              1e-15);
}

TEST(Schmidt, CanonicalInputRecoversTheta) {
  for (double theta : {0.1, 0.7, 1.2, 1.5}) {
    const SchmidtForm form = schmidt_decompose(canonical_state(theta, 0.9));
    EXPECT_NEAR(form.theta, theta, 1e-12);
    EXPECT_EQ(form.chi, 0.0);
  }
  // theta > pi/2 folds back since the larger coefficient comes first.
  EXPECT_NEAR(schmidt_decompose(canonical_state(2.5, 0.0)).theta, kPi - 2.5, 1e-12);
}

TEST(Schmidt, RandomRoundTripAndConcurrence) {
  SeededRng rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const PureState psi = random_pure(rng);
    const SchmidtForm form = schmidt_decompose(psi);
    ASSERT_GE(form.theta, 0.0);
    ASSERT_LE(form.theta, kPi / 2);
    const PureState mapped = apply_local(form.u_a.matrix(), form.u_b.matrix(), psi);
    ASSERT_GE(fidelity(mapped, canonical_state(form.theta, 0.0)), 1.0 - 1e-12);
    ASSERT_GE(std::abs(mapped[1]), std::abs(mapped[2]) - 1e-15);
    ASSERT_NEAR(concurrence(psi), std::sin(form.theta), 1e-10);
  }
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(entanglement_entropy(kPi / 2), 1.0, 1e-15);
  EXPECT_EQ(entanglement_entropy(0.0), 0.0);
  // cos^2(pi/6) = 3/4: -(3/4)log2(3/4) - (1/4)log2(1/4)
  const double oracle = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
  EXPECT_NEAR(entanglement_entropy(kPi / 3), oracle, 1e-15);
  EXPECT_NEAR(entanglement_entropy(kPi / 3), 0.8112781, 1e-7);
  EXPECT_NEAR(entanglement_entropy(kPi), 0.0, 1e-30);
  EXPECT_THROW(entanglement_entropy(-1e-3), DomainError);
  EXPECT_THROW(entanglement_entropy(4.0), DomainError);
}

TEST(Entropy, SymmetricAboutHalfPi) {
  for (int k = 0; k <= 180; ++k) {
    const double theta = kPi * k / 180.0;
    EXPECT_NEAR(entanglement_entropy(theta), entanglement_entropy(kPi - theta), 1e-12);
  }
}

TEST(Concurrence, Examples) {
  // Oracle: |psi^T (sigma_y (x) sigma_y) psi| from the explicit 4x4 operator.
  auto oracle = [](const PureState& psi) {
    const auto image = kron(pauli_y(), pauli_y()).apply(psi.amplitudes());
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += psi[i] * image[i];
    return std::abs(acc);
  };
  const PureState bell = canonical_state(kPi / 2, 0.0);
  EXPECT_NEAR(oracle(bell), 1.0, 1e-15);
  EXPECT_NEAR(concurrence(bell), 1.0, 1e-15);
  EXPECT_EQ(concurrence(PureState::from_amplitudes({1.0, 0.0, 0.0, 0.0})), 0.0);
  const PureState psi = canonical_state(kPi / 6, 0.7);
  EXPECT_NEAR(oracle(psi), 0.5, 1e-15);
  EXPECT_NEAR(concurrence(psi), 0.5, 1e-15);

  SeededRng rng(4);
  for (int i = 0; i < 100; ++i) {
    const PureState r = random_pure(rng);
    EXPECT_NEAR(concurrence(r), oracle(r), 1e-14);
  }
}

TEST(PartialTrace, Examples) {
  for (double chi : {0.0, 1.0, 2.5}) {
    const double theta = 1.1;
    const SmallMatrix red = partial_trace(canonical_state(theta, chi).projector(), Subsystem::A);
    EXPECT_NEAR(red(0, 0).real(), std::pow(std::cos(theta / 2), 2), 1e-15);
    EXPECT_NEAR(red(1, 1).real(), std::pow(std::sin(theta / 2), 2), 1e-15);
    EXPECT_LE(std::abs(red(0, 1)), 1e-15);
    const HermitianEigen e = hermitian_eigen(red);
    EXPECT_NEAR(e.values[0], std::pow(std::sin(theta / 2), 2), 1e-12);
    EXPECT_NEAR(e.values[1], std::pow(std::cos(theta / 2), 2), 1e-12);
  }
  const SmallMatrix mixed_b = partial_trace(DensityMatrix::maximally_mixed(), Subsystem::B);
  EXPECT_LE((mixed_b - SmallMatrix::identity(2) * 0.5).max_abs(), 0.0);
  const SmallMatrix product =
      partial_trace(PureState::from_amplitudes({1.0, 0.0, 0.0, 0.0}).projector(), Subsystem::A);
  EXPECT_EQ(product(0, 0), Complex(1.0));
  EXPECT_EQ(product(1, 1), Complex(0.0));
}

TEST(PartialTrace, RandomDensityGivesValidReducedStates) {
  SeededRng rng(8);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix rho = random_density(rng, 1 + i % 4);
    for (Subsystem keep : {Subsystem::A, Subsystem::B}) {
      const SmallMatrix red = partial_trace(rho, keep);
      ASSERT_LE(red.hermitian_residual(), 1e-12);
      ASSERT_NEAR(red.trace().real(), 1.0, 1e-10);
      ASSERT_GE(hermitian_eigen(red).values[0], -1e-10);
    }
  }
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(canonical_state(0.4, 0.2).projector()), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(purity(DensityMatrix::maximally_mixed()), 0.25);

  const PureState phi = canonical_state(kPi / 2, 0.0);
  const SmallMatrix m =
      phi.projector().matrix() * 0.8 + SmallMatrix::identity(4) * (0.2 / 4.0);
  // Oracle: trace of the explicit matrix square; 0.64 + 2*0.8*0.2/4 + 0.04/4.
  const double oracle = (m * m).trace().real();
  EXPECT_NEAR(oracle, 0.73, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::from_matrix(m)), 0.73, 1e-15);
}

TEST(RandomPure, NormalizedAndDeterministic) {
  SeededRng a(1);
  SeededRng b(1);
  const PureState pa = random_pure(a);
  const PureState pb = random_pure(b);
  double norm_sq = 0.0;
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(pa[i], pb[i]);
    norm_sq += std::norm(pa[i]);
  }
  EXPECT_NEAR(norm_sq, 1.0, 1e-12);
}

TEST(RandomPure, MeanEntropyBand) {
  // Haar average of the reduced-state entropy for two qubits is 1/3 nat
  // (about 0.481 bits).
  SeededRng rng(12345);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) sum += entanglement_entropy(schmidt_decompose(random_pure(rng)).theta);
  const double mean = sum / 10000;
  EXPECT_GT(mean, 0.4);
  EXPECT_LT(mean, 0.7);
  EXPECT_NEAR(mean, 1.0 / (3.0 * std::numbers::ln2), 0.02);
}

TEST(RandomDensity, RankAndPurity) {
  SeededRng rng(6);
  EXPECT_NEAR(purity(random_density(rng, 1)), 1.0, 1e-10);
  EXPECT_LT(purity(random_density(rng, 4)), 1.0);
  EXPECT_THROW(random_density(rng, 0), DomainError);
  EXPECT_THROW(random_density(rng, 5), DomainError);
}

TEST(RandomDensity, GoldenSeed5Rank2) {
  // Frozen from tests/oracles/prng_oracle.py.
  const double golden[4][4][2] = {
      {{0.1256449603910068, 0.0}, {0.09584103117757331, -0.034733217981308295},
       {-0.20703151850755128, -0.06717396523040815}, {0.10273847594866918, -0.05285416987576937}},
      {{0.09584103117757331, 0.034733217981308295}, {0.12920235320379128, 0.0},
       {-0.2232255195702121, -0.039535133217009084}, {0.11266277742093303, -0.012695276605651404}},
      {{-0.20703151850755128, 0.06717396523040815}, {-0.2232255195702121, 0.039535133217009084},
       {0.6305644523573474, 0.0}, {-0.177693953871728, 0.11423911896339772}},
      {{0.10273847594866918, 0.05285416987576937}, {0.11266277742093303, 0.012695276605651404},
       {-0.177693953871728, -0.11423911896339772}, {0.11458823404785454, 0.0}}};
  SeededRng rng(5);
  const DensityMatrix rho = random_density(rng, 2);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(rho(r, c).real(), golden[r][c][0], 1e-14);
      EXPECT_NEAR(rho(r, c).imag(), golden[r][c][1], 1e-14);
    }
  }
}

TEST(CorrelationMatrix, CanonicalState) {
  for (double theta : {0.0, 0.5, kPi / 2, 2.0}) {
    const CorrelationMatrix t = correlation_matrix(canonical_state(theta, 0.0).projector());
    const double expected[3][3] = {{std::sin(theta), 0, 0}, {0, std::sin(theta), 0}, {0, 0, -1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(t(i, j), expected[i][j], 1e-15);
  }
}

TEST(CorrelationMatrix, MixedStates) {
  const CorrelationMatrix zero = correlation_matrix(DensityMatrix::maximally_mixed());
  for (const auto& row : zero.t)
    for (double x : row) EXPECT_EQ(x, 0.0);

  const CorrelationMatrix w = correlation_matrix(werner(0.5));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(w(i, j), i == j ? -0.5 : 0.0, 1e-15);
}

TEST(CorrelationMatrix, EntriesBounded) {
  SeededRng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const CorrelationMatrix t = correlation_matrix(random_density(rng, 1 + i % 4));
    for (const auto& row : t.t)
      for (double x : row) {
        ASSERT_GE(x, -1.0 - 1e-10);
        ASSERT_LE(x, 1.0 + 1e-10);
      }
  }
}

}  // namespace
}  // namespace chsh
