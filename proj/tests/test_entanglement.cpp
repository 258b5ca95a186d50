#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/thermal.hpp"

using namespace qutrit;

namespace {

ModelParams at(double R, double gamma, double Dz, double B) {
  ModelParams p;
  p.R = R;
  p.gamma = gamma;
  p.Dz = Dz;
  p.B = B;
  return p;
}

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return at(0.05 + 5.95 * u(rng), -2.0 + 4.0 * u(rng), -3.0 + 6.0 * u(rng), -3.0 + 6.0 * u(rng));
}

Matrix random_unitary3(std::mt19937_64& rng) {
  // QR of a complex Gaussian matrix via Eigen; the oracle side is fine here.
  std::normal_distribution<double> g;
  oracle::CMat a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<oracle::CMat> qr(a);
  return oracle::from_eigen(qr.householderQ() * oracle::CMat::Identity(3, 3));
}

std::vector<Complex> basis_vec(std::initializer_list<std::pair<std::size_t, Complex>> entries) {
  std::vector<Complex> v(9);
  for (auto [i, c] : entries) v[i] = c;
  return v;
}

// a^2 + 2ab for the phi_9 amplitudes a = 2/sqrt(chi2^2+8), b = chi2/sqrt(chi2^2+8).
double phi9_formula(const ModelParams& p) {
  const double J = p.coupling();
  const double r = std::hypot(J, p.Dz);
  const double chi2 = (std::sqrt(p.gamma * p.gamma * J * J + 8 * r * r) - p.gamma * J) / r;
  const double n = std::sqrt(chi2 * chi2 + 8);
  const double a = 2 / n, b = chi2 / n;
  return a * a + 2 * a * b;
}

}  // namespace

TEST(PartialTranspose, MatchesBruteForceAndIsInvolution) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const Matrix rho = gibbs_analytic(random_params(rng), 0.3 + t * 0.05).rho;
    const Matrix pt = partial_transpose(rho);
    EXPECT_EQ(oracle::max_abs_diff(oracle::partial_transpose_first(oracle::to_eigen(rho)), pt), 0.0);
    EXPECT_EQ(partial_transpose(pt), rho);
    EXPECT_EQ(partial_transpose(partial_transpose(rho, Subsystem::Second), Subsystem::Second), rho);
    EXPECT_TRUE(is_hermitian(pt));
  }
}

TEST(PartialTranspose, DiagonalUnchangedAndShapeChecked) {
  const std::vector<double> d = {0.1, 0.2, 0.05, 0.05, 0.1, 0.1, 0.2, 0.1, 0.1};
  EXPECT_EQ(partial_transpose(Matrix::diagonal(d)), Matrix::diagonal(d));
  EXPECT_THROW(partial_transpose(Matrix(4, 4)), DimensionMismatch);
}

TEST(PartialTranspose, CoherenceMovesToOuterSlot) {
  // The |-1,0>,|0,-1> coherence (indices 1 and 3) lands on the (0,4) / (4,0)
  // pair, i.e. between |-1,-1> and |0,0>, carrying the coupling phase.
  const ModelParams p = at(1.0, 1.0, 1.0, 0.0);
  const Matrix rho = gibbs_analytic(p, 0.5).rho;
  const Matrix pt = partial_transpose(rho);
  EXPECT_EQ(pt(4, 0), rho(1, 3));
  EXPECT_EQ(pt(0, 4), rho(3, 1));
  const double theta = effective_coupling(p).theta;
  const double phase = std::arg(-rho(1, 3));
  EXPECT_NEAR(phase, theta, 1e-12);
}

TEST(Negativity, ReferenceStates) {
  EXPECT_EQ(negativity((1.0 / 9.0) * Matrix::identity(9)).value, 0.0);

  const double s3 = 1.0 / std::sqrt(3.0);
  const auto ghz = basis_vec({{0, s3}, {4, s3}, {8, s3}});
  EXPECT_NEAR(negativity(projector(ghz)).value, 1.0, 1e-12);
  EXPECT_NEAR(pure_state_negativity_oracle(ghz), 1.0, 1e-15);

  const double h = 1.0 / std::sqrt(2.0);
  const auto pair = basis_vec({{basis_index(-1, 0), h}, {basis_index(0, -1), h}});
  const NegativityResult r = negativity(projector(pair));
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  ASSERT_EQ(r.negative_eigenvalues.size(), 1u);
  EXPECT_NEAR(r.negative_eigenvalues[0], -0.5, 1e-12);
  EXPECT_NEAR(pure_state_negativity_oracle(pair), 0.5, 1e-15);
  EXPECT_FALSE(r.exceeds_bound);
}

TEST(Negativity, ProductStatesAreExactlySeparable) {
  for (std::size_t i = 0; i < 9; ++i) {
    const auto v = basis_vec({{i, 1.0}});
    EXPECT_EQ(negativity(projector(v)).value, 0.0);
    EXPECT_EQ(pure_state_negativity_oracle(v), 0.0);
  }
}

TEST(Negativity, GroundStateClosedForm) {
  // The closed form a^2 + 2ab evaluates to 0.965988 here; see the notes on 0.967269.
  const ModelParams p = at(0.5, 1.0, 1.0, 0.0);
  const double n = negativity(thermal_state(p, 0.0).rho).value;
  EXPECT_NEAR(phi9_formula(p), 0.965987501203036, 1e-12);
  EXPECT_NEAR(n, phi9_formula(p), 1e-10);
  EXPECT_NEAR(n, pure_state_negativity_oracle(analytic_spectrum(p).vecs[8]), 1e-10);
}

TEST(Negativity, OracleAgreesOnAllNineEigenvectors) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const AnalyticSpectrum s = analytic_spectrum(random_params(rng));
    for (std::size_t k = 0; k < 9; ++k) {
      EXPECT_NEAR(negativity(projector(s.vecs[k])).value, pure_state_negativity_oracle(s.vecs[k]), 1e-10);
    }
  }
}

TEST(Negativity, MatchesEigenOracleOnThermalStates) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    const ModelParams p = random_params(rng);
    const double T = 0.05 + 0.05 * t;
    const Matrix rho = gibbs_analytic(p, T).rho;
    EXPECT_NEAR(negativity(rho).value, oracle::negativity(oracle::to_eigen(rho)), 1e-10);
    EXPECT_LT(subsystem_asymmetry(rho), 1e-10);
  }
}

TEST(Negativity, LocalUnitaryInvariance) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    const Matrix rho = gibbs_analytic(random_params(rng), 0.2).rho;
    const Matrix u = kron(random_unitary3(rng), random_unitary3(rng));
    const Matrix rotated = apply_conjugation(u, rho);
    EXPECT_NEAR(negativity(rho).value, negativity(rotated).value, 1e-9);
  }
}

TEST(Negativity, ParityInDzAndB) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 50; ++t) {
    const ModelParams p = random_params(rng);
    ModelParams flip_dz = p, flip_b = p;
    flip_dz.Dz = -p.Dz;
    flip_b.B = -p.B;
    const double T = 0.1 + 0.02 * t;
    const double n = negativity(gibbs_analytic(p, T).rho).value;
    EXPECT_NEAR(n, negativity(gibbs_analytic(flip_dz, T).rho).value, 1e-10);
    EXPECT_NEAR(n, negativity(gibbs_analytic(flip_b, T).rho).value, 1e-10);
  }
}

TEST(Negativity, InvalidStates) {
  EXPECT_THROW(negativity(Matrix::identity(9)), InvalidState);  // trace 9
  EXPECT_THROW(negativity(Matrix::identity(4)), InvalidState);
  Matrix nh = (1.0 / 9.0) * Matrix::identity(9);
  nh(0, 1) = 0.01;
  EXPECT_THROW(negativity(nh), InvalidState);
  std::vector<double> d(9, 0.0);
  d[0] = 1.5;
  d[1] = -0.5;
  EXPECT_THROW(negativity(Matrix::diagonal(d)), InvalidState);
  Matrix nan = (1.0 / 9.0) * Matrix::identity(9);
  nan(2, 2) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(negativity(nan), InvalidState);
}

TEST(PureStateOracle, Errors) {
  EXPECT_THROW(pure_state_negativity_oracle(basis_vec({{0, 2.0}})), InvalidState);
  const double h = 1.0 / std::sqrt(2.0);
  // |0,0> and |0,1> share the first index.
  EXPECT_THROW(pure_state_negativity_oracle(basis_vec({{4, h}, {5, h}})), UnsupportedStructure);
  EXPECT_THROW(pure_state_negativity_oracle(std::vector<Complex>(4)), DimensionMismatch);
}
