#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esdsim/ensemble.hpp"
#include "esdsim/observables.hpp"
#include "helpers.hpp"

#include <cmath>
#include <complex>

using namespace esd;
using namespace esd::testing;

namespace {

Matrix cnot_control0() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

}  // namespace

TEST_CASE("density matrices of the canonical mixtures") {
  const Matrix m2 = 0.5 * Matrix::Identity(2, 2);
  CHECK(max_abs_diff(density_matrix(z_mixture(100)), m2) <= 1e-12);
  CHECK(max_abs_diff(density_matrix(x_mixture(100)), m2) <= 1e-12);

  const EnsembleComposition pure({{100.0, ket0()}});
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  CHECK(max_abs_diff(density_matrix(pure), expected) <= 1e-12);
}

TEST_CASE("components equal up to a global phase merge on construction") {
  Vector rotated(2);
  rotated << std::polar(1.0, 1.2), 0.0;
  const EnsembleComposition comp({{1.0, ket0()}, {2.0, PureState(rotated)}, {3.0, ket1()}});
  CHECK(comp.components().size() == 2);
  CHECK(comp.components()[0].count == doctest::Approx(3.0));
  CHECK(comp.total_molecules() == doctest::Approx(6.0));
}

TEST_CASE("zero-count components are dropped") {
  const EnsembleComposition comp({{0.0, ket0()}, {5.0, ket1()}});
  CHECK(comp.components().size() == 1);
  CHECK_THROWS_AS(EnsembleComposition({{0.0, ket0()}}), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleComposition({{-1.0, ket0()}}), std::invalid_argument);
}

TEST_CASE("molecule and ensemble expectations") {
  const HermitianObservable z(pauli_matrix(Axis::Z));
  const Matrix m2 = 0.5 * Matrix::Identity(2, 2);
  CHECK(molecule_expectation(m2, z) == doctest::Approx(0.0));

  const Vector k0 = ket0().amplitudes();
  CHECK(molecule_expectation(k0 * k0.adjoint(), z) == doctest::Approx(1.0));

  const Vector bell = bell_phi_plus().amplitudes();
  const HermitianObservable zz(
      tensor_product(pauli_matrix(Axis::Z), pauli_matrix(Axis::Z)));
  CHECK(molecule_expectation(bell * bell.adjoint(), zz) == doctest::Approx(1.0));

  CHECK(ensemble_expectation(z_mixture(100), z) == doctest::Approx(0.0));
  CHECK(ensemble_expectation(EnsembleComposition({{100.0, ket0()}}), z) == doctest::Approx(100.0));

  // the improper-pair example: |01>+|10> is the -1 eigenstate of ZZ
  const EnsembleComposition psi_plus_comp({{80.0, bell_psi_plus()}});
  CHECK(ensemble_expectation(psi_plus_comp, zz) == doctest::Approx(-80.0));
  CHECK_THROWS_AS(molecule_expectation(m2, zz), std::invalid_argument);
}

TEST_CASE("collective fluctuations of the canonical mixtures") {
  const HermitianObservable z(pauli_matrix(Axis::Z));
  CHECK(fluctuation_proper(z_mixture(100), z).fluctuation <= 1e-10);
  CHECK(fluctuation_proper(x_mixture(100), z).fluctuation == doctest::Approx(10.0).epsilon(1e-12));

  const HermitianObservable x(pauli_matrix(Axis::X));
  CHECK(fluctuation_proper(bb84_mixture(100), x).fluctuation ==
        doctest::Approx(std::sqrt(50.0)).epsilon(1e-12));

  // per-component contributions: (z states) 1 each, (x states) 0
  const auto report = fluctuation_proper(bb84_mixture(100), x);
  REQUIRE(report.per_component_variance.size() == 4);
  CHECK(report.per_component_variance[0] == doctest::Approx(25.0));
  CHECK(report.per_component_variance[1] == doctest::Approx(25.0));
  CHECK(report.per_component_variance[2] == doctest::Approx(0.0));
  CHECK(report.per_component_variance[3] == doctest::Approx(0.0));
}

TEST_CASE("fluctuation report satisfies its variance-sum invariant") {
  SplitStream s(111);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = (s.next() % 2 == 0) ? 2 : 4;
    const EnsembleComposition comp = random_integer_composition(s, d, 6);
    const HermitianObservable omega(random_hermitian(s, d));
    const auto report = fluctuation_proper(comp, omega);
    double sum = 0.0;
    for (double v : report.per_component_variance) sum += v;
    CHECK(report.fluctuation * report.fluctuation ==
          doctest::Approx(sum).epsilon(1e-9));
  }
}

TEST_CASE("identical-mixed fluctuation and the proper-mixture contrast") {
  const HermitianObservable z(pauli_matrix(Axis::Z));
  const Matrix m2 = 0.5 * Matrix::Identity(2, 2);
  const IdenticalMixedEnsemble mixed(100.0, m2);
  CHECK(fluctuation_identical_mixed(mixed, z) == doctest::Approx(10.0).epsilon(1e-12));

  const Vector k0 = ket0().amplitudes();
  const IdenticalMixedEnsemble pure(50.0, k0 * k0.adjoint());
  CHECK(fluctuation_identical_mixed(pure, z) <= 1e-10);

  // same density matrix M2, yet the composition fluctuation differs
  CHECK(fluctuation_proper(z_mixture(100), z).fluctuation <= 1e-10);
  CHECK(max_abs_diff(density_matrix(z_mixture(100)), m2) <= 1e-12);
}

TEST_CASE("single-state compositions agree with the identical-mixed formula") {
  SplitStream s(222);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index d = (s.next() % 2 == 0) ? 2 : 4;
    const PureState psi = random_state(s, d);
    const HermitianObservable omega(random_hermitian(s, d));
    const double n = 1.0 + 20.0 * s.uniform();

    const double proper =
        fluctuation_proper(EnsembleComposition({{n, psi}}), omega).fluctuation;
    const auto& amp = psi.amplitudes();
    const double mixed =
        fluctuation_identical_mixed(IdenticalMixedEnsemble(n, amp * amp.adjoint()), omega);
    CHECK(proper == doctest::Approx(mixed).epsilon(1e-10));
  }
}

TEST_CASE("same_density_matrix distinguishes compositions, not preparations") {
  CHECK(same_density_matrix(z_mixture(100), x_mixture(100)));
  CHECK_FALSE(same_density_matrix(z_mixture(100), EnsembleComposition({{100.0, ket0()}})));
  CHECK_THROWS_AS(
      same_density_matrix(z_mixture(10), EnsembleComposition({{10.0, bell_phi_plus()}})),
      std::invalid_argument);
}

TEST_CASE("full product state layout and norm") {
  const auto psi = full_product_state(EnsembleComposition({{1.0, ket0()}, {1.0, ket1()}}));
  REQUIRE(psi.dim() == 4);
  CHECK(std::abs(psi.amplitudes()(1) - Complex(1.0)) <= 1e-12);  // |01>

  const auto xx = full_product_state(EnsembleComposition({{2.0, plus_x()}}));
  REQUIRE(xx.dim() == 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    CHECK(xx.amplitudes()(i).real() == doctest::Approx(0.5));

  SplitStream s(333);
  for (int trial = 0; trial < 5; ++trial) {
    const auto comp = random_integer_composition(s, 2, 6);
    CHECK(std::abs(full_product_state(comp).amplitudes().norm() - 1.0) <= 1e-10);
  }
}

TEST_CASE("full product state rejects bad inputs") {
  CHECK_THROWS_AS(full_product_state(EnsembleComposition({{1.5, ket0()}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(full_product_state(EnsembleComposition({{21.0, ket0()}})),
                  std::invalid_argument);  // 2^21 over the cap
}

TEST_CASE("oracle on the canonical mixtures at N=4") {
  const HermitianObservable z(pauli_matrix(Axis::Z));
  const auto s1 = oracle_fluctuation(z_mixture(4), z);
  CHECK(std::abs(s1.expectation) <= 1e-10);
  CHECK(s1.fluctuation <= 1e-10);

  const auto s2 = oracle_fluctuation(x_mixture(4), z);
  CHECK(std::abs(s2.expectation) <= 1e-10);
  CHECK(s2.fluctuation == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("oracle agrees with the composition formula on random inputs") {
  SplitStream s(444);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index d = (s.next() % 2 == 0) ? 2 : 4;
    const EnsembleComposition comp = random_integer_composition(s, d, 5);
    const HermitianObservable omega(random_hermitian(s, d));
    const auto exact = fluctuation_proper(comp, omega);
    const auto oracle = oracle_fluctuation(comp, omega);
    CHECK(std::abs(exact.fluctuation - oracle.fluctuation) <= 1e-8);
    CHECK(std::abs(exact.expectation_ensemble - oracle.expectation) <= 1e-8);
  }
}

TEST_CASE("apply_unitary maps components and recanonicalizes") {
  const EnsembleComposition comp({{10.0, tensor_product(plus_x(), ket0())}});
  CHECK(entanglement_census(comp) == doctest::Approx(0.0));

  const EnsembleComposition after = apply_unitary(comp, cnot_control0());
  REQUIRE(after.components().size() == 1);
  CHECK(max_abs_diff(Matrix(after.components()[0].state.amplitudes()),
                     Matrix(bell_phi_plus().amplitudes())) <= 1e-12);
  CHECK(entanglement_census(after) == doctest::Approx(1.0));

  const EnsembleComposition same = apply_unitary(comp, Matrix::Identity(4, 4));
  CHECK(same.components().size() == comp.components().size());

  Matrix not_unitary = Matrix::Identity(4, 4);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(apply_unitary(comp, not_unitary), std::invalid_argument);
}

TEST_CASE("apply_unitary keeps counts and canonical form") {
  Matrix u = Matrix::Zero(2, 2);  // phase gate diag(1, i)
  u(0, 0) = 1.0;
  u(1, 1) = Complex(0.0, 1.0);
  const EnsembleComposition comp({{1.0, ket0()}, {2.0, ket0()}});
  REQUIRE(comp.components().size() == 1);  // merged on construction
  const auto mapped = apply_unitary(comp, u);
  CHECK(mapped.components().size() == 1);
  CHECK(mapped.total_molecules() == doctest::Approx(3.0));
}

TEST_CASE("density matrix transforms by conjugation under apply_unitary") {
  SplitStream s(555);
  for (int trial = 0; trial < 5; ++trial) {
    const EnsembleComposition comp = random_integer_composition(s, 4, 6);
    const Matrix u = cnot_control0();
    const Matrix direct = density_matrix(apply_unitary(comp, u));
    const Matrix conjugated = u * density_matrix(comp) * u.adjoint();
    CHECK(max_abs_diff(direct, conjugated) <= 1e-10);
  }
}

TEST_CASE("entanglement census requires two-qubit molecules") {
  CHECK_THROWS_AS(entanglement_census(z_mixture(4)), std::invalid_argument);
}

TEST_CASE("scaling counts scales expectation linearly and fluctuation by sqrt") {
  SplitStream s(666);
  for (int trial = 0; trial < 5; ++trial) {
    const EnsembleComposition comp = random_integer_composition(s, 2, 6);
    const HermitianObservable omega(random_hermitian(s, 2));
    const double k = 0.5 + 4.0 * s.uniform();

    std::vector<Component> scaled_components;
    for (const Component& c : comp.components())
      scaled_components.push_back({k * c.count, c.state});
    const EnsembleComposition scaled(std::move(scaled_components));

    const auto base = fluctuation_proper(comp, omega);
    const auto grown = fluctuation_proper(scaled, omega);
    CHECK(grown.expectation_ensemble ==
          doctest::Approx(k * base.expectation_ensemble).epsilon(1e-10));
    CHECK(grown.fluctuation == doctest::Approx(std::sqrt(k) * base.fluctuation).epsilon(1e-10));
  }
}

TEST_CASE("fluctuation vanishes exactly when every component is an eigenvector") {
  SplitStream s(777);
  const HermitianObservable omega(random_hermitian(s, 4));
  const auto dec = eigendecompose(omega);

  // components built from eigenvectors: fluctuation ~ 0
  std::vector<Component> eigen_components;
  for (const Matrix& p : dec.eigenprojectors) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(p);
    Vector v = solver.eigenvectors().col(p.rows() - 1);  // eigenvalue-1 direction
    v.normalize();
    eigen_components.push_back({2.0, PureState(std::move(v))});
  }
  const EnsembleComposition aligned(std::move(eigen_components));
  CHECK(fluctuation_proper(aligned, omega).fluctuation <= 1e-7);

  // a non-eigenvector component forces a strictly positive fluctuation
  for (int trial = 0; trial < 5; ++trial) {
    const PureState psi = random_state(s, 4);
    const Vector residual =
        omega.matrix() * psi.amplitudes() -
        psi.amplitudes().dot(omega.matrix() * psi.amplitudes()) * psi.amplitudes();
    const double fluct =
        fluctuation_proper(EnsembleComposition({{3.0, psi}}), omega).fluctuation;
    if (residual.norm() > 1e-9)
      CHECK(fluct > 1e-9);
    else
      CHECK(fluct <= 1e-9);
  }
}

TEST_CASE("radicand guard distinguishes roundoff from corruption") {
  // a tiny negative radicand is clamped; the guarded path needs a logic bug
  // to trigger, so only the clamp is observable here
  const HermitianObservable z(pauli_matrix(Axis::Z));
  const auto report = fluctuation_proper(EnsembleComposition({{1e6, ket0()}}), z);
  CHECK(report.fluctuation == 0.0);
}
