#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esdsim/ensemble.hpp"
#include "esdsim/observables.hpp"
#include "helpers.hpp"

#include <bit>
#include <cmath>

using namespace esd;
using namespace esd::testing;

TEST_CASE("single-qubit Z builder") {
  const auto z = sigma_z_single();
  CHECK(z.label == "Z");
  const auto dec = eigendecompose(z.per_molecule);
  REQUIRE(dec.eigenvalues.size() == 2);
  CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(dec.eigenvalues[1] == doctest::Approx(1.0));

  CHECK(fluctuation_proper(x_mixture(100), z.per_molecule).fluctuation ==
        doctest::Approx(10.0).epsilon(1e-12));
  CHECK(fluctuation_proper(z_mixture(100), z.per_molecule).fluctuation <= 1e-10);
}

TEST_CASE("two-qubit ZZ builder") {
  const auto zz = sigma_zz_pair();
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 1, -1, -1, 1;
  CHECK(max_abs_diff(zz.per_molecule.matrix(), expected) == 0.0);

  const EnsembleComposition phi({{60.0, bell_phi_plus()}});
  const EnsembleComposition psi({{60.0, bell_psi_plus()}});
  CHECK(ensemble_expectation(phi, zz.per_molecule) == doctest::Approx(60.0));
  CHECK(ensemble_expectation(psi, zz.per_molecule) == doctest::Approx(-60.0));
}

TEST_CASE("pairwise ZZ eigenvalues count aligned and opposed pairs") {
  CHECK(max_abs_diff(pairwise_zz(2).per_molecule.matrix(),
                     sigma_zz_pair().per_molecule.matrix()) == 0.0);

  const Matrix three = pairwise_zz(3).per_molecule.matrix();
  CHECK(three(0, 0).real() == doctest::Approx(3.0));  // |000>: C(3,2) aligned pairs

  const Matrix seven = pairwise_zz(7).per_molecule.matrix();
  CHECK(seven(0, 0).real() == doctest::Approx(21.0));  // C(7,2)

  // diagonal, and each entry matches the pair-counting formula
  for (Eigen::Index b = 0; b < three.rows(); ++b) {
    const int k = std::popcount(static_cast<unsigned>(b));
    const double aligned = k * (k - 1) / 2.0 + (3 - k) * (2 - k) / 2.0;
    const double opposed = static_cast<double>(k * (3 - k));
    CHECK(three(b, b).real() == doctest::Approx(aligned - opposed));
    for (Eigen::Index c = 0; c < three.cols(); ++c)
      if (b != c) CHECK(std::abs(three(b, c)) == 0.0);
  }

  CHECK_THROWS_AS(pairwise_zz(1), std::invalid_argument);
  CHECK_THROWS_AS(pairwise_zz(11), std::invalid_argument);
}

TEST_CASE("pairwise ZZ commutes with every single-qubit Z") {
  const Matrix op = pairwise_zz(3).per_molecule.matrix();
  for (const char* z_string : {"ZII", "IZI", "IIZ"}) {
    const Matrix z = pauli_string_matrix(z_string);
    CHECK(max_abs_diff(op * z, z * op) == 0.0);
  }
}

TEST_CASE("from_pauli_terms builds Hermitian combinations") {
  CHECK(max_abs_diff(from_pauli_terms(1, {{"Z", 1.0}}).per_molecule.matrix(),
                     pauli_matrix(Axis::Z)) == 0.0);
  CHECK(max_abs_diff(from_pauli_terms(2, {{"ZZ", 1.0}}).per_molecule.matrix(),
                     sigma_zz_pair().per_molecule.matrix()) == 0.0);

  // XX - YY + ZZ = 4 rho_Bell - I
  const auto combo =
      from_pauli_terms(2, {{"XX", 1.0}, {"YY", -1.0}, {"ZZ", 1.0}});
  const Vector bell = bell_phi_plus().amplitudes();
  const Matrix expected = 4.0 * (bell * bell.adjoint()) - Matrix::Identity(4, 4);
  CHECK(max_abs_diff(combo.per_molecule.matrix(), expected) <= 1e-12);

  CHECK_THROWS_AS(from_pauli_terms(2, {{"Z", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(from_pauli_terms(1, {{"Q", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(from_pauli_terms(0, {}), std::invalid_argument);
}

TEST_CASE("from_pauli_terms inverts pauli_expand") {
  SplitStream s(888);
  for (int n = 1; n <= 3; ++n) {
    const Matrix h = random_hermitian(s, Eigen::Index(1) << n);
    const auto rebuilt = from_pauli_terms(n, pauli_expand(h));
    CHECK(max_abs_diff(rebuilt.per_molecule.matrix(), h) <= 1e-10);
  }
}
