#pragma once

#include "esdsim/ensemble.hpp"
#include "esdsim/linalg.hpp"
#include "esdsim/rng.hpp"

#include <cmath>
#include <vector>

namespace esd::testing {

inline PureState ket(std::initializer_list<Complex> amplitudes) {
  Vector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (Complex a : amplitudes) v(i++) = a;
  return PureState(std::move(v));
}

inline PureState ket0() { return ket({1.0, 0.0}); }
inline PureState ket1() { return ket({0.0, 1.0}); }

inline PureState plus_x() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket({s, s});
}

inline PureState minus_x() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket({s, -s});
}

inline PureState bell_phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket({s, 0.0, 0.0, s});
}

inline PureState bell_psi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return ket({0.0, s, s, 0.0});
}

inline EnsembleComposition z_mixture(double n) {
  return EnsembleComposition({{n / 2, ket0()}, {n / 2, ket1()}});
}

inline EnsembleComposition x_mixture(double n) {
  return EnsembleComposition({{n / 2, plus_x()}, {n / 2, minus_x()}});
}

inline EnsembleComposition bb84_mixture(double n) {
  return EnsembleComposition(
      {{n / 4, ket0()}, {n / 4, ket1()}, {n / 4, plus_x()}, {n / 4, minus_x()}});
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline PureState random_state(SplitStream& s, Eigen::Index d) {
  Vector v(d);
  double norm2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i)
      v(i) = Complex(2.0 * s.uniform() - 1.0, 2.0 * s.uniform() - 1.0);
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-6);
  v /= std::sqrt(norm2);
  return PureState(std::move(v));
}

inline Matrix random_hermitian(SplitStream& s, Eigen::Index d) {
  Matrix r(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      r(i, j) = Complex(2.0 * s.uniform() - 1.0, 2.0 * s.uniform() - 1.0);
  return 0.5 * (r + Matrix(r.adjoint()));
}

inline Matrix random_density(SplitStream& s, Eigen::Index d) {
  Matrix rho = Matrix::Zero(d, d);
  for (int k = 0; k < 3; ++k) {
    const Vector psi = random_state(s, d).amplitudes();
    rho += (psi * psi.adjoint());
  }
  return rho / rho.trace();
}

inline EnsembleComposition random_integer_composition(SplitStream& s, Eigen::Index d,
                                                      long max_molecules) {
  const long m = 1 + static_cast<long>(s.next() % 3);
  std::vector<Component> components;
  long budget = max_molecules;
  for (long i = 0; i < m && budget > 0; ++i) {
    const long count = 1 + static_cast<long>(s.next() % static_cast<std::uint64_t>(budget));
    budget -= count;
    components.push_back({static_cast<double>(count), random_state(s, d)});
  }
  return EnsembleComposition(std::move(components));
}

// Independent partial-trace oracle: enumerate every entry of rho, decompose
// both indices into subsystem digits, and accumulate entries whose traced
// digits coincide. Structured deliberately unlike the library implementation.
inline Matrix partial_trace_by_enumeration(const Matrix& rho,
                                           const std::vector<Eigen::Index>& dims,
                                           const std::vector<std::size_t>& keep) {
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) kept[k] = true;

  Eigen::Index dim_keep = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (kept[k]) dim_keep *= dims[k];

  auto digits_of = [&](Eigen::Index index) {
    std::vector<Eigen::Index> digits(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      digits[k] = index % dims[k];
      index /= dims[k];
    }
    return digits;
  };
  auto kept_index = [&](const std::vector<Eigen::Index>& digits) {
    Eigen::Index out = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
      if (kept[k]) out = out * dims[k] + digits[k];
    return out;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const auto row_digits = digits_of(i);
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const auto col_digits = digits_of(j);
      bool traced_match = true;
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (!kept[k] && row_digits[k] != col_digits[k]) traced_match = false;
      if (traced_match) out(kept_index(row_digits), kept_index(col_digits)) += rho(i, j);
    }
  }
  return out;
}

}  // namespace esd::testing
