#include "esdsim/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace esd {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Unit vectors are equal up to a global phase iff aligning the phase through
// the overlap makes them equal entrywise.
bool equal_up_to_phase(const Vector& a, const Vector& b, double tol) {
  const Complex overlap = a.dot(b);  // <a|b>
  const double mag = std::abs(overlap);
  if (mag < 0.5) return false;
  const Complex phase = overlap / mag;
  return (b - phase * a).cwiseAbs().maxCoeff() <= tol;
}

// Applies a d x d operator to one molecule slot of a d^n state vector.
// Big-endian slot order: slot 0 owns the highest stride.
Vector apply_single_slot(const Matrix& op, const Vector& v, Eigen::Index slot,
                         Eigen::Index n_slots, Eigen::Index d) {
  Eigen::Index stride = 1;
  for (Eigen::Index k = slot + 1; k < n_slots; ++k) stride *= d;
  const Eigen::Index block = stride * d;

  Vector out = Vector::Zero(v.size());
  std::vector<Complex> in(static_cast<std::size_t>(d));
  for (Eigen::Index base = 0; base < v.size(); base += block) {
    for (Eigen::Index r = 0; r < stride; ++r) {
      for (Eigen::Index j = 0; j < d; ++j) in[static_cast<std::size_t>(j)] = v(base + j * stride + r);
      for (Eigen::Index i = 0; i < d; ++i) {
        Complex acc = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) acc += op(i, j) * in[static_cast<std::size_t>(j)];
        out(base + i * stride + r) = acc;
      }
    }
  }
  return out;
}

}  // namespace

EnsembleComposition::EnsembleComposition(std::vector<Component> components) {
  require(!components.empty(), "EnsembleComposition: no components");
  const Eigen::Index d = components.front().state.dim();
  for (const Component& c : components) {
    require(c.state.dim() == d, "EnsembleComposition: states of mixed dimensions");
    require(std::isfinite(c.count) && c.count >= 0.0,
            "EnsembleComposition: counts must be finite and nonnegative");
  }

  for (Component& c : components) {
    if (c.count == 0.0) continue;
    bool merged = false;
    for (Component& existing : components_) {
      if (equal_up_to_phase(existing.state.amplitudes(), c.state.amplitudes(), 1e-10)) {
        existing.count += c.count;
        merged = true;
        break;
      }
    }
    if (!merged) components_.push_back(std::move(c));
  }

  for (const Component& c : components_) total_ += c.count;
  require(total_ > 0.0, "EnsembleComposition: total molecule count must be positive");
}

bool EnsembleComposition::has_integral_counts(double tol) const {
  return std::all_of(components_.begin(), components_.end(), [tol](const Component& c) {
    return std::abs(c.count - std::round(c.count)) <= tol;
  });
}

IdenticalMixedEnsemble::IdenticalMixedEnsemble(double n_molecules, Matrix rho)
    : n_molecules_(n_molecules), rho_(std::move(rho)) {
  require(std::isfinite(n_molecules_) && n_molecules_ > 0.0,
          "IdenticalMixedEnsemble: molecule count must be positive");
  require(rho_.rows() == rho_.cols(), "IdenticalMixedEnsemble: rho is not square");
  require(is_hermitian(rho_, kHermitianTol), "IdenticalMixedEnsemble: rho is not Hermitian");
  require(std::abs(rho_.trace().real() - 1.0) <= kHermitianTol &&
              std::abs(rho_.trace().imag()) <= kHermitianTol,
          "IdenticalMixedEnsemble: rho does not have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  require(solver.eigenvalues().minCoeff() >= -1e-9,
          "IdenticalMixedEnsemble: rho is not positive semidefinite");
}

Matrix density_matrix(const EnsembleComposition& comp) {
  const Eigen::Index d = comp.dim();
  Matrix rho = Matrix::Zero(d, d);
  const double n = comp.total_molecules();
  for (const Component& c : comp.components()) {
    const auto& psi = c.state.amplitudes();
    rho += (c.count / n) * (psi * psi.adjoint());
  }
  return rho;
}

double molecule_expectation(const Matrix& rho, const HermitianObservable& a) {
  if (rho.rows() != a.dim() || rho.cols() != a.dim())
    throw std::invalid_argument("molecule_expectation: dimension mismatch");
  return (rho * a.matrix()).trace().real();
}

double ensemble_expectation(const EnsembleComposition& comp, const HermitianObservable& a) {
  return comp.total_molecules() * molecule_expectation(density_matrix(comp), a);
}

FluctuationReport fluctuation_proper(const EnsembleComposition& comp,
                                     const HermitianObservable& omega) {
  if (comp.dim() != omega.dim())
    throw std::invalid_argument("fluctuation_proper: dimension mismatch");

  FluctuationReport report;
  double radicand = 0.0;
  for (const Component& c : comp.components()) {
    const auto& psi = c.state.amplitudes();
    const Vector omega_psi = omega.matrix() * psi;
    const double mean = psi.dot(omega_psi).real();  // <psi|Omega|psi>
    // <Omega^2> - <Omega>^2 as |(Omega - <Omega>)psi|^2: same value for unit
    // states, but exactly zero on eigenstates instead of sqrt-amplified
    // cancellation noise.
    const double variance = c.count * (omega_psi - mean * psi).squaredNorm();
    report.per_component_variance.push_back(variance);
    report.expectation_ensemble += c.count * mean;
    radicand += variance;
  }

  if (radicand < -kRadicandTol)
    throw numerical_inconsistency("fluctuation_proper: negative radicand " +
                                  std::to_string(radicand));
  report.fluctuation = std::sqrt(std::max(radicand, 0.0));
  return report;
}

double fluctuation_identical_mixed(const IdenticalMixedEnsemble& ens,
                                   const HermitianObservable& omega) {
  if (ens.rho().rows() != omega.dim())
    throw std::invalid_argument("fluctuation_identical_mixed: dimension mismatch");
  const Matrix& w = omega.matrix();
  const double first = (ens.rho() * w).trace().real();
  // Tr(rho Omega^2) - Tr(rho Omega)^2 = Tr(rho (Omega - <Omega>)^2), which
  // vanishes exactly when rho is an eigenprojector.
  const Matrix centered = w - first * Matrix::Identity(w.rows(), w.cols());
  const double radicand = ens.n_molecules() * (ens.rho() * centered * centered).trace().real();
  if (radicand < -kRadicandTol)
    throw numerical_inconsistency("fluctuation_identical_mixed: negative radicand " +
                                  std::to_string(radicand));
  return std::sqrt(std::max(radicand, 0.0));
}

bool same_density_matrix(const EnsembleComposition& a, const EnsembleComposition& b,
                         double tol) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("same_density_matrix: dimension mismatch");
  return (density_matrix(a) - density_matrix(b)).cwiseAbs().maxCoeff() <= tol;
}

PureState full_product_state(const EnsembleComposition& comp) {
  if (!comp.has_integral_counts())
    throw std::invalid_argument("full_product_state: counts must be integral");
  const double d = static_cast<double>(comp.dim());

  double total_dim = 1.0;
  for (const Component& c : comp.components()) {
    total_dim *= std::pow(d, c.count);
    if (total_dim > kOracleDimCap)
      throw std::invalid_argument("full_product_state: d^N exceeds the 2^20 cap");
  }

  Vector state = Vector::Ones(1);
  for (const Component& c : comp.components()) {
    const long n = std::lround(c.count);
    const auto& psi = c.state.amplitudes();
    for (long k = 0; k < n; ++k) {
      Vector next(state.size() * psi.size());
      for (Eigen::Index i = 0; i < state.size(); ++i)
        next.segment(i * psi.size(), psi.size()) = state(i) * psi;
      state = std::move(next);
    }
  }
  return PureState(std::move(state));
}

OracleResult oracle_fluctuation(const EnsembleComposition& comp,
                                const HermitianObservable& omega) {
  if (comp.dim() != omega.dim())
    throw std::invalid_argument("oracle_fluctuation: dimension mismatch");
  const PureState psi = full_product_state(comp);
  const Eigen::Index d = comp.dim();

  long n_slots = 0;
  for (const Component& c : comp.components()) n_slots += std::lround(c.count);

  // s = sum_m Omega(m) |psi>; then <Sigma> = <psi|s> and <Sigma^2> = <s|s>.
  Vector s = Vector::Zero(psi.dim());
  for (long m = 0; m < n_slots; ++m)
    s += apply_single_slot(omega.matrix(), psi.amplitudes(), m, n_slots, d);

  const double expectation = psi.amplitudes().dot(s).real();
  // <Sigma^2> - <Sigma>^2 via the residual |s - <Sigma> psi|^2, exact on
  // collective eigenstates.
  const double variance = (s - expectation * psi.amplitudes()).squaredNorm();
  return {expectation, std::sqrt(std::max(variance, 0.0))};
}

EnsembleComposition apply_unitary(const EnsembleComposition& comp, const Matrix& u) {
  if (u.rows() != comp.dim() || u.cols() != comp.dim())
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  if (!is_unitary(u, kUnitaryTol))
    throw std::invalid_argument("apply_unitary: matrix is not unitary within 1e-10");

  std::vector<Component> mapped;
  mapped.reserve(comp.components().size());
  for (const Component& c : comp.components()) {
    Vector amp = u * c.state.amplitudes();
    amp.normalize();  // remove roundoff drift before the norm check
    mapped.push_back({c.count, PureState(std::move(amp))});
  }
  return EnsembleComposition(std::move(mapped));
}

double entanglement_census(const EnsembleComposition& comp) {
  if (comp.dim() != 4)
    throw std::invalid_argument("entanglement_census: only 2-qubit molecules supported");
  double entangled = 0.0;
  for (const Component& c : comp.components())
    if (concurrence(c.state) > 1e-9) entangled += c.count;
  return entangled / comp.total_molecules();
}

}  // namespace esd
