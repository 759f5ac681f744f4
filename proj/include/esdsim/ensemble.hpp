#pragma once

#include "esdsim/linalg.hpp"

#include <stdexcept>
#include <vector>

namespace esd {

// Raised when a variance radicand comes out below -1e-9: that indicates a
// logic bug rather than roundoff (tiny negatives are clamped to zero).
class numerical_inconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRadicandTol = 1e-9;

// Largest full-space dimension d^N the product-state oracle will touch.
inline constexpr double kOracleDimCap = 1048576.0;  // 2^20

struct Component {
  double count;     // number of molecules, nonnegative, not necessarily integral
  PureState state;  // all components of one composition share a dimension
};

// The full preparation record of an ensemble: (count, pure state) pairs.
// Canonical form: zero-count components dropped, states equal up to a global
// phase merged (a duplicated state is physically one component).
class EnsembleComposition {
 public:
  explicit EnsembleComposition(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  double total_molecules() const { return total_; }
  Eigen::Index dim() const { return components_.front().state.dim(); }
  bool has_integral_counts(double tol = 1e-9) const;

 private:
  std::vector<Component> components_;
  double total_ = 0.0;
};

// N molecules each in the same (possibly mixed) per-molecule state rho.
class IdenticalMixedEnsemble {
 public:
  IdenticalMixedEnsemble(double n_molecules, Matrix rho);

  double n_molecules() const { return n_molecules_; }
  const Matrix& rho() const { return rho_; }

 private:
  double n_molecules_;
  Matrix rho_;
};

struct FluctuationReport {
  double expectation_ensemble = 0.0;  // N * Tr(rho Omega)
  double fluctuation = 0.0;           // sqrt of the summed per-component variances
  std::vector<double> per_component_variance;  // N_i * (<Omega^2>_i - <Omega>_i^2)
};

struct OracleResult {
  double expectation;
  double fluctuation;
};

// rho = sum_i (N_i / N) |psi_i><psi_i|
Matrix density_matrix(const EnsembleComposition& comp);

// Tr(rho A). Imaginary residue below 1e-10 is discarded.
double molecule_expectation(const Matrix& rho, const HermitianObservable& a);

// N * Tr(rho A)
double ensemble_expectation(const EnsembleComposition& comp, const HermitianObservable& a);

// Collective fluctuation of the composition:
//   sqrt( sum_i N_i (<psi_i|Omega^2|psi_i> - <psi_i|Omega|psi_i>^2) ).
// Depends on the composition, not just on its density matrix.
FluctuationReport fluctuation_proper(const EnsembleComposition& comp,
                                     const HermitianObservable& omega);

// Fluctuation when every molecule is itself in the mixed state rho:
//   sqrt( N Tr(rho Omega^2) - N (Tr(rho Omega))^2 ).
double fluctuation_identical_mixed(const IdenticalMixedEnsemble& ens,
                                   const HermitianObservable& omega);

bool same_density_matrix(const EnsembleComposition& a, const EnsembleComposition& b,
                         double tol = 1e-10);

// |psi> = |psi_1>^(x)N_1 (x) |psi_2>^(x)N_2 (x) ... in component order.
// Requires integral counts and d^N <= 2^20.
PureState full_product_state(const EnsembleComposition& comp);

// Expectation and fluctuation of the collective observable computed on the
// full product state. The d^N x d^N operator is never materialized; the
// per-molecule operator is applied slot by slot to the state vector. This is
// the independent cross-check for fluctuation_proper.
OracleResult oracle_fluctuation(const EnsembleComposition& comp,
                                const HermitianObservable& omega);

// Maps every component state through U and re-canonicalizes (components may
// merge or split counts stay put). Rejects non-unitary U.
EnsembleComposition apply_unitary(const EnsembleComposition& comp, const Matrix& u);

// Fraction of molecules whose component state has concurrence > 1e-9.
// Only 2-qubit molecules (d = 4) are supported.
double entanglement_census(const EnsembleComposition& comp);

}  // namespace esd
