#pragma once

#include "esdsim/ensemble.hpp"
#include "esdsim/linalg.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace esd {

// Raised when a requested convex decomposition has a negative weight.
class positivity_error : public std::runtime_error {
 public:
  positivity_error(const std::string& what, double min_weight)
      : std::runtime_error(what), min_weight(min_weight) {}

  double min_weight;  // the most negative weight encountered
};

// Parameters of rho = (1-epsilon) M_d + epsilon |target><target|.
struct EffectivePureParams {
  double epsilon;   // polarization, in [0,1]
  PureState target;
};

// 36 nonnegative weights over pairs of signed-axis product states, summing
// to one. Entry order is fixed: axes x,y,z, sign + before -, left factor
// outermost.
class ProductDecomposition {
 public:
  explicit ProductDecomposition(std::array<double, 36> weights);

  static std::size_t index_of(SignedAxis a, SignedAxis b);
  double weight(SignedAxis a, SignedAxis b) const;
  const std::array<double, 36>& weights() const { return weights_; }

  // sum_{ij} w_ij P_i (x) P_j
  Matrix reconstruct() const;

 private:
  std::array<double, 36> weights_;
};

// (1-epsilon) I/d + epsilon |target><target|
Matrix effective_pure_density(const EffectivePureParams& p);

// The composition realizing the effective Bell state: epsilon*N molecules in
// (|00>+|11>)/sqrt(2) and (1-epsilon)*N/4 in each computational basis state.
EnsembleComposition effective_bell_composition(double n_molecules, double epsilon);

// Canonical symmetric product decomposition of the effective Bell state:
//   w_{(a,s),(b,t)} = (1 + 9 eps d_a s t delta_ab) / 36,  d = (+1,-1,+1).
// All weights are nonnegative iff eps <= 1/9; beyond that a positivity_error
// carries the most negative weight.
ProductDecomposition braunstein_decomposition(double epsilon);

// Composition with real-valued counts n*w_ij on the signed-axis product
// states. Counts are not rounded here; integer apportionment happens at the
// sampling boundary.
EnsembleComposition decomposition_to_composition(const ProductDecomposition& d,
                                                 double n_molecules);

// Distribution of the random kick angle theta (hbar = 1, so K = exp(i sigma_z theta)).
// Either an analytic uniform range or an explicit quadrature rule with
// nonnegative weights summing to one.
class KickModel {
 public:
  static KickModel uniform(double lo, double hi);
  static KickModel quadrature(std::vector<double> nodes, std::vector<double> weights);

  bool analytic() const { return analytic_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  KickModel() = default;

  bool analytic_ = false;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> nodes_, weights_;
};

// Average of K(theta) rho K(theta)^dagger over the kick distribution for a
// single qubit. The uniform-[0,2pi) case zeroes the off-diagonals exactly.
Matrix random_kick_average(const Matrix& rho, const KickModel& kick);

// Level energies and transition rates W[(n,m)] (from level n to level m);
// missing rate entries default to zero.
struct GorterInput {
  std::vector<double> energies;
  std::map<std::pair<int, int>, double> rates;
};

// T1 = 1 / ( (1/2) sum_{n,m} W_{n,m} (E_m - E_n)^2 / sum_n E_n^2 ).
// A zero total relaxation rate is reported as an error, not as infinity.
double gorter_t1(const GorterInput& g);

}  // namespace esd
