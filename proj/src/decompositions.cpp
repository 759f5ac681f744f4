#include "esdsim/decompositions.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace esd {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::size_t axis_slot(SignedAxis a) {
  const std::size_t axis = a.axis == Axis::X ? 0 : a.axis == Axis::Y ? 1 : 2;
  return axis * 2 + (a.sign > 0 ? 0 : 1);
}

PureState computational_basis_state(Eigen::Index dim, Eigen::Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

PureState bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(v));
}

}  // namespace

ProductDecomposition::ProductDecomposition(std::array<double, 36> weights)
    : weights_(weights) {
  double sum = 0.0;
  for (double& w : weights_) {
    require(w >= -1e-12, "ProductDecomposition: negative weight");
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "ProductDecomposition: weights do not sum to 1");
}

std::size_t ProductDecomposition::index_of(SignedAxis a, SignedAxis b) {
  return axis_slot(a) * 6 + axis_slot(b);
}

double ProductDecomposition::weight(SignedAxis a, SignedAxis b) const {
  return weights_[index_of(a, b)];
}

Matrix ProductDecomposition::reconstruct() const {
  Matrix rho = Matrix::Zero(4, 4);
  for (SignedAxis a : all_signed_axes())
    for (SignedAxis b : all_signed_axes())
      rho += weight(a, b) * tensor_product(pauli_matrix(a), pauli_matrix(b));
  return rho;
}

Matrix effective_pure_density(const EffectivePureParams& p) {
  require(p.epsilon >= 0.0 && p.epsilon <= 1.0, "effective_pure_density: epsilon outside [0,1]");
  const Eigen::Index d = p.target.dim();
  const auto& t = p.target.amplitudes();
  return (1.0 - p.epsilon) / static_cast<double>(d) * Matrix::Identity(d, d) +
         p.epsilon * (t * t.adjoint());
}

EnsembleComposition effective_bell_composition(double n_molecules, double epsilon) {
  require(n_molecules > 0.0, "effective_bell_composition: molecule count must be positive");
  require(epsilon >= 0.0 && epsilon <= 1.0, "effective_bell_composition: epsilon outside [0,1]");

  std::vector<Component> components;
  components.push_back({epsilon * n_molecules, bell_state()});
  const double per_basis = (1.0 - epsilon) * n_molecules / 4.0;
  for (Eigen::Index k = 0; k < 4; ++k)
    components.push_back({per_basis, computational_basis_state(4, k)});
  return EnsembleComposition(std::move(components));
}

ProductDecomposition braunstein_decomposition(double epsilon) {
  require(epsilon >= 0.0 && epsilon <= 1.0, "braunstein_decomposition: epsilon outside [0,1]");

  // w = (1 + 9 eps d_a s t delta_ab)/36 with d = (+1,-1,+1); the y axis flips
  // sign because Bell-state correlations are +XX, -YY, +ZZ.
  auto axis_parity = [](Axis a) { return a == Axis::Y ? -1.0 : 1.0; };

  std::array<double, 36> weights{};
  double min_weight = 0.0;
  for (SignedAxis a : all_signed_axes()) {
    for (SignedAxis b : all_signed_axes()) {
      double w = 1.0 / 36.0;
      if (a.axis == b.axis) {
        const double correlation =
            9.0 * epsilon * axis_parity(a.axis) * static_cast<double>(a.sign * b.sign);
        w = (1.0 + correlation) / 36.0;
      }
      weights[ProductDecomposition::index_of(a, b)] = w;
      min_weight = std::min(min_weight, w);
    }
  }
  if (min_weight < -1e-12)
    throw positivity_error("braunstein_decomposition: epsilon " + std::to_string(epsilon) +
                               " exceeds 1/9, minimum weight " + std::to_string(min_weight),
                           min_weight);
  return ProductDecomposition(weights);
}

EnsembleComposition decomposition_to_composition(const ProductDecomposition& d,
                                                 double n_molecules) {
  require(n_molecules > 0.0, "decomposition_to_composition: molecule count must be positive");
  std::vector<Component> components;
  for (SignedAxis a : all_signed_axes()) {
    for (SignedAxis b : all_signed_axes()) {
      const double count = n_molecules * d.weight(a, b);
      if (count == 0.0) continue;
      components.push_back({count, tensor_product(signed_axis_state(a), signed_axis_state(b))});
    }
  }
  return EnsembleComposition(std::move(components));
}

KickModel KickModel::uniform(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("KickModel: empty angle range");
  KickModel m;
  m.analytic_ = true;
  m.lo_ = lo;
  m.hi_ = hi;
  return m;
}

KickModel KickModel::quadrature(std::vector<double> nodes, std::vector<double> weights) {
  if (nodes.empty() || nodes.size() != weights.size())
    throw std::invalid_argument("KickModel: nodes and weights must match and be nonempty");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("KickModel: negative quadrature weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("KickModel: quadrature weights must sum to 1");
  KickModel m;
  m.nodes_ = std::move(nodes);
  m.weights_ = std::move(weights);
  return m;
}

Matrix random_kick_average(const Matrix& rho, const KickModel& kick) {
  require(rho.rows() == 2 && rho.cols() == 2, "random_kick_average: rho must be 2x2");
  require(is_hermitian(rho, kHermitianTol), "random_kick_average: rho is not Hermitian");
  require(std::abs(rho.trace().real() - 1.0) <= kHermitianTol,
          "random_kick_average: rho does not have unit trace");

  // K = diag(e^{i theta}, e^{-i theta}), so conjugation leaves the diagonal
  // alone and multiplies rho_01 by e^{2 i theta}.
  if (kick.analytic()) {
    const double span = kick.hi() - kick.lo();
    const Complex two_i(0.0, 2.0);
    Complex factor = (std::exp(two_i * kick.hi()) - std::exp(two_i * kick.lo())) / (two_i * span);
    if (std::abs(factor) <= 1e-14) factor = 0.0;  // full periods dephase exactly
    Matrix out = rho;
    out(0, 1) *= factor;
    out(1, 0) *= std::conj(factor);
    return out;
  }

  Matrix out = Matrix::Zero(2, 2);
  for (std::size_t k = 0; k < kick.nodes().size(); ++k) {
    const Complex phase = std::exp(Complex(0.0, kick.nodes()[k]));
    Matrix kmat(2, 2);
    kmat << phase, 0.0, 0.0, std::conj(phase);
    out += kick.weights()[k] * (kmat * rho * kmat.adjoint());
  }
  return out;
}

double gorter_t1(const GorterInput& g) {
  const int levels = static_cast<int>(g.energies.size());
  require(levels >= 2, "gorter_t1: need at least two levels");
  double energy_norm = 0.0;
  for (double e : g.energies) energy_norm += e * e;
  require(energy_norm > 0.0, "gorter_t1: sum of squared energies must be positive");

  double weighted_gaps = 0.0;
  for (const auto& [transition, rate] : g.rates) {
    const auto [n, m] = transition;
    require(n >= 0 && n < levels && m >= 0 && m < levels, "gorter_t1: level index out of range");
    require(rate >= 0.0, "gorter_t1: negative transition rate");
    const double gap = g.energies[static_cast<std::size_t>(m)] - g.energies[static_cast<std::size_t>(n)];
    weighted_gaps += rate * gap * gap;
  }

  const double relaxation_rate = 0.5 * weighted_gaps / energy_norm;
  if (relaxation_rate <= 0.0)
    throw std::domain_error("gorter_t1: no relaxation (all rates or all gaps vanish)");
  return 1.0 / relaxation_rate;
}

}  // namespace esd
