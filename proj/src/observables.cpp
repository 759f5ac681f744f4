#include "esdsim/observables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace esd {

CollectiveObservable sigma_z_single() {
  return {"Z", HermitianObservable(pauli_matrix(Axis::Z))};
}

CollectiveObservable sigma_zz_pair() {
  return {"ZZ", HermitianObservable(tensor_product(pauli_matrix(Axis::Z), pauli_matrix(Axis::Z)))};
}

CollectiveObservable pairwise_zz(int n_qubits) {
  if (n_qubits < 2 || n_qubits > 10)
    throw std::invalid_argument("pairwise_zz: qubit count must be in [2, 10]");
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    // sum_{a<c} z_a z_c with z in {+1,-1}: ((n-2k)^2 - n)/2 for k set bits.
    const int k = std::popcount(static_cast<unsigned long long>(b));
    const double spin_sum = static_cast<double>(n_qubits - 2 * k);
    m(b, b) = (spin_sum * spin_sum - n_qubits) / 2.0;
  }
  return {"pairwise-zz(" + std::to_string(n_qubits) + ")", HermitianObservable(std::move(m))};
}

CollectiveObservable from_pauli_terms(int n_qubits,
                                      const std::map<std::string, double>& terms) {
  if (n_qubits < 1 || n_qubits > 10)
    throw std::invalid_argument("from_pauli_terms: qubit count must be in [1, 10]");
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  std::string label;
  for (const auto& [pauli, coeff] : terms) {
    if (static_cast<int>(pauli.size()) != n_qubits)
      throw std::invalid_argument("from_pauli_terms: string '" + pauli +
                                  "' does not have one character per qubit");
    if (!std::isfinite(coeff))
      throw std::invalid_argument("from_pauli_terms: coefficient must be a finite real");
    m += coeff * pauli_string_matrix(pauli);
    if (!label.empty()) label += "+";
    label += pauli;
  }
  return {label.empty() ? std::string("0") : label, HermitianObservable(std::move(m))};
}

}  // namespace esd
