#pragma once

#include "esdsim/linalg.hpp"

#include <map>
#include <string>

namespace esd {

// A collective observable is the sum over all molecules of one per-molecule
// operator. Only the per-molecule operator is stored; expectations and
// fluctuations never need the N-fold sum itself.
struct CollectiveObservable {
  std::string label;
  HermitianObservable per_molecule;
};

// Per-molecule sigma_z on single-qubit molecules.
CollectiveObservable sigma_z_single();

// Per-molecule sigma_z (x) sigma_z on two-qubit molecules.
CollectiveObservable sigma_zz_pair();

// Per-molecule sum_{a<b} sigma_{a,z} sigma_{b,z} over n qubits (2 <= n <= 10).
// Diagonal: the entry for a bitstring with k ones is ((n-2k)^2 - n)/2.
CollectiveObservable pairwise_zz(int n_qubits);

// Hermitian per-molecule operator sum_P c_P P from real Pauli-string
// coefficients. Strings use the alphabet {I,X,Y,Z}, qubit 0 first.
CollectiveObservable from_pauli_terms(int n_qubits, const std::map<std::string, double>& terms);

}  // namespace esd
