#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

namespace esd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Absolute entrywise tolerances. Small dense matrices at double precision:
// construction-level checks at 1e-10, eigenvalue clustering at 1e-9.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEigenMergeTol = 1e-9;

enum class Axis { X, Y, Z };

// One of the six polarization directions. The projector convention is
// P = (I + sign*sigma_axis)/2, i.e. sign = +1 projects onto the +axis state.
struct SignedAxis {
  Axis axis;
  int sign;  // +1 or -1
};

const std::array<SignedAxis, 6>& all_signed_axes();
std::string to_string(SignedAxis a);  // "x+", "y-", ...
bool operator==(SignedAxis a, SignedAxis b);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);
bool is_unitary(const Matrix& m, double tol = kUnitaryTol);

// Unit-norm complex amplitude vector over a d-dimensional Hilbert space.
class PureState {
 public:
  explicit PureState(Vector amplitudes);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  Vector amplitudes_;
};

// d x d complex Hermitian matrix (checked entrywise on construction).
class HermitianObservable {
 public:
  explicit HermitianObservable(Matrix matrix);

  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

// Eigenvalues merged into eigenspaces: values strictly increasing, projectors
// Hermitian, idempotent, mutually orthogonal, summing to identity.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Matrix> eigenprojectors;
};

// Kronecker product. Convention: left factor is qubit 0 (big-endian), basis
// index b = sum_k bit_k * 2^(n-1-k).
Matrix tensor_product(const Matrix& a, const Matrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

// Reduced density matrix on the subsystems listed in `keep`. `dims` gives the
// dimension of each subsystem, most significant (index 0) first.
Matrix partial_trace(const Matrix& rho, const std::vector<Eigen::Index>& dims,
                     const std::vector<std::size_t>& keep);

Matrix pauli_matrix(Axis a);
// Projector (I + sign*sigma_axis)/2 onto the signed-axis polarized state.
Matrix pauli_matrix(SignedAxis a);
// The polarized pure state itself: z+ -> |0>, x- -> (|0>-|1>)/sqrt(2), ...
PureState signed_axis_state(SignedAxis a);

// Dense matrix of a Pauli string such as "IXZ" (one char per qubit, qubit 0
// first). Strings are limited to 10 qubits.
Matrix pauli_string_matrix(const std::string& s);

// Coefficients c_P = Tr(rho P) / 2^n over all 4^n Pauli strings, so that
// rho = sum_P c_P P. Rejects non-Hermitian input; imaginary residue below
// 1e-10 is discarded.
std::map<std::string, double> pauli_expand(const Matrix& rho);

// Eigenspace decomposition with eigenvalues merged when closer than 1e-9.
EigenDecomposition eigendecompose(const HermitianObservable& omega);

// Two-qubit pure-state entanglement: 2|ad - bc| for amplitudes (a,b,c,d).
double concurrence(const PureState& psi);

}  // namespace esd
