#include "esdsim/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace esd {

namespace {

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

const std::array<SignedAxis, 6>& all_signed_axes() {
  static const std::array<SignedAxis, 6> axes = {{
      {Axis::X, +1}, {Axis::X, -1},
      {Axis::Y, +1}, {Axis::Y, -1},
      {Axis::Z, +1}, {Axis::Z, -1},
  }};
  return axes;
}

std::string to_string(SignedAxis a) {
  const char axis = a.axis == Axis::X ? 'x' : a.axis == Axis::Y ? 'y' : 'z';
  return std::string{axis, a.sign >= 0 ? '+' : '-'};
}

bool operator==(SignedAxis a, SignedAxis b) {
  return a.axis == b.axis && a.sign == b.sign;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix gram = m.adjoint() * m;
  gram -= Matrix::Identity(m.rows(), m.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  require(amplitudes_.size() > 0, "PureState: empty amplitude vector");
  require(amplitudes_.allFinite(), "PureState: non-finite amplitude");
  const double norm2 = amplitudes_.squaredNorm();
  require(std::abs(norm2 - 1.0) <= 2 * kNormTol,
          "PureState: amplitudes are not unit-norm (|psi|^2 = " + std::to_string(norm2) + ")");
}

HermitianObservable::HermitianObservable(Matrix matrix) : matrix_(std::move(matrix)) {
  require(matrix_.rows() == matrix_.cols(), "HermitianObservable: matrix is not square");
  require(all_finite(matrix_), "HermitianObservable: non-finite entry");
  require(is_hermitian(matrix_, kHermitianTol),
          "HermitianObservable: matrix is not Hermitian within 1e-10");
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  Vector out(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    out.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  return PureState(std::move(out));
}

Matrix partial_trace(const Matrix& rho, const std::vector<Eigen::Index>& dims,
                     const std::vector<std::size_t>& keep) {
  require(rho.rows() == rho.cols(), "partial_trace: rho is not square");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    require(d >= 1, "partial_trace: subsystem dimension must be positive");
    total *= d;
  }
  require(total == rho.rows(), "partial_trace: product of dims does not match rho dimension");
  require(!keep.empty(), "partial_trace: keep set must be nonempty");

  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    require(k < dims.size(), "partial_trace: keep index out of range");
    require(!kept[k], "partial_trace: duplicate keep index");
    kept[k] = true;
  }

  // Strides for the big-endian digit layout (subsystem 0 most significant).
  std::vector<Eigen::Index> stride(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) stride[k - 1] = stride[k] * dims[k];

  std::vector<std::size_t> kept_idx, traced_idx;
  for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? kept_idx : traced_idx).push_back(k);

  Eigen::Index dim_keep = 1, dim_traced = 1;
  for (std::size_t k : kept_idx) dim_keep *= dims[k];
  for (std::size_t k : traced_idx) dim_traced *= dims[k];

  // Base offset of kept multi-index `m` in the full space.
  auto kept_offset = [&](Eigen::Index m) {
    Eigen::Index offset = 0;
    for (std::size_t p = kept_idx.size(); p-- > 0;) {
      const std::size_t k = kept_idx[p];
      offset += (m % dims[k]) * stride[k];
      m /= dims[k];
    }
    return offset;
  };
  auto traced_offset = [&](Eigen::Index t) {
    Eigen::Index offset = 0;
    for (std::size_t p = traced_idx.size(); p-- > 0;) {
      const std::size_t k = traced_idx[p];
      offset += (t % dims[k]) * stride[k];
      t /= dims[k];
    }
    return offset;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index r = 0; r < dim_keep; ++r) {
    const Eigen::Index row_base = kept_offset(r);
    for (Eigen::Index c = 0; c < dim_keep; ++c) {
      const Eigen::Index col_base = kept_offset(c);
      Complex sum = 0.0;
      for (Eigen::Index t = 0; t < dim_traced; ++t) {
        const Eigen::Index off = traced_offset(t);
        sum += rho(row_base + off, col_base + off);
      }
      out(r, c) = sum;
    }
  }
  return out;
}

Matrix pauli_matrix(Axis a) {
  Matrix m(2, 2);
  switch (a) {
    case Axis::X: m << 0, 1, 1, 0; break;
    case Axis::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Axis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix pauli_matrix(SignedAxis a) {
  return 0.5 * (Matrix::Identity(2, 2) + static_cast<double>(a.sign) * pauli_matrix(a.axis));
}

PureState signed_axis_state(SignedAxis a) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector v(2);
  switch (a.axis) {
    case Axis::X:
      v << inv_sqrt2, a.sign > 0 ? inv_sqrt2 : -inv_sqrt2;
      break;
    case Axis::Y:
      v << inv_sqrt2, Complex(0, a.sign > 0 ? inv_sqrt2 : -inv_sqrt2);
      break;
    case Axis::Z:
      if (a.sign > 0)
        v << 1, 0;
      else
        v << 0, 1;
      break;
  }
  return PureState(std::move(v));
}

namespace {

int qubit_count(Eigen::Index dim, const char* who) {
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1 && d % 2 == 0) {
    d /= 2;
    ++n;
  }
  if (d != 1 || n == 0)
    throw std::invalid_argument(std::string(who) + ": dimension is not a power of two >= 2");
  return n;
}

// Pauli strings are permutation-phase matrices: column c maps to row
// c ^ flip_mask with a phase. No dense product is ever needed.
struct PauliAction {
  Eigen::Index flip_mask = 0;
  std::vector<Complex> phase;  // phase[c] such that P[c ^ flip, c] = phase[c]
};

PauliAction pauli_action(const std::string& s) {
  const int n = static_cast<int>(s.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  PauliAction act;
  act.phase.assign(static_cast<std::size_t>(dim), Complex(1.0, 0.0));
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index(1) << (n - 1 - q);  // qubit 0 is the high bit
    switch (s[static_cast<std::size_t>(q)]) {
      case 'I':
        break;
      case 'X':
        act.flip_mask ^= bit;
        break;
      case 'Y':
        act.flip_mask ^= bit;
        for (Eigen::Index c = 0; c < dim; ++c)
          act.phase[static_cast<std::size_t>(c)] *= (c & bit) ? Complex(0, -1) : Complex(0, 1);
        break;
      case 'Z':
        for (Eigen::Index c = 0; c < dim; ++c)
          if (c & bit) act.phase[static_cast<std::size_t>(c)] = -act.phase[static_cast<std::size_t>(c)];
        break;
      default:
        throw std::invalid_argument("pauli string: invalid character '" +
                                    std::string(1, s[static_cast<std::size_t>(q)]) + "'");
    }
  }
  return act;
}

}  // namespace

Matrix pauli_string_matrix(const std::string& s) {
  if (s.empty() || s.size() > 10)
    throw std::invalid_argument("pauli_string_matrix: string length must be in [1, 10]");
  const Eigen::Index dim = Eigen::Index(1) << s.size();
  const PauliAction act = pauli_action(s);
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) m(c ^ act.flip_mask, c) = act.phase[static_cast<std::size_t>(c)];
  return m;
}

std::map<std::string, double> pauli_expand(const Matrix& rho) {
  require(rho.rows() == rho.cols(), "pauli_expand: matrix is not square");
  require(is_hermitian(rho, kHermitianTol), "pauli_expand: matrix is not Hermitian");
  const int n = qubit_count(rho.rows(), "pauli_expand");
  if (n > 8) throw std::invalid_argument("pauli_expand: more than 8 qubits");

  const Eigen::Index dim = rho.rows();
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};

  std::map<std::string, double> coeffs;
  std::string label(static_cast<std::size_t>(n), 'I');
  // Base-4 odometer over all 4^n strings.
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int q = 0; q < n; ++q) label[static_cast<std::size_t>(q)] = kLetters[digits[static_cast<std::size_t>(q)]];
    const PauliAction act = pauli_action(label);
    Complex trace = 0.0;
    for (Eigen::Index c = 0; c < dim; ++c)
      trace += rho(c, c ^ act.flip_mask) * act.phase[static_cast<std::size_t>(c)];
    // Hermitian rho against Hermitian P: the imaginary residue is roundoff.
    coeffs[label] = trace.real() / static_cast<double>(dim);

    int q = n - 1;
    while (q >= 0 && digits[static_cast<std::size_t>(q)] == 3) digits[static_cast<std::size_t>(q--)] = 0;
    if (q < 0) break;
    ++digits[static_cast<std::size_t>(q)];
  }
  return coeffs;
}

EigenDecomposition eigendecompose(const HermitianObservable& omega) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(omega.matrix());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecompose: eigensolver failed to converge");

  const auto& values = solver.eigenvalues();  // ascending
  const auto& vectors = solver.eigenvectors();

  EigenDecomposition out;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index end = start + 1;
    while (end < values.size() && values(end) - values(end - 1) <= kEigenMergeTol) ++end;
    const Eigen::Index count = end - start;
    out.eigenvalues.push_back(values.segment(start, count).mean());
    const auto block = vectors.middleCols(start, count);
    out.eigenprojectors.push_back(block * block.adjoint());
    start = end;
  }
  return out;
}

double concurrence(const PureState& psi) {
  require(psi.dim() == 4, "concurrence: state is not a 2-qubit state");
  const auto& a = psi.amplitudes();
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

}  // namespace esd
