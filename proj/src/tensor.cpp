#include "spakit/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace spakit {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Decompose a composite row-major index into per-subsystem indices.
void split_index(int idx, const std::vector<int>& dims, std::vector<int>& out) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[static_cast<size_t>(k)] = idx % dims[static_cast<size_t>(k)];
    idx /= dims[static_cast<size_t>(k)];
  }
}

int join_index(const std::vector<int>& parts, const std::vector<int>& dims) {
  int idx = 0;
  for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + parts[k];
  return idx;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& dims,
                            const std::vector<int>& keep) {
  dims.check_matches(m);
  for (int k : keep)
    if (k < 0 || k >= dims.size())
      throw std::invalid_argument("partial_trace: subsystem index out of range");

  std::vector<bool> kept(static_cast<size_t>(dims.size()), false);
  for (int k : keep) kept[static_cast<size_t>(k)] = true;

  std::vector<int> keep_dims, trace_dims;
  for (int k = 0; k < dims.size(); ++k)
    (kept[static_cast<size_t>(k)] ? keep_dims : trace_dims).push_back(dims[k]);
  const int dk = std::accumulate(keep_dims.begin(), keep_dims.end(), 1,
                                 std::multiplies<>());
  const int dt = std::accumulate(trace_dims.begin(), trace_dims.end(), 1,
                                 std::multiplies<>());

  ComplexMatrix out = zeros(dk, dk);
  std::vector<int> row(static_cast<size_t>(dims.size())),
      col(static_cast<size_t>(dims.size()));
  std::vector<int> rk(keep_dims.size()), ck(keep_dims.size()),
      tt(trace_dims.size());
  for (int r = 0; r < dk; ++r) {
    split_index(r, keep_dims, rk);
    for (int c = 0; c < dk; ++c) {
      split_index(c, keep_dims, ck);
      Complex acc{0.0, 0.0};
      for (int t = 0; t < dt; ++t) {
        split_index(t, trace_dims, tt);
        size_t ik = 0, it = 0;
        for (size_t k = 0; k < row.size(); ++k) {
          if (kept[k]) {
            row[k] = rk[ik];
            col[k] = ck[ik];
            ++ik;
          } else {
            row[k] = col[k] = tt[it];
            ++it;
          }
        }
        acc += m(join_index(row, dims.dims), join_index(col, dims.dims));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimProfile& dims,
                                int subsystem) {
  dims.check_matches(m);
  if (subsystem < 0 || subsystem >= dims.size())
    throw std::invalid_argument(
        "partial_transpose: subsystem index out of range");

  const int n = dims.total();
  ComplexMatrix out(n, n);
  std::vector<int> row(static_cast<size_t>(dims.size())),
      col(static_cast<size_t>(dims.size()));
  for (int r = 0; r < n; ++r) {
    split_index(r, dims.dims, row);
    for (int c = 0; c < n; ++c) {
      split_index(c, dims.dims, col);
      std::vector<int> rr = row, cc = col;
      std::swap(rr[static_cast<size_t>(subsystem)],
                cc[static_cast<size_t>(subsystem)]);
      out(join_index(rr, dims.dims), join_index(cc, dims.dims)) = m(r, c);
    }
  }
  return out;
}

EigResult hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eig: non-square input");
  ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eig(m).values(0);
}

bool is_hermitian(const ComplexMatrix& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

bool is_psd(const ComplexMatrix& m, double eps) {
  return is_hermitian(m) && min_eigenvalue(m) >= -eps;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trace_distance: shape mismatch");
  Eigen::MatrixXcd d = a - b;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d);
  return 0.5 * svd.singularValues().sum();
}

double uhlmann_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("uhlmann_fidelity: shape mismatch");
  EigResult ea = hermitian_eig(a);
  EigResult eb = hermitian_eig(b);
  if (ea.values(0) < -tol::psd || eb.values(0) < -tol::psd)
    throw std::invalid_argument("uhlmann_fidelity: input is not PSD");

  Eigen::VectorXd va = ea.values.cwiseMax(0.0).cwiseSqrt();
  ComplexMatrix sqrt_a =
      ea.vectors * va.asDiagonal() * ea.vectors.adjoint();
  ComplexMatrix m = sqrt_a * b * sqrt_a;
  Eigen::VectorXd vm = hermitian_eig(m).values;
  double f = 0.0;
  for (Eigen::Index i = 0; i < vm.size(); ++i)
    f += std::sqrt(std::max(0.0, vm(i)));
  return f;
}

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix zeros(int rows, int cols) {
  return ComplexMatrix::Zero(rows, cols);
}

ComplexMatrix pauli_x() {
  ComplexMatrix m = zeros(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m = zeros(2, 2);
  m(0, 1) = Complex(0, -1);
  m(1, 0) = Complex(0, 1);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m = zeros(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix projector(const Vector& ket) { return ket * ket.adjoint(); }

Vector basis_ket(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

}  // namespace spakit
