#ifndef SPAKIT_TENSOR_HPP
#define SPAKIT_TENSOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace spakit {

using Complex = std::complex<double>;
// Dense complex matrix, row-major storage to match the |ij> = |i>|j> index
// convention used throughout (global convention, fixed once).
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;

// Ordered list of subsystem dimensions (d_1, ..., d_n), each >= 2.
struct DimProfile {
  std::vector<int> dims;

  DimProfile() = default;
  DimProfile(std::initializer_list<int> d) : dims(d) { check(); }
  explicit DimProfile(std::vector<int> d) : dims(std::move(d)) { check(); }

  int total() const {
    return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  }
  int size() const { return static_cast<int>(dims.size()); }
  int operator[](int k) const { return dims.at(static_cast<size_t>(k)); }

  void check() const {
    if (dims.empty()) throw std::invalid_argument("DimProfile: empty dims");
    for (int d : dims)
      if (d < 2) throw std::invalid_argument("DimProfile: dims must be >= 2");
  }
  void check_matches(const ComplexMatrix& m) const {
    if (m.rows() != m.cols() || m.rows() != total())
      throw std::invalid_argument("DimProfile: dims do not match matrix side " +
                                  std::to_string(m.rows()));
  }
  bool operator==(const DimProfile& o) const { return dims == o.dims; }
};

// Numerical tolerances shared across the toolkit.
namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-9;  // min eigenvalue >= -psd counts as PSD
inline constexpr double kraus_cutoff = 1e-10;
}  // namespace tol

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out every subsystem not listed in `keep`; surviving subsystems stay
// in their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& dims,
                            const std::vector<int>& keep);

// Transpose of the single subsystem `subsystem`, identity elsewhere.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimProfile& dims,
                                int subsystem);

struct EigResult {
  Eigen::VectorXd values;    // ascending
  ComplexMatrix vectors;     // columns match values
};

// Eigendecomposition of (m + m^dag)/2. Symmetrization first guards against
// hermiticity drift in composed maps.
EigResult hermitian_eig(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double eps = tol::hermitian);
bool is_psd(const ComplexMatrix& m, double eps = tol::psd);

// (1/2) ||a - b||_1
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// tr sqrt(sqrt(a) b sqrt(a)); inputs must be PSD up to the shared tolerance.
double uhlmann_fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity(int d);
ComplexMatrix zeros(int rows, int cols);

// Pauli matrices
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

ComplexMatrix projector(const Vector& ket);
Vector basis_ket(int d, int i);

}  // namespace spakit

#endif
