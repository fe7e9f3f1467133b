#include "spakit/witness.hpp"

#include <cmath>

#include "spakit/optimize.hpp"

namespace spakit {

Witness witness_from_map(const QuantumMap& lambda_map,
                         const std::optional<ComplexMatrix>& q) {
  Witness w;
  if (!q.has_value()) {
    w.op = lambda_map.choi;
    w.dims = lambda_map.choi_dims();
  } else {
    const int side = lambda_map.d_in * lambda_map.d_out;
    if (q->rows() != side || q->cols() != side)
      throw std::invalid_argument("witness_from_map: Q has wrong side");
    QuantumMap big = tensor_with_identity(adjoint_map(lambda_map), lambda_map.d_in);
    w.op = apply_map(big, *q);
    w.dims = DimProfile{lambda_map.d_in, lambda_map.d_in};
  }
  w.op = (w.op + w.op.adjoint()) / 2.0;
  w.trace_normalized = std::abs(w.op.trace().real() - 1.0) <= 1e-10;
  w.psd_no_detection = min_eigenvalue(w.op) >= -tol::psd;
  return w;
}

WitnessValue evaluate_witness(const Witness& w, const DensityMatrix& rho) {
  if (rho.mat.rows() != w.op.rows())
    throw std::invalid_argument("evaluate_witness: dimension mismatch");
  double value = (w.op * rho.mat).trace().real();
  return {value, value < -1e-10};
}

SpaWitness spa_witness(const Witness& w) {
  SpaWitness out;
  ComplexMatrix op = w.op;
  double tr = op.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    if (std::abs(tr) < 1e-12)
      throw std::invalid_argument("spa_witness: traceless witness");
    op /= tr;
    out.auto_normalized = true;
  }
  const int D = w.d_a() * w.d_b();
  double lam = std::max(0.0, -min_eigenvalue(op));
  out.p_star = D * lam / (1.0 + D * lam);
  out.threshold = out.p_star / double(D);
  ComplexMatrix state =
      (1.0 - out.p_star) * op + out.p_star * identity(D) / double(D);
  out.state = make_state(state, w.dims);
  return out;
}

namespace {

// Orthonormal Hermitian basis on dim d: identity/sqrt(d), then the
// generalized Gell-Mann family (symmetric, antisymmetric, diagonal).
std::vector<ComplexMatrix> hermitian_basis(int d) {
  std::vector<ComplexMatrix> basis;
  basis.push_back(identity(d) / std::sqrt(double(d)));
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      ComplexMatrix sym = zeros(d, d);
      sym(i, j) = sym(j, i) = s;
      basis.push_back(sym);
      ComplexMatrix asym = zeros(d, d);
      asym(i, j) = Complex(0, -s);
      asym(j, i) = Complex(0, s);
      basis.push_back(asym);
    }
  for (int k = 1; k < d; ++k) {
    ComplexMatrix diag = zeros(d, d);
    double norm = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) diag(i, i) = norm;
    diag(k, k) = -double(k) * norm;
    basis.push_back(diag);
  }
  return basis;
}

}  // namespace

LocalDecomposition decompose_local(const Witness& w) {
  const int da = w.d_a(), db = w.d_b();
  auto ga = hermitian_basis(da);
  auto gb = hermitian_basis(db);
  const int na = static_cast<int>(ga.size());
  const int nb = static_cast<int>(gb.size());

  Eigen::MatrixXd coeff(na, nb);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      coeff(a, b) = (kron(ga[a], gb[b]).adjoint() * w.op).trace().real();

  // shift traceless factors minimally to PSD: G = P - shift * (I/sqrt(d))
  std::vector<ComplexMatrix> pa(ga.begin(), ga.end());
  std::vector<ComplexMatrix> pb(gb.begin(), gb.end());
  Eigen::VectorXd sa = Eigen::VectorXd::Zero(na), sb = Eigen::VectorXd::Zero(nb);
  for (int a = 1; a < na; ++a) {
    double alpha = std::max(0.0, -min_eigenvalue(ga[a]));
    pa[static_cast<size_t>(a)] = ga[a] + alpha * identity(da);
    sa(a) = alpha * std::sqrt(double(da));
  }
  for (int b = 1; b < nb; ++b) {
    double beta = std::max(0.0, -min_eigenvalue(gb[b]));
    pb[static_cast<size_t>(b)] = gb[b] + beta * identity(db);
    sb(b) = beta * std::sqrt(double(db));
  }
  // G_a = P_a - sa_a P_0, H_b = Q_b - sb_b Q_0; fold corrections into row 0
  // and column 0 of the coefficient matrix.
  Eigen::MatrixXd folded = coeff;
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      folded(a, 0) -= coeff(a, b) * sb(b);
      folded(0, b) -= coeff(a, b) * sa(a);
      folded(0, 0) += coeff(a, b) * sa(a) * sb(b);
    }

  LocalDecomposition dec;
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      if (std::abs(folded(a, b)) < 1e-13) continue;
      dec.push_back({folded(a, b), pa[static_cast<size_t>(a)],
                     pb[static_cast<size_t>(b)]});
    }
  return dec;
}

ComplexMatrix local_decomposition_operator(const LocalDecomposition& dec,
                                           int d_a, int d_b) {
  ComplexMatrix out = zeros(d_a * d_b, d_a * d_b);
  for (const auto& t : dec)
    out += t.coefficient * kron(t.povm_a, t.povm_b);
  return out;
}

LocalDecomposition mdi_witness(const LocalDecomposition& dec) {
  LocalDecomposition out;
  out.reserve(dec.size());
  for (const auto& t : dec)
    out.push_back({t.coefficient, ComplexMatrix(t.povm_a.transpose()),
                   ComplexMatrix(t.povm_b.transpose())});
  return out;
}

WitnessStep optimize_witness_step(const Witness& w, const ComplexMatrix& p_sub,
                                  double epsilon, int starts,
                                  std::uint64_t seed) {
  if (epsilon < 0.0)
    throw std::invalid_argument("optimize_witness_step: epsilon must be >= 0");
  if (min_eigenvalue(p_sub) < -tol::psd)
    throw std::invalid_argument("optimize_witness_step: subtrahend must be PSD");
  WitnessStep step;
  step.candidate = w.op - epsilon * p_sub;
  ProductExtremum ext = minimize_product_form_multistart(
      step.candidate, w.d_a(), w.d_b(), starts, seed);
  step.min_product_value = ext.value;
  step.still_witness = ext.value >= -1e-6;
  return step;
}

SpanningCheck spanning_property_check(const Witness& w, int samples,
                                      std::uint64_t seed) {
  SpanningCheck out;
  const int da = w.d_a(), db = w.d_b();
  std::vector<ProductExtremum> results(static_cast<size_t>(samples));
  parallel_for(samples, [&](int k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    Vector e = random_ket(da, rng);
    Vector f = random_ket(db, rng);
    ProductExtremum ext = maximize_product_form(-w.op, da, db, &e, &f);
    ext.value = -ext.value;
    results[static_cast<size_t>(k)] = ext;
  });
  ComplexMatrix stacked = zeros(samples, da * db);
  int found = 0;
  for (const auto& r : results) {
    if (std::abs(r.value) >= 1e-8) continue;
    out.kernel_states.emplace_back(r.ket_a, r.ket_b);
    stacked.row(found++) = kron(ComplexMatrix(r.ket_a), ComplexMatrix(r.ket_b))
                               .col(0)
                               .transpose();
  }
  if (found > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked.topRows(found));
    double cutoff = 1e-8 * svd.singularValues()(0);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > cutoff) ++out.span_dimension;
  }
  return out;
}

}  // namespace spakit
