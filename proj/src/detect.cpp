#include "spakit/detect.hpp"

#include <cmath>

#include "spakit/optimize.hpp"

namespace spakit {

DetectionReport spa_detect(const DensityMatrix& rho,
                           const QuantumMap& lambda_map) {
  if (lambda_map.d_in != lambda_map.d_out)
    throw std::invalid_argument("spa_detect: map must be square");
  const int d = lambda_map.d_in;
  if (rho.dims.size() != 2 || rho.dims[0] != d || rho.dims[1] != d)
    throw std::invalid_argument("spa_detect: state dims do not match the map");

  SpaResult sres = spa_bipartite(lambda_map);
  double statistic = min_eigenvalue(apply_map(sres.spa_map, rho.mat));

  DetectionReport rep;
  rep.method = DetectionMethod::spa_spectrum;
  rep.statistic = statistic;
  rep.threshold = sres.threshold;
  rep.verdict = statistic < sres.threshold - 1e-10
                    ? DetectionVerdict::entangled
                    : DetectionVerdict::not_detected;

  // consistency with the direct spectrum: the SPA acts affinely on spectra,
  // statistic = (1-p*) mu_min + p*/d^2, so verdicts must agree.
  QuantumMap direct = tensor_with_identity(lambda_map, d);
  double mu = min_eigenvalue(apply_map(direct, rho.mat));
  double predicted = (1.0 - sres.p_star) * mu + sres.p_star / double(d * d);
  if (std::abs(predicted - statistic) > 1e-9)
    throw std::runtime_error("spa_detect: affine spectrum cross-check failed");
  bool direct_detected = mu < -1e-10 / (1.0 - sres.p_star);
  bool spa_detected = rep.verdict == DetectionVerdict::entangled;
  if (direct_detected != spa_detected && std::abs(mu) > 1e-9)
    throw std::runtime_error("spa_detect: verdict inconsistent with direct map");
  return rep;
}

DetectionReport ppt_test(const DensityMatrix& rho) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument("ppt_test: state must be bipartite");
  DetectionReport rep;
  rep.method = DetectionMethod::ppt;
  rep.statistic = min_eigenvalue(partial_transpose(rho.mat, rho.dims, 1));
  rep.threshold = 0.0;
  rep.verdict = rep.statistic < -1e-10 ? DetectionVerdict::entangled
                                       : DetectionVerdict::not_detected;
  int da = rho.dims[0], db = rho.dims[1];
  bool exact = (da == 2 && db == 2) || (da == 2 && db == 3) || (da == 3 && db == 2);
  if (exact && rep.verdict == DetectionVerdict::not_detected)
    rep.note = "separable (exact)";
  return rep;
}

ComplexMatrix realign(const ComplexMatrix& m, int d_a, int d_b) {
  ComplexMatrix r(d_a * d_a, d_b * d_b);
  for (int i = 0; i < d_a; ++i)
    for (int j = 0; j < d_a; ++j)
      for (int k = 0; k < d_b; ++k)
        for (int l = 0; l < d_b; ++l)
          r(i * d_a + j, k * d_b + l) = m(i * d_b + k, j * d_b + l);
  return r;
}

DetectionReport ccnr_test(const DensityMatrix& rho) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument("ccnr_test: state must be bipartite");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      realign(rho.mat, rho.dims[0], rho.dims[1]));
  DetectionReport rep;
  rep.method = DetectionMethod::ccnr;
  rep.statistic = svd.singularValues().sum();
  rep.threshold = 1.0;
  rep.verdict = rep.statistic > 1.0 + 1e-9 ? DetectionVerdict::entangled
                                           : DetectionVerdict::not_detected;
  return rep;
}

namespace {

// Simplex projection of weights (sort-based).
Eigen::VectorXd project_simplex(Eigen::VectorXd v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, tau = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / double(i + 1);
    if (u[i] - t > 0) tau = t;
  }
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = std::max(v(i) - tau, 0.0);
  return v;
}

// Working state of the corrective Gilbert iteration. Gram entries come from
// ket overlaps, <P_i, P_j> = |<e_i|e_j>|^2 |<f_i|f_j>|^2, so bookkeeping
// stays quadratic in the atom count with cheap entry updates.
struct GilbertState {
  std::vector<Vector> es, fs;
  std::vector<double> lin;  // <P_i, rho>
  Eigen::MatrixXd gram;
  Eigen::VectorXd w;
  const ComplexMatrix* rho = nullptr;
  int da = 0, db = 0;

  int size() const { return static_cast<int>(es.size()); }

  double quad_form(const Vector& e, const Vector& f) const {
    Vector ef = kron(ComplexMatrix(e), ComplexMatrix(f)).col(0);
    return (ef.adjoint() * (*rho) * ef)(0, 0).real();
  }

  void refresh_atom(int i, const Vector& e, const Vector& f) {
    es[static_cast<size_t>(i)] = e;
    fs[static_cast<size_t>(i)] = f;
    lin[static_cast<size_t>(i)] = quad_form(e, f);
    for (int j = 0; j < size(); ++j) {
      double g = std::norm(es[static_cast<size_t>(j)].dot(e)) *
                 std::norm(fs[static_cast<size_t>(j)].dot(f));
      gram(i, j) = gram(j, i) = g;
    }
  }

  void add_atom(const Vector& e, const Vector& f, double weight) {
    int n = size();
    es.push_back(e);
    fs.push_back(f);
    lin.push_back(0.0);
    gram.conservativeResize(n + 1, n + 1);
    w.conservativeResize(n + 1);
    w(n) = weight;
    refresh_atom(n, e, f);
  }

  void remove_atom(int i) {
    int n = size();
    es.erase(es.begin() + i);
    fs.erase(fs.begin() + i);
    lin.erase(lin.begin() + i);
    for (int r = i; r + 1 < n; ++r) {
      gram.row(r) = gram.row(r + 1);
      w(r) = w(r + 1);
    }
    for (int c = i; c + 1 < n; ++c) gram.col(c) = gram.col(c + 1);
    gram.conservativeResize(n - 1, n - 1);
    w.conservativeResize(n - 1);
  }

  ComplexMatrix mixture() const {
    ComplexMatrix sigma = zeros(da * db, da * db);
    for (int i = 0; i < size(); ++i)
      sigma += w(i) * kron(projector(es[static_cast<size_t>(i)]),
                           projector(fs[static_cast<size_t>(i)]));
    return sigma;
  }

  double dist2(double rho2) const {
    if (size() == 0) return rho2;
    Eigen::Map<const Eigen::VectorXd> l(lin.data(), size());
    return rho2 - 2.0 * w.dot(l) + w.dot(gram * w);
  }

  void reopt(int inner) {
    if (size() == 0) return;
    Eigen::Map<const Eigen::VectorXd> l(lin.data(), size());
    double lip = gram.cwiseAbs().rowwise().sum().maxCoeff() + 1e-12;
    for (int it = 0; it < inner; ++it)
      w = project_simplex(w - (gram * w - l) / lip);
  }
};

}  // namespace

SeparableApproximation nearest_separable(const DensityMatrix& rho,
                                         int max_iter, std::uint64_t seed) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument("nearest_separable: state must be bipartite");
  const int da = rho.dims[0], db = rho.dims[1];
  const int atom_cap = 12 * da * db;

  GilbertState st;
  st.rho = &rho.mat;
  st.da = da;
  st.db = db;
  const double rho2 = rho.mat.squaredNorm();

  std::mt19937_64 rng(seed);
  double dist = std::sqrt(rho2);
  int iter = 0;
  int stall = 0;
  for (; iter < max_iter; ++iter) {
    ComplexMatrix sigma = st.mixture();
    ComplexMatrix residual = rho.mat - sigma;
    // linear oracle: max <ef| residual |ef> over product states
    ProductExtremum best;
    bool have = false;
    for (int r = 0; r < 3; ++r) {
      Vector e = random_ket(da, rng), f = random_ket(db, rng);
      ProductExtremum ext = maximize_product_form(residual, da, db, &e, &f, 30);
      if (!have || ext.value > best.value) {
        best = ext;
        have = true;
      }
    }
    // exact line search toward the new atom, then corrective re-weighting
    ComplexMatrix p = kron(projector(best.ket_a), projector(best.ket_b));
    ComplexMatrix dir = p - sigma;
    double denom = dir.squaredNorm();
    if (denom < 1e-30) break;
    double t = std::clamp(
        dir.cwiseProduct(residual.conjugate()).sum().real() / denom, 0.0, 1.0);
    st.w *= (1.0 - t);
    st.add_atom(best.ket_a, best.ket_b, t);
    st.reopt(60);

    // polish atoms against their own residual, warm-started
    sigma = st.mixture();
    for (int i = 0; i < st.size(); ++i) {
      double wi = st.w(i);
      if (wi < 1e-13) continue;
      ComplexMatrix pi = kron(projector(st.es[static_cast<size_t>(i)]),
                              projector(st.fs[static_cast<size_t>(i)]));
      ComplexMatrix target = rho.mat - (sigma - wi * pi);
      ProductExtremum polished = maximize_product_form(
          target, da, db, &st.es[static_cast<size_t>(i)],
          &st.fs[static_cast<size_t>(i)], 10);
      ComplexMatrix pn =
          kron(projector(polished.ket_a), projector(polished.ket_b));
      sigma += wi * (pn - pi);
      st.refresh_atom(i, polished.ket_a, polished.ket_b);
    }
    st.reopt(40);

    // merge duplicates, prune dead weight, enforce the cap
    for (int i = 0; i < st.size(); ++i)
      for (int j = st.size() - 1; j > i; --j) {
        double overlap = std::norm(st.es[static_cast<size_t>(i)].dot(
                             st.es[static_cast<size_t>(j)])) *
                         std::norm(st.fs[static_cast<size_t>(i)].dot(
                             st.fs[static_cast<size_t>(j)]));
        if (overlap > 1.0 - 1e-12) {
          st.w(i) += st.w(j);
          st.remove_atom(j);
        }
      }
    for (int i = st.size() - 1; i >= 0; --i)
      if (st.w(i) <= 1e-13) st.remove_atom(i);
    while (st.size() > atom_cap) {
      int imin = 0;
      for (int i = 1; i < st.size(); ++i)
        if (st.w(i) < st.w(imin)) imin = i;
      st.remove_atom(imin);
    }

    double new_dist = std::sqrt(std::max(0.0, st.dist2(rho2)));
    stall = (dist - new_dist < 1e-12) ? stall + 1 : 0;
    dist = new_dist;
    if (stall >= 3 && iter > 8) break;
    if (dist < 1e-10) break;
  }

  SeparableApproximation out;
  out.distance = (rho.mat - st.mixture()).norm();
  out.iterations = iter + 1;
  for (int i = 0; i < st.size(); ++i)
    if (st.w(i) > 0)
      out.decomposition.push_back({st.w(i), st.es[static_cast<size_t>(i)],
                                   st.fs[static_cast<size_t>(i)]});
  return out;
}

double hom_coincidence(const DensityMatrix& sigma1,
                       const DensityMatrix& sigma2) {
  if (sigma1.mat.rows() != sigma2.mat.rows())
    throw std::invalid_argument("hom_coincidence: dimension mismatch");
  double overlap = (sigma1.mat * sigma2.mat).trace().real();
  return std::clamp((1.0 - overlap) / 2.0, 0.0, 0.5);
}

DetectionReport hom_witness_estimate(const SpaWitness& spa_w,
                                     const DensityMatrix& rho, long long shots,
                                     std::uint64_t seed) {
  if (shots < 1)
    throw std::invalid_argument("hom_witness_estimate: shots must be >= 1");
  if (spa_w.state.mat.rows() != rho.mat.rows())
    throw std::invalid_argument("hom_witness_estimate: dimension mismatch");

  double exact_overlap = (spa_w.state.mat * rho.mat).trace().real();
  double exact_pc = std::clamp((1.0 - exact_overlap) / 2.0, 0.0, 0.5);

  DetectionReport rep;
  rep.method = DetectionMethod::hom;
  rep.threshold = spa_w.threshold;
  rep.shots = shots;

  double pc_hat;
  if (shots > 100000000LL) {
    // analytic shortcut: the empirical mean converges to the exact overlap
    pc_hat = exact_pc;
    rep.note = "analytic";
  } else {
    // sample a component of each mixture, then a coincidence Bernoulli with
    // p = (1 - |<w|psi>|^2)/2
    EigResult ew = hermitian_eig(spa_w.state.mat);
    EigResult er = hermitian_eig(rho.mat);
    std::vector<double> cum_w, cum_r;
    std::vector<int> idx_w, idx_r;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ew.values.size(); ++i)
      if (ew.values(i) > 1e-14) {
        acc += ew.values(i);
        cum_w.push_back(acc);
        idx_w.push_back(static_cast<int>(i));
      }
    acc = 0.0;
    for (Eigen::Index i = 0; i < er.values.size(); ++i)
      if (er.values(i) > 1e-14) {
        acc += er.values(i);
        cum_r.push_back(acc);
        idx_r.push_back(static_cast<int>(i));
      }
    // pairwise coincidence probabilities
    Eigen::MatrixXd pc(idx_w.size(), idx_r.size());
    for (size_t a = 0; a < idx_w.size(); ++a)
      for (size_t b = 0; b < idx_r.size(); ++b) {
        Complex ov = ew.vectors.col(idx_w[a]).adjoint() * er.vectors.col(idx_r[b]);
        pc(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            std::clamp((1.0 - std::norm(ov)) / 2.0, 0.0, 1.0);
      }
    std::mt19937_64 rng(seed);
    double wmax = cum_w.back(), rmax = cum_r.back();
    long long hits = 0;
    for (long long s = 0; s < shots; ++s) {
      double uw = uniform01(rng) * wmax;
      size_t a = std::lower_bound(cum_w.begin(), cum_w.end(), uw) - cum_w.begin();
      a = std::min(a, cum_w.size() - 1);
      double ur = uniform01(rng) * rmax;
      size_t b = std::lower_bound(cum_r.begin(), cum_r.end(), ur) - cum_r.begin();
      b = std::min(b, cum_r.size() - 1);
      if (uniform01(rng) < pc(static_cast<Eigen::Index>(a),
                              static_cast<Eigen::Index>(b)))
        ++hits;
    }
    pc_hat = double(hits) / double(shots);
  }
  rep.statistic = 1.0 - 2.0 * pc_hat;  // estimate of tr[W~ rho]
  rep.stderr_estimate =
      2.0 * std::sqrt(std::max(pc_hat * (1.0 - pc_hat), 1e-18) / double(shots));
  rep.verdict = rep.statistic < rep.threshold - 3.0 * (*rep.stderr_estimate)
                    ? DetectionVerdict::entangled
                    : DetectionVerdict::not_detected;
  return rep;
}

}  // namespace spakit
