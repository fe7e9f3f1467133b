#include "spakit/spa.hpp"

#include <cmath>

#include "spakit/designs.hpp"
#include "spakit/detect.hpp"

namespace spakit {

ComplexMatrix decomposition_operator(const ProductDecomposition& dec) {
  if (dec.empty()) throw std::invalid_argument("empty decomposition");
  const int da = static_cast<int>(dec[0].ket_a.size());
  const int db = static_cast<int>(dec[0].ket_b.size());
  ComplexMatrix out = zeros(da * db, da * db);
  for (const auto& t : dec)
    out += t.weight * kron(projector(t.ket_a), projector(t.ket_b));
  return out;
}

namespace {

// Minimal p in [0,1] with (1-p) chi + p noise PSD. The minimum eigenvalue is
// concave in p, so the feasible set is an interval reaching p = 1.
double bisect_minimal_p(const ComplexMatrix& chi, const ComplexMatrix& noise,
                        double tol_p = 1e-10) {
  auto feasible = [&](double p) {
    return min_eigenvalue(((1.0 - p) * chi + p * noise)) >= -1e-12;
  };
  if (feasible(0.0)) return 0.0;
  if (!feasible(1.0))
    throw std::invalid_argument("spa: noise operator cannot make the map CP");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol_p) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

SpaResult spa(const QuantumMap& map) {
  if (!is_hermitian(map.choi))
    throw std::invalid_argument("spa: map is not hermiticity-preserving");
  const int D = map.d_in * map.d_out;
  SpaResult r;
  r.original = map;
  r.min_choi_eigenvalue = min_eigenvalue(map.choi);
  r.lambda = std::max(0.0, -r.min_choi_eigenvalue);
  r.p_star = D * r.lambda / (1.0 + D * r.lambda);

  ComplexMatrix noise = identity(D) / double(D);
  double p_bisect = bisect_minimal_p(map.choi, noise);
  if (std::abs(p_bisect - r.p_star) > 1e-8)
    throw std::runtime_error("spa: closed form and bisection disagree by " +
                             std::to_string(std::abs(p_bisect - r.p_star)));

  r.spa_map.d_in = map.d_in;
  r.spa_map.d_out = map.d_out;
  r.spa_map.choi = (1.0 - r.p_star) * map.choi + r.p_star * noise;
  r.spa_map.label = map.label.empty() ? "spa" : "spa(" + map.label + ")";
  r.threshold = r.p_star / double(D);
  return r;
}

SpaResult spa_general(const QuantumMap& map, const ComplexMatrix& k_state) {
  if (!is_hermitian(map.choi))
    throw std::invalid_argument("spa_general: map is not hermiticity-preserving");
  if (k_state.rows() != map.d_out || k_state.cols() != map.d_out)
    throw std::invalid_argument("spa_general: K must live on the output space");
  if (min_eigenvalue(k_state) <= tol::psd)
    throw std::invalid_argument("spa_general: K must be full rank");

  ComplexMatrix noise =
      kron(identity(map.d_in) / double(map.d_in), k_state);
  SpaResult r;
  r.original = map;
  r.min_choi_eigenvalue = min_eigenvalue(map.choi);
  r.lambda = std::max(0.0, -r.min_choi_eigenvalue);
  r.p_star = bisect_minimal_p(map.choi, noise, 1e-10);
  r.spa_map.d_in = map.d_in;
  r.spa_map.d_out = map.d_out;
  r.spa_map.choi = (1.0 - r.p_star) * map.choi + r.p_star * noise;
  r.spa_map.label = map.label.empty() ? "spa_K" : "spa_K(" + map.label + ")";
  r.threshold = 0.0;
  return r;
}

SpaResult spa_bipartite(const QuantumMap& lambda_map) {
  if (lambda_map.d_in != lambda_map.d_out)
    throw std::invalid_argument("spa_bipartite: map must be square");
  const int d = lambda_map.d_in;
  QuantumMap big = tensor_with_identity(lambda_map, d);
  SpaResult r = spa(big);
  // closed form in terms of the local map's spectrum
  double lam = std::max(0.0, -min_eigenvalue(lambda_map.choi));
  double d4 = std::pow(double(d), 4);
  double p_formula = lam * d4 / (1.0 + lam * d4);
  if (std::abs(p_formula - r.p_star) > 1e-8)
    throw std::runtime_error("spa_bipartite: spectrum inconsistency");
  r.lambda = lam;
  r.threshold = lam * d * d / (lam * d4 + 1.0);
  return r;
}

QuantumMap spa_inversion(int d) {
  const int D = d * d;
  ComplexMatrix chi =
      (identity(D) - projector(max_entangled_ket(d))) / double(D - 1);
  return {d, d, chi, "spa_inversion"};
}

namespace {

QuantumMap tensor_map(const QuantumMap& f, const QuantumMap& g) {
  const int d_in = f.d_in * g.d_in;
  auto action = [&](int r, int c) {
    int a = r / g.d_in, i = r % g.d_in;
    int b = c / g.d_in, j = c % g.d_in;
    ComplexMatrix img_f =
        f.choi.block(a * f.d_out, b * f.d_out, f.d_out, f.d_out) *
        double(f.d_in);
    ComplexMatrix img_g =
        g.choi.block(i * g.d_out, j * g.d_out, g.d_out, g.d_out) *
        double(g.d_in);
    return kron(img_f, img_g);
  };
  return choi_of(d_in, action);
}

}  // namespace

SpaLoccResult spa_locc(const QuantumMap& lambda_map) {
  if (lambda_map.d_in != lambda_map.d_out)
    throw std::invalid_argument("spa_locc: map must be square");
  const int da = lambda_map.d_in;
  const int db = lambda_map.d_out;
  double lam = std::max(0.0, -min_eigenvalue(lambda_map.choi));
  double heavy = lam * std::pow(double(da), 3) * db;
  SpaLoccResult out;
  out.q = (heavy - lam * da * db) / (1.0 + heavy);

  SpaResult local = spa(lambda_map);
  out.term_a = tensor_with_identity(local.spa_map, da);
  QuantumMap dep = make_named_map("depolarize", {{"d_in", double(da)},
                                                 {"d_out", double(db)}});
  out.term_b = tensor_map(spa_inversion(da), dep);

  out.mixture.d_in = out.term_a.d_in;
  out.mixture.d_out = out.term_a.d_out;
  out.mixture.choi =
      (1.0 - out.q) * out.term_a.choi + out.q * out.term_b.choi;
  out.mixture.label = "spa(id x " + lambda_map.label + ")";

  ComplexMatrix reference = spa_bipartite(lambda_map).spa_map.choi;
  if ((out.mixture.choi - reference).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error("spa_locc: mixture does not match the bipartite SPA");
  return out;
}

MeasurePrepareChannel measure_prepare_from(const ProductDecomposition& dec) {
  if (dec.empty()) throw std::invalid_argument("measure_prepare_from: empty");
  const int da = static_cast<int>(dec[0].ket_a.size());
  const int db = static_cast<int>(dec[0].ket_b.size());
  ComplexMatrix povm_sum = zeros(da, da);
  MeasurePrepareChannel ch;
  for (const auto& t : dec) {
    if (t.weight <= 0.0)
      throw std::invalid_argument("measure_prepare_from: weights must be positive");
    ComplexMatrix m = double(da) * t.weight * projector(t.ket_a.conjugate());
    povm_sum += m;
    ch.povm.push_back(std::move(m));
    Vector f = t.ket_b / t.ket_b.norm();
    ch.preparations.push_back(DensityMatrix{projector(f), DimProfile{db}});
  }
  if ((povm_sum - identity(da)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("measure_prepare_from: incomplete POVM");

  auto action = [&](int i, int j) {
    ComplexMatrix img = zeros(db, db);
    for (size_t k = 0; k < ch.povm.size(); ++k)
      img += ch.povm[k](j, i) * ch.preparations[k].mat;
    return img;
  };
  ch.induced = choi_of(da, action, "measure-prepare");
  return ch;
}

namespace {

bool dims_have_exact_ppt(int da, int db) {
  return (da == 2 && db == 2) || (da == 2 && db == 3) || (da == 3 && db == 2);
}

// Known exact decompositions of two-design-related Choi states.
std::optional<ProductDecomposition> match_known_decomposition(
    const ComplexMatrix& sigma, int da, int db) {
  if (da != db) return std::nullopt;
  const int d = da;
  std::vector<DesignSet> designs;
  if (d == 2) designs.push_back(sic(2));
  if (d == 3) designs.push_back(sic(3));
  if (is_prime(d)) designs.push_back(mub(d));

  auto try_dec = [&](const ProductDecomposition& dec)
      -> std::optional<ProductDecomposition> {
    if ((decomposition_operator(dec) - sigma).cwiseAbs().maxCoeff() <= 1e-8)
      return dec;
    return std::nullopt;
  };

  for (const auto& set : designs) {
    const double w = 1.0 / double(set.vectors.size());
    ProductDecomposition symmetric, conjugate;
    for (const Vector& v : set.vectors) {
      symmetric.push_back({w, v, v});
      conjugate.push_back({w, Vector(v.conjugate()), v});
    }
    if (auto dec = try_dec(symmetric)) return dec;
    if (auto dec = try_dec(conjugate)) return dec;
  }
  // computational product decomposition of white noise
  ProductDecomposition white;
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      white.push_back({1.0 / double(da * db), basis_ket(da, i), basis_ket(db, j)});
  if (auto dec = try_dec(white)) return dec;
  return std::nullopt;
}

}  // namespace

EbVerdict eb_verdict(const QuantumMap& map, std::uint64_t seed,
                     int gilbert_iters) {
  if (min_eigenvalue(map.choi) < -tol::psd)
    throw std::invalid_argument("eb_verdict: non-CP input");
  double tr = map.choi.trace().real();
  if (tr <= 0.0) throw std::invalid_argument("eb_verdict: zero-trace Choi");
  ComplexMatrix sigma = map.choi / tr;  // separability is scale-free
  const int da = map.d_in, db = map.d_out;
  DimProfile dims{da, db};

  EbVerdict v;
  double ppt_min = min_eigenvalue(partial_transpose(sigma, dims, 1));
  if (ppt_min < -tol::psd) {
    v.status = EbStatus::NotEB;
    v.certificate.kind = EbCertificate::Kind::nppt_eigenvalue;
    v.certificate.value = ppt_min;
    return v;
  }
  DensityMatrix state{sigma, dims};
  if (dims_have_exact_ppt(da, db)) {
    v.status = EbStatus::EB;
    v.certificate.kind = EbCertificate::Kind::ppt_exact;
    v.certificate.value = ppt_min;
    SeparableApproximation approx = nearest_separable(state, gilbert_iters, seed);
    v.certificate.decomposition = approx.decomposition;
    v.certificate.decomposition_distance = approx.distance;
    return v;
  }
  if (auto dec = match_known_decomposition(sigma, da, db)) {
    v.status = EbStatus::EB;
    v.certificate.kind = EbCertificate::Kind::design_decomposition;
    v.certificate.decomposition = *dec;
    v.certificate.value =
        (decomposition_operator(*dec) - sigma).cwiseAbs().maxCoeff();
    v.certificate.decomposition_distance = (decomposition_operator(*dec) - sigma).norm();
    return v;
  }
  double ccnr = ccnr_test(state).statistic;
  if (ccnr > 1.0 + 1e-9) {
    v.status = EbStatus::NotEB;
    v.certificate.kind = EbCertificate::Kind::ccnr_violation;
    v.certificate.value = ccnr;
    return v;
  }
  SeparableApproximation approx = nearest_separable(state, gilbert_iters, seed);
  if (approx.distance <= 1e-8) {
    v.status = EbStatus::EB;
    v.certificate.kind = EbCertificate::Kind::explicit_decomposition;
    v.certificate.decomposition = approx.decomposition;
    v.certificate.decomposition_distance = approx.distance;
    v.certificate.value = approx.distance;
    return v;
  }
  v.status = EbStatus::Inconclusive;
  v.nearest_separable_distance = approx.distance;
  v.certificate.decomposition = approx.decomposition;
  v.certificate.decomposition_distance = approx.distance;
  return v;
}

ConjectureReport conjecture_report(const QuantumMap& map, std::uint64_t seed) {
  ConjectureReport rep;
  rep.map_label = map.label;
  rep.classification = classify(map, 64, seed);
  rep.spa_result = spa(map);
  rep.verdict = eb_verdict(rep.spa_result.spa_map, seed);

  const int d = map.d_in;
  QuantumMap big = tensor_with_identity(map, d);
  rep.scan.grid_step = 1e-3;
  rep.scan.expected_boundary = double(d) / double(d + 1);
  rep.scan.boundary_estimate = 0.0;
  bool all_below = true;
  for (int k = 0;; ++k) {
    double p = k * rep.scan.grid_step;
    if (p > 1.0) break;
    DensityMatrix iso = isotropic(d, std::min(p, 1.0));
    double mu = min_eigenvalue(apply_map(big, iso.mat));
    bool detected = mu < -1e-10;
    if (detected) rep.scan.boundary_estimate = p;
    if (!detected && p < rep.scan.expected_boundary - rep.scan.grid_step)
      all_below = false;
  }
  rep.scan.detects_all_entangled = all_below;
  return rep;
}

}  // namespace spakit
