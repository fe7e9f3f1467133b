#include "spakit/channels.hpp"

#include <cmath>

#include "spakit/optimize.hpp"

namespace spakit {

QuantumMap choi_of(int d_in,
                   const std::function<ComplexMatrix(int, int)>& action,
                   const std::string& label) {
  ComplexMatrix first = action(0, 0);
  if (first.rows() != first.cols())
    throw std::invalid_argument("choi_of: action images must be square");
  const int d_out = static_cast<int>(first.rows());
  ComplexMatrix chi = zeros(d_in * d_out, d_in * d_out);
  for (int i = 0; i < d_in; ++i)
    for (int j = 0; j < d_in; ++j) {
      ComplexMatrix img = (i == 0 && j == 0) ? first : action(i, j);
      if (img.rows() != d_out || img.cols() != d_out)
        throw std::invalid_argument("choi_of: inconsistent image shapes");
      chi.block(i * d_out, j * d_out, d_out, d_out) = img / double(d_in);
    }
  return {d_in, d_out, chi, label};
}

ComplexMatrix apply_map(const QuantumMap& map, const ComplexMatrix& rho) {
  if (rho.rows() != map.d_in || rho.cols() != map.d_in)
    throw std::invalid_argument("apply_map: dimension mismatch");
  // d_in * tr_A[ chi (rho^T x I) ] contracts blockwise:
  // out = d_in * sum_{ij} rho^T(j,i) chi_block(i,j) = d_in * sum rho(i,j) B_ij
  ComplexMatrix out = zeros(map.d_out, map.d_out);
  for (int i = 0; i < map.d_in; ++i)
    for (int j = 0; j < map.d_in; ++j)
      out += rho(i, j) *
             map.choi.block(i * map.d_out, j * map.d_out, map.d_out, map.d_out);
  return double(map.d_in) * out;
}

QuantumMap tensor_with_identity(const QuantumMap& map, int d_id) {
  const int d_in = d_id * map.d_in;
  auto action = [&](int r, int c) {
    int a = r / map.d_in, i = r % map.d_in;
    int b = c / map.d_in, j = c % map.d_in;
    ComplexMatrix unit_ab = zeros(d_id, d_id);
    unit_ab(a, b) = 1.0;
    ComplexMatrix img = zeros(map.d_out, map.d_out);
    img = map.choi.block(i * map.d_out, j * map.d_out, map.d_out, map.d_out) *
          double(map.d_in);
    return kron(unit_ab, img);
  };
  std::string label = map.label.empty() ? "" : "id x " + map.label;
  return choi_of(d_in, action, label);
}

QuantumMap compose(const QuantumMap& f, const QuantumMap& g) {
  if (g.d_out != f.d_in)
    throw std::invalid_argument("compose: dimension mismatch");
  auto action = [&](int i, int j) {
    ComplexMatrix unit = zeros(g.d_in, g.d_in);
    unit(i, j) = 1.0;
    return apply_map(f, apply_map(g, unit));
  };
  std::string label;
  if (!f.label.empty() && !g.label.empty()) label = f.label + " o " + g.label;
  return choi_of(g.d_in, action, label);
}

QuantumMap adjoint_map(const QuantumMap& map) {
  // adj[|i><j|]_{kl} = tr[ Lambda[|l><k|] |i><j| ] = Lambda[|l><k|]_{ji}
  auto action = [&](int i, int j) {
    ComplexMatrix out = zeros(map.d_in, map.d_in);
    for (int k = 0; k < map.d_in; ++k)
      for (int l = 0; l < map.d_in; ++l)
        out(k, l) = map.choi(l * map.d_out + j, k * map.d_out + i) *
                    double(map.d_in);
    return out;
  };
  std::string label = map.label.empty() ? "" : map.label + "^dag";
  return choi_of(map.d_out, action, label);
}

MapClassification classify(const QuantumMap& map, int starts,
                           std::uint64_t seed) {
  MapClassification c;
  c.min_choi_eigenvalue = min_eigenvalue(map.choi);
  c.is_cp = c.min_choi_eigenvalue >= -tol::psd;

  ComplexMatrix marginal =
      partial_trace(map.choi, map.choi_dims(), {0});
  c.tp_deviation =
      (marginal - identity(map.d_in) / double(map.d_in)).cwiseAbs().maxCoeff();
  c.is_tp = c.tp_deviation <= 1e-10;

  ComplexMatrix unital_img = apply_map(map, identity(map.d_in));
  c.unital_deviation = (unital_img - identity(map.d_out)).cwiseAbs().maxCoeff();
  c.is_unital = c.unital_deviation <= 1e-10;

  // Positivity heuristic: d_in * <e* f| chi |e* f> = <f| Lambda[|e><e|] |f>,
  // so a product state with a negative value certifies non-positivity while a
  // nonnegative sampled minimum proves nothing.
  ProductExtremum ext = minimize_product_form_multistart(
      map.choi, map.d_in, map.d_out, starts, seed);
  c.positivity.min_product_value = ext.value * double(map.d_in);
  c.positivity.witness_a = ext.ket_a.conjugate();
  c.positivity.witness_b = ext.ket_b;
  c.positivity.kind = c.positivity.min_product_value < -1e-9
                          ? PositivityEstimate::Kind::certified_nonpositive
                          : PositivityEstimate::Kind::numerically_positive;
  return c;
}

KrausSet kraus_from_choi(const QuantumMap& map) {
  EigResult eig = hermitian_eig(map.choi);
  if (eig.values(0) < -tol::psd)
    throw std::invalid_argument("kraus_from_choi: non-CP input");
  KrausSet ks;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    double mu = eig.values(k);
    if (mu <= tol::kraus_cutoff) continue;
    // |u> on A x B refolds to K_{ji} = sqrt(mu d_in) u_{(i,j)}
    ComplexMatrix K = zeros(map.d_out, map.d_in);
    double scale = std::sqrt(mu * map.d_in);
    for (int i = 0; i < map.d_in; ++i)
      for (int j = 0; j < map.d_out; ++j)
        K(j, i) = scale * eig.vectors(i * map.d_out + j, k);
    ks.operators.push_back(std::move(K));
  }
  return ks;
}

double channel_fidelity_bound(const QuantumMap& a, const QuantumMap& b) {
  if (a.d_in != b.d_in || a.d_out != b.d_out)
    throw std::invalid_argument("channel_fidelity_bound: dimension mismatch");
  double bound = 1.0 - a.d_in * trace_distance(a.choi, b.choi);
  return std::min(1.0, std::max(0.0, bound));
}

namespace {

int param_int(const std::map<std::string, double>& p, const std::string& key,
              int fallback = -1) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (fallback > 0) return fallback;
    throw std::invalid_argument("make_named_map: missing parameter '" + key + "'");
  }
  return static_cast<int>(std::lround(it->second));
}

ComplexMatrix matrix_unit(int d, int i, int j) {
  ComplexMatrix m = zeros(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

QuantumMap make_named_map(const std::string& name,
                          const std::map<std::string, double>& params) {
  if (name == "identity") {
    int d = param_int(params, "d");
    return choi_of(d, [&](int i, int j) { return matrix_unit(d, i, j); },
                   "identity");
  }
  if (name == "transpose") {
    int d = param_int(params, "d");
    return choi_of(d, [&](int i, int j) { return matrix_unit(d, j, i); },
                   "transpose");
  }
  if (name == "reduction") {
    int d = param_int(params, "d");
    return choi_of(d,
                   [&](int i, int j) {
                     ComplexMatrix img = -matrix_unit(d, i, j);
                     if (i == j) img += identity(d);
                     return ComplexMatrix(img / double(d - 1));
                   },
                   "reduction");
  }
  if (name == "inversion") {
    int d = param_int(params, "d");
    return choi_of(d, [&](int i, int j) {
      return ComplexMatrix(-matrix_unit(d, i, j));
    }, "inversion");
  }
  if (name == "depolarize") {
    int d_in = param_int(params, "d_in", param_int(params, "d", -1));
    int d_out = param_int(params, "d_out", d_in);
    return choi_of(d_in,
                   [&](int i, int j) {
                     ComplexMatrix img = zeros(d_out, d_out);
                     if (i == j) img = identity(d_out) / double(d_out);
                     return img;
                   },
                   "depolarize");
  }
  if (name == "unot") {
    ComplexMatrix y = pauli_y();
    return choi_of(2,
                   [&](int i, int j) {
                     return ComplexMatrix(y * matrix_unit(2, j, i) * y);
                   },
                   "unot");
  }
  if (name == "choi_map") {
    return choi_of(3,
                   [&](int i, int j) {
                     ComplexMatrix img = -matrix_unit(3, i, j);
                     if (i == j) {
                       img += 2.0 * matrix_unit(3, i, i);
                       int prev = (i + 2) % 3;
                       img += matrix_unit(3, prev, prev);
                     }
                     return ComplexMatrix(img / 2.0);
                   },
                   "choi_map");
  }
  if (name == "ha_map") {
    double a = params.count("a") ? params.at("a") : 1.0;
    double b = params.count("b") ? params.at("b") : 1.0;
    double c = params.count("c") ? params.at("c") : 1.0;
    double theta = params.count("theta") ? params.at("theta") : 0.0;
    if (a < 0 || b < 0 || c < 0)
      throw std::invalid_argument("ha_map: a, b, c must be nonnegative");
    Complex ep = std::polar(1.0, theta);
    Complex em = std::conj(ep);
    // entrywise 3x3 table: diagonal cycles (a,c,b) of the input diagonal,
    // off-diagonals pick up -e^{+-i theta} in a checker pattern
    ComplexMatrix phase = zeros(3, 3);
    phase(0, 1) = -ep; phase(0, 2) = -em;
    phase(1, 0) = -em; phase(1, 2) = -ep;
    phase(2, 0) = -ep; phase(2, 1) = -em;
    return choi_of(3,
                   [=](int i, int j) {
                     ComplexMatrix img = zeros(3, 3);
                     if (i == j) {
                       // x_{ii} feeds diag entries (a, c, b) shifted by i
                       double coeff[3] = {a, c, b};
                       for (int k = 0; k < 3; ++k)
                         img((i + k) % 3, (i + k) % 3) = coeff[k];
                     } else {
                       img(i, j) = phase(i, j);
                     }
                     return img;
                   },
                   "ha_map");
  }
  throw std::invalid_argument("make_named_map: unknown map '" + name + "'");
}

std::vector<MapRegistryEntry> map_registry() {
  return {
      {"identity", "d", "identity map"},
      {"transpose", "d", "transpose, positive but non-CP"},
      {"reduction", "d", "(tr[rho] I - rho)/(d-1), decomposable positive map"},
      {"choi_map", "", "Choi's indecomposable positive map on d=3"},
      {"ha_map", "a,b,c,theta", "generalized Choi-type map on d=3, raw parameters"},
      {"inversion", "d", "-id, not positive"},
      {"depolarize", "d_in[,d_out]", "complete depolarization to I/d_out"},
      {"unot", "", "Y T[.] Y, qubit universal-NOT"},
  };
}

}  // namespace spakit
