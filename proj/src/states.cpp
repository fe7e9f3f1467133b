#include "spakit/states.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace spakit {

StateValidation validate_state(const ComplexMatrix& m, const DimProfile& dims) {
  StateValidation v;
  if (m.rows() != m.cols()) {
    v.valid = false;
    v.violations.push_back("non-square matrix");
    return v;
  }
  if (m.rows() != dims.total()) {
    v.valid = false;
    v.violations.push_back("dims do not match matrix side");
    return v;
  }
  std::ostringstream os;
  double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::hermitian) {
    v.valid = false;
    os.str("");
    os << "hermiticity deviation " << herm;
    v.violations.push_back(os.str());
  }
  double tr_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_dev > tol::trace) {
    v.valid = false;
    os.str("");
    os << "trace deviation " << tr_dev;
    v.violations.push_back(os.str());
  }
  double mu = min_eigenvalue(m);
  if (mu < -tol::psd) {
    v.valid = false;
    os.str("");
    os << "negative eigenvalue " << mu;
    v.violations.push_back(os.str());
  }
  if (v.valid) v.state = DensityMatrix{m, dims};
  return v;
}

DensityMatrix make_state(const ComplexMatrix& m, const DimProfile& dims) {
  StateValidation v = validate_state(m, dims);
  if (!v.valid) {
    std::string msg = "invalid state:";
    for (const auto& s : v.violations) msg += " " + s + ";";
    throw std::invalid_argument(msg);
  }
  return *v.state;
}

Vector max_entangled_ket(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled: d must be >= 2");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v / std::sqrt(static_cast<double>(d));
}

DensityMatrix max_entangled(int d) {
  return {projector(max_entangled_ket(d)), DimProfile{d, d}};
}

Vector weyl_ket(int d, int m, int n) {
  if (m < 0 || m >= d || n < 0 || n >= d)
    throw std::invalid_argument("weyl_ket: indices out of range");
  ComplexMatrix w = zeros(d, d);
  const double phase = 2.0 * M_PI * n / d;
  for (int k = 0; k < d; ++k)
    w(k, (k + m) % d) = std::polar(1.0, phase * k);
  Vector out = Vector::Zero(d * d);
  Vector base = max_entangled_ket(d);
  // apply (id x W) in the row-major |ij> convention
  for (int i = 0; i < d; ++i)
    out.segment(i * d, d) = w * base.segment(i * d, d);
  return out;
}

DensityMatrix weyl_basis_state(int d, int m, int n) {
  return {projector(weyl_ket(d, m, n)), DimProfile{d, d}};
}

DensityMatrix isotropic(int d, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("isotropic: p outside [0,1]");
  ComplexMatrix m = (1.0 - p) * projector(max_entangled_ket(d)) +
                    (p / (d * d)) * identity(d * d);
  return {m, DimProfile{d, d}};
}

ComplexMatrix swap_operator(int d) {
  ComplexMatrix pi = zeros(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pi(i * d + j, j * d + i) = 1.0;
  return pi;
}

SymAntisym sym_antisym_projectors(int d) {
  ComplexMatrix pi = swap_operator(d);
  ComplexMatrix id = identity(d * d);
  return {(id + pi) / 2.0, (id - pi) / 2.0};
}

namespace {

// parse "k1=v1,k2=v2" into a map
std::map<std::string, std::string> parse_kv(const std::string& s) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("named_state: expected key=value in '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

Vector bell_ket(const std::string& which) {
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  if (which == "phi+") { v(0) = s; v(3) = s; }
  else if (which == "phi-") { v(0) = s; v(3) = -s; }
  else if (which == "psi+") { v(1) = s; v(2) = s; }
  else if (which == "psi-") { v(1) = s; v(2) = -s; }
  else throw std::invalid_argument("named_state: unknown bell state '" + which + "'");
  return v;
}

}  // namespace

DensityMatrix named_state(const std::string& name) {
  auto colon = name.find(':');
  std::string kind = name.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (kind == "bell") return {projector(bell_ket(rest)), DimProfile{2, 2}};
  if (kind == "maxent") {
    auto kv = parse_kv(rest);
    return max_entangled(std::stoi(kv.at("d")));
  }
  if (kind == "isotropic") {
    auto kv = parse_kv(rest);
    return isotropic(std::stoi(kv.at("d")), std::stod(kv.at("p")));
  }
  if (kind == "weyl") {
    auto kv = parse_kv(rest);
    return weyl_basis_state(std::stoi(kv.at("d")), std::stoi(kv.at("m")),
                            std::stoi(kv.at("n")));
  }
  throw std::invalid_argument("named_state: unknown state '" + name + "'");
}

std::vector<std::string> named_state_patterns() {
  return {"bell:{phi+,phi-,psi+,psi-}", "maxent:d=<d>", "isotropic:d=<d>,p=<p>",
          "weyl:d=<d>,m=<m>,n=<n>"};
}

}  // namespace spakit
