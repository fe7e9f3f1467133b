#include "spakit/designs.hpp"

#include <array>
#include <cmath>

namespace spakit {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

DesignSet mub(int d) {
  if (!is_prime(d)) throw std::invalid_argument("mub: d must be prime");
  DesignSet set;
  set.kind = DesignSet::Kind::MUB;
  set.dim = d;
  if (d == 2) {
    const double s = 1.0 / std::sqrt(2.0);
    Vector z0 = basis_ket(2, 0), z1 = basis_ket(2, 1);
    Vector xp(2), xm(2), yp(2), ym(2);
    xp << s, s;
    xm << s, -s;
    yp << s, Complex(0, s);
    ym << s, Complex(0, -s);
    set.vectors = {z0, z1, xp, xm, yp, ym};
  } else {
    // computational basis plus d quadratic-phase bases:
    // <l|b_j^k> = w^{k l^2 + j l} / sqrt(d)
    for (int j = 0; j < d; ++j) set.vectors.push_back(basis_ket(d, j));
    const double unit = 2.0 * M_PI / d;
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        Vector v(d);
        for (int l = 0; l < d; ++l)
          v(l) = std::polar(1.0 / std::sqrt(double(d)),
                            unit * ((k * l * l + j * l) % d));
        set.vectors.push_back(v);
      }
  }
  set.residual = two_design_check(set);
  return set;
}

namespace {

Vector bell(int which) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  switch (which) {
    case 0: v(0) = s; v(3) = s; break;   // phi+
    case 1: v(0) = s; v(3) = -s; break;  // phi-
    case 2: v(1) = s; v(2) = s; break;   // psi+
    default: v(1) = s; v(2) = -s; break; // psi-
  }
  return v;
}

// Extract |v> from a symmetric rank-one 2x2 refold M = v v^T.
Vector symmetric_rank1_factor(const ComplexMatrix& m) {
  int j = std::abs(m(0, 0)) >= std::abs(m(1, 1)) ? 0 : 1;
  Complex vj = std::sqrt(m(j, j));
  Vector v(2);
  v << m(0, j) / vj, m(1, j) / vj;
  if ((m - v * v.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::runtime_error("sic: refolded vector is not a product state");
  return v;
}

}  // namespace

DesignSet sic(int d, const std::optional<TetrahedronPhases>& phases) {
  DesignSet set;
  set.kind = DesignSet::Kind::SIC;
  set.dim = d;
  if (d == 2) {
    TetrahedronPhases th = phases.value_or(TetrahedronPhases{});
    Complex cond = std::polar(1.0, -2.0 * th.theta2) +
                   std::polar(1.0, -2.0 * th.theta3) +
                   std::polar(1.0, -2.0 * th.theta4);
    if (std::abs(cond) > 1e-9)
      throw std::invalid_argument(
          "sic: phases violate the tetrahedron constraint "
          "e^{-2i t2}+e^{-2i t3}+e^{-2i t4} = 0");
    // z_i = (1/2) sum_a s_i^a e^{i theta_a} x_a over the magic basis, with
    // weight sqrt(1/3) on the three symmetric Bell vectors. Each z_i is a
    // symmetric product |v_i>|v_i> iff the phase constraint holds.
    const double w = std::sqrt(1.0 / 3.0);
    std::vector<Vector> magic = {Complex(0, 1) * bell(3), bell(2), bell(1),
                                 Complex(0, 1) * bell(0)};
    std::vector<std::array<int, 4>> signs = {
        {1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    double theta[4] = {th.theta1, th.theta2, th.theta3, th.theta4};
    double lam[4] = {0.0, w, w, w};
    for (const auto& s : signs) {
      Vector z = Vector::Zero(4);
      for (int a = 0; a < 4; ++a)
        z += 0.5 * double(s[a]) * std::polar(lam[a], theta[a]) * magic[a];
      ComplexMatrix refold(2, 2);
      refold << z(0), z(1), z(2), z(3);
      Vector v = symmetric_rank1_factor(refold);
      set.vectors.push_back(v / v.norm());
    }
  } else if (d == 3) {
    // nine states in the (1, w^k, 0)/sqrt(2) pattern, w = e^{2 pi i/3}
    const Complex w = std::polar(1.0, 2.0 * M_PI / 3.0);
    const double s = 1.0 / std::sqrt(2.0);
    for (int k = 1; k <= 3; ++k) {
      Vector v(3);
      v << s, s * std::pow(w, k), 0.0;
      set.vectors.push_back(v);
    }
    for (int k = 1; k <= 3; ++k) {
      Vector v(3);
      v << 0.0, s, s * std::pow(w, k);
      set.vectors.push_back(v);
    }
    for (int k = 1; k <= 3; ++k) {
      Vector v(3);
      v << s * std::pow(w, k), 0.0, s;
      set.vectors.push_back(v);
    }
  } else {
    throw std::invalid_argument("sic: only d = 2 and d = 3 are supported");
  }
  set.residual = two_design_check(set);
  return set;
}

double two_design_check(const DesignSet& set) {
  if (set.vectors.empty())
    throw std::invalid_argument("two_design_check: empty set");
  const int d = set.dim;
  ComplexMatrix frame = zeros(d * d, d * d);
  for (const Vector& v : set.vectors) {
    ComplexMatrix p = projector(v);
    frame += kron(p, p);
  }
  frame /= double(set.vectors.size());
  ComplexMatrix target =
      2.0 * sym_antisym_projectors(d).sym / double(d * (d + 1));
  return (frame - target).cwiseAbs().maxCoeff();
}

MeasurePrepareChannel design_channel(const DesignSet& set,
                                     bool conjugate_measurement) {
  if (two_design_check(set) > 1e-8)
    throw std::invalid_argument("design_channel: set fails the two-design check");
  ProductDecomposition dec;
  const double w = 1.0 / double(set.vectors.size());
  for (const Vector& v : set.vectors) {
    ProductTerm t;
    t.weight = w;
    t.ket_a = conjugate_measurement ? v : Vector(v.conjugate());
    t.ket_b = v;
    dec.push_back(std::move(t));
  }
  return measure_prepare_from(dec);
}

}  // namespace spakit
