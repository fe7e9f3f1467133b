#include <doctest.h>

#include "helpers.hpp"
#include "spakit/states.hpp"

using namespace spakit;
using spakit::test::max_abs_diff;

TEST_CASE("maximally entangled state") {
  DensityMatrix rho = max_entangled(2);
  Vector ket = max_entangled_ket(2);
  CHECK(std::abs(ket(0) - Complex(1.0 / std::sqrt(2.0), 0.0)) < 1e-15);
  CHECK((rho.mat * rho.mat).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  for (int d : {2, 3, 4}) {
    DensityMatrix r = max_entangled(d);
    CHECK(max_abs_diff(partial_trace(r.mat, r.dims, {0}), identity(d) / double(d)) < 1e-14);
    CHECK(max_abs_diff(partial_trace(r.mat, r.dims, {1}), identity(d) / double(d)) < 1e-14);
  }
  CHECK_THROWS_AS(max_entangled(1), std::invalid_argument);
}

TEST_CASE("weyl basis states") {
  // identity Weyl operator reproduces phi+
  CHECK(max_abs_diff(weyl_basis_state(2, 0, 0).mat, max_entangled(2).mat) < 1e-15);
  // (m=1, n=0) applies X on the second factor: psi+
  CHECK(max_abs_diff(weyl_basis_state(2, 1, 0).mat,
                     named_state("bell:psi+").mat) < 1e-15);

  SUBCASE("orthonormal family with maximally mixed marginals") {
    for (int d : {2, 3}) {
      std::vector<Vector> kets;
      for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) kets.push_back(weyl_ket(d, m, n));
      for (size_t i = 0; i < kets.size(); ++i)
        for (size_t j = 0; j < kets.size(); ++j) {
          double overlap = std::abs(kets[i].dot(kets[j]));
          CHECK(overlap == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
        }
      for (const Vector& k : kets) {
        ComplexMatrix rho = projector(k);
        CHECK(max_abs_diff(partial_trace(rho, DimProfile{d, d}, {0}),
                           identity(d) / double(d)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(weyl_basis_state(2, 2, 0), std::invalid_argument);
}

TEST_CASE("isotropic states") {
  CHECK(max_abs_diff(isotropic(2, 1.0).mat, identity(4) / 4.0) < 1e-15);

  // PT minimum eigenvalue -(1-p)/2 + p/4
  auto pt_min = [](int d, double p) {
    DensityMatrix iso = isotropic(d, p);
    return min_eigenvalue(partial_transpose(iso.mat, iso.dims, 1));
  };
  CHECK(pt_min(2, 0.5) == doctest::Approx(-1.0 / 8.0).epsilon(1e-12));
  CHECK(pt_min(2, 2.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-12));

  SUBCASE("sign flip exactly at d/(d+1)") {
    for (int d : {2, 3}) {
      double lo = 0.0, hi = 1.0;
      while (hi - lo > 1e-11) {
        double mid = 0.5 * (lo + hi);
        (pt_min(d, mid) >= 0 ? hi : lo) = mid;
      }
      CHECK(hi == doctest::Approx(double(d) / (d + 1)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(isotropic(2, 1.5), std::invalid_argument);
}

TEST_CASE("symmetric and antisymmetric projectors") {
  for (int d : {2, 3, 4}) {
    SymAntisym sa = sym_antisym_projectors(d);
    CHECK(max_abs_diff(sa.sym + sa.antisym, identity(d * d)) < 1e-15);
    CHECK(max_abs_diff(sa.sym * sa.antisym, zeros(d * d, d * d)) < 1e-15);
    CHECK(max_abs_diff(sa.sym * sa.sym, sa.sym) < 1e-12);
    CHECK(max_abs_diff(sa.antisym * sa.antisym, sa.antisym) < 1e-12);
    CHECK(sa.sym.trace().real() == doctest::Approx(d * (d + 1) / 2.0));
    CHECK(sa.antisym.trace().real() == doctest::Approx(d * (d - 1) / 2.0));
    CHECK(max_abs_diff(sa.sym - sa.antisym, swap_operator(d)) < 1e-15);
    // d * PT(P+_d) = S_d - A_d
    ComplexMatrix pt = partial_transpose(max_entangled(d).mat, DimProfile{d, d}, 1);
    CHECK(max_abs_diff(double(d) * pt, sa.sym - sa.antisym) < 1e-13);
  }
  CHECK(sym_antisym_projectors(2).sym.trace().real() == doctest::Approx(3.0));
  CHECK(sym_antisym_projectors(2).antisym.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("state validation") {
  CHECK(validate_state(identity(4) / 4.0, DimProfile{2, 2}).valid);

  StateValidation bad =
      validate_state(spakit::test::from_rows(2, {{1.5, 0.0}, {0.0, -0.5}}),
                     DimProfile{2});
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].find("negative eigenvalue") != std::string::npos);
  CHECK(bad.violations[0].find("-0.5") != std::string::npos);

  StateValidation off_trace =
      validate_state(identity(2) * 0.4999995, DimProfile{2});
  CHECK_FALSE(off_trace.valid);
  REQUIRE(off_trace.violations.size() == 1);
  CHECK(off_trace.violations[0].find("trace deviation") != std::string::npos);
}

TEST_CASE("named state registry") {
  CHECK(max_abs_diff(named_state("bell:phi+").mat, max_entangled(2).mat) < 1e-15);
  CHECK(max_abs_diff(named_state("isotropic:d=3,p=0.5").mat,
                     isotropic(3, 0.5).mat) < 1e-15);
  CHECK(max_abs_diff(named_state("maxent:d=4").mat, max_entangled(4).mat) < 1e-15);
  CHECK(max_abs_diff(named_state("weyl:d=3,m=1,n=2").mat,
                     weyl_basis_state(3, 1, 2).mat) < 1e-15);
  CHECK_THROWS_AS(named_state("bell:phi"), std::invalid_argument);
  CHECK_THROWS_AS(named_state("nothere"), std::invalid_argument);
}
