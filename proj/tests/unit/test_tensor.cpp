#include <doctest.h>

#include "helpers.hpp"
#include "spakit/json_io.hpp"
#include "spakit/tensor.hpp"

using namespace spakit;
using spakit::test::from_rows;
using spakit::test::max_abs_diff;

TEST_CASE("kron basics") {
  CHECK(max_abs_diff(kron(identity(2), identity(2)), identity(4)) == 0.0);

  ComplexMatrix zz = kron(pauli_z(), pauli_z());
  ComplexMatrix expect = zeros(4, 4);
  expect(0, 0) = 1;
  expect(1, 1) = -1;
  expect(2, 2) = -1;
  expect(3, 3) = 1;
  CHECK(max_abs_diff(zz, expect) == 0.0);

  // (X x I)|00> = |10>, hand expansion of the 4x4 action
  Vector v00 = kron(ComplexMatrix(basis_ket(2, 0)), ComplexMatrix(basis_ket(2, 0))).col(0);
  Vector out = kron(pauli_x(), identity(2)) * v00;
  Vector v10 = kron(ComplexMatrix(basis_ket(2, 1)), ComplexMatrix(basis_ket(2, 0))).col(0);
  CHECK((out - v10).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace") {
  DimProfile dims{2, 2};
  SUBCASE("maximally entangled marginals") {
    ComplexMatrix rho = max_entangled(2).mat;
    CHECK(max_abs_diff(partial_trace(rho, dims, {0}), identity(2) / 2.0) < 1e-15);
    CHECK(max_abs_diff(partial_trace(rho, dims, {1}), identity(2) / 2.0) < 1e-15);
  }
  SUBCASE("product factorization") {
    std::mt19937_64 rng(3);
    ComplexMatrix a = random_density(2, rng);
    ComplexMatrix b = random_density(3, rng);
    b *= 0.7;  // non-unit trace factor
    ComplexMatrix prod = kron(a, b);
    CHECK(max_abs_diff(partial_trace(prod, DimProfile{2, 3}, {0}),
                       ComplexMatrix(a * b.trace())) < 1e-14);
  }
  SUBCASE("depolarizing Choi marginal") {
    ComplexMatrix chi = identity(4) / 4.0;  // Choi of full qubit depolarization
    CHECK(max_abs_diff(partial_trace(chi, dims, {0}), identity(2) / 2.0) < 1e-15);
  }
  SUBCASE("trace preserved") {
    std::mt19937_64 rng(4);
    ComplexMatrix m = random_density(6, rng);
    Complex t0 = m.trace();
    CHECK(std::abs(partial_trace(m, DimProfile{2, 3}, {1}).trace() - t0) < 1e-12);
  }
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(partial_trace(identity(4), dims, {2}), std::invalid_argument);
  }
}

TEST_CASE("partial transpose") {
  DimProfile dims{2, 2};
  SUBCASE("product state stays PSD") {
    std::mt19937_64 rng(5);
    ComplexMatrix prod = kron(random_density(2, rng), random_density(2, rng));
    ComplexMatrix pt = partial_transpose(prod, dims, 1);
    CHECK(is_psd(pt));
  }
  SUBCASE("P+ spectrum") {
    ComplexMatrix pt = partial_transpose(max_entangled(2).mat, dims, 1);
    CHECK(max_abs_diff(pt, swap_operator(2) / 2.0) < 1e-15);
    Eigen::VectorXd ev = hermitian_eig(pt).values;
    CHECK(ev(0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ev(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev(3) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("involution is exact") {
    std::mt19937_64 rng(6);
    ComplexMatrix m = random_density(6, rng);
    ComplexMatrix twice =
        partial_transpose(partial_transpose(m, DimProfile{2, 3}, 1),
                          DimProfile{2, 3}, 1);
    CHECK(max_abs_diff(twice, m) == 0.0);
  }
}

TEST_CASE("hermitian eigendecomposition") {
  CHECK(hermitian_eig(identity(4)).values.isApproxToConstant(1.0, 1e-14));

  Eigen::VectorXd swap_ev = hermitian_eig(swap_operator(2)).values;
  CHECK(swap_ev(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(swap_ev(1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(min_eigenvalue(partial_transpose(max_entangled(2).mat, DimProfile{2, 2}, 1)) ==
        doctest::Approx(-0.5).epsilon(1e-12));

  SUBCASE("reconstruction and trace identity on random hermitian") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 20; ++k) {
      ComplexMatrix g = random_density(5, rng);
      ComplexMatrix h = g + g.adjoint();
      EigResult eig = hermitian_eig(h);
      ComplexMatrix rebuilt = eig.vectors *
                              eig.values.cast<Complex>().asDiagonal() *
                              eig.vectors.adjoint();
      CHECK(max_abs_diff(rebuilt, h) <= 1e-10 * h.cwiseAbs().maxCoeff() + 1e-12);
      CHECK(std::abs(eig.values.sum() - h.trace().real()) < 1e-10);
    }
  }
  SUBCASE("non-square input") {
    CHECK_THROWS_AS(hermitian_eig(zeros(2, 3)), std::invalid_argument);
  }
}

TEST_CASE("trace distance and fidelity") {
  std::mt19937_64 rng(8);
  ComplexMatrix rho = random_density(4, rng);
  CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));

  ComplexMatrix p0 = projector(basis_ket(2, 0));
  ComplexMatrix p1 = projector(basis_ket(2, 1));
  CHECK(uhlmann_fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(trace_distance(p0, p1) == doctest::Approx(1.0).epsilon(1e-12));

  // SPAed qubit transpose Choi vs white noise: spectra {1/3,1/3,1/3,0} vs 1/4
  ComplexMatrix s2 = (identity(4) + swap_operator(2)) / 2.0;
  CHECK(trace_distance(s2 / 3.0, identity(4) / 4.0) ==
        doctest::Approx(0.25).epsilon(1e-12));

  SUBCASE("fidelity bound against trace distance") {
    for (int k = 0; k < 100; ++k) {
      ComplexMatrix a = random_density(3, rng);
      ComplexMatrix b = random_density(3, rng);
      CHECK(uhlmann_fidelity(a, b) >= 1.0 - trace_distance(a, b) - 1e-10);
    }
  }
  SUBCASE("fidelity rejects non-PSD input") {
    ComplexMatrix bad = from_rows(2, {{1.5, 0.0}, {0.0, -0.5}});
    CHECK_THROWS_AS(uhlmann_fidelity(bad, identity(2) / 2.0),
                    std::invalid_argument);
  }
}

TEST_CASE("matrix json round trip is bit exact") {
  std::mt19937_64 rng(9);
  ComplexMatrix m = random_density(3, rng);
  json j = matrix_to_json(m, DimProfile{3});
  std::string text = dump_json(j);
  DimProfile dims;
  ComplexMatrix back = matrix_from_json(json::parse(text), &dims);
  REQUIRE(back.rows() == m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      CHECK(m(i, k).real() == back(i, k).real());
      CHECK(m(i, k).imag() == back(i, k).imag());
    }
  CHECK(dims.dims == std::vector<int>{3});

  // 17 significant digits on the wire
  CHECK(dump_json(json(1.0 / 3.0)) == "0.33333333333333331");
}
