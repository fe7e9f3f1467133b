#include <doctest.h>

#include "helpers.hpp"
#include "spakit/channels.hpp"
#include "spakit/json_io.hpp"

using namespace spakit;
using spakit::test::from_rows;
using spakit::test::max_abs_diff;

namespace {

ComplexMatrix unit(int d, int i, int j) {
  ComplexMatrix m = zeros(d, d);
  m(i, j) = 1.0;
  return m;
}

// partially depolarizing channel (1-p) rho + p tr[rho] I/d
QuantumMap partial_depolarize(int d, double p) {
  return choi_of(d, [&](int i, int j) {
    ComplexMatrix img = (1.0 - p) * unit(d, i, j);
    if (i == j) img += p * identity(d) / double(d);
    return img;
  });
}

}  // namespace

TEST_CASE("choi_of reference maps") {
  QuantumMap id2 = make_named_map("identity", {{"d", 2}});
  CHECK(max_abs_diff(id2.choi, max_entangled(2).mat) < 1e-15);

  QuantumMap t2 = make_named_map("transpose", {{"d", 2}});
  CHECK(max_abs_diff(t2.choi, swap_operator(2) / 2.0) < 1e-15);

  QuantumMap dep = make_named_map("depolarize", {{"d", 2}});
  CHECK(max_abs_diff(dep.choi, identity(4) / 4.0) < 1e-15);
}

TEST_CASE("apply") {
  QuantumMap id2 = make_named_map("identity", {{"d", 2}});
  std::mt19937_64 rng(11);
  ComplexMatrix rho = random_density(2, rng);
  CHECK(max_abs_diff(apply_map(id2, rho), rho) < 1e-14);

  // experimental input state, the transpose flips the off-diagonal phase
  ComplexMatrix exp_state = from_rows(
      2, {{0.322, Complex(0.352, -0.307)}, {Complex(0.352, 0.307), 0.678}});
  QuantumMap t2 = make_named_map("transpose", {{"d", 2}});
  CHECK(max_abs_diff(apply_map(t2, exp_state),
                     ComplexMatrix(exp_state.transpose())) < 1e-14);

  QuantumMap red = make_named_map("reduction", {{"d", 2}});
  CHECK(max_abs_diff(apply_map(red, projector(basis_ket(2, 0))),
                     projector(basis_ket(2, 1))) < 1e-14);

  CHECK_THROWS_AS(apply_map(t2, identity(3)), std::invalid_argument);

  SUBCASE("linearity on random inputs") {
    QuantumMap choi = make_named_map("choi_map");
    for (int k = 0; k < 10; ++k) {
      ComplexMatrix a = random_density(3, rng);
      ComplexMatrix b = random_density(3, rng);
      ComplexMatrix lhs = apply_map(choi, 0.3 * a + Complex(0, 1.7) * b);
      ComplexMatrix rhs =
          0.3 * apply_map(choi, a) + Complex(0, 1.7) * apply_map(choi, b);
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("tensor_with_identity") {
  QuantumMap id2 = make_named_map("identity", {{"d", 2}});
  QuantumMap id4 = make_named_map("identity", {{"d", 4}});
  CHECK(max_abs_diff(tensor_with_identity(id2, 2).choi, id4.choi) < 1e-13);

  QuantumMap t2 = make_named_map("transpose", {{"d", 2}});
  QuantumMap idT = tensor_with_identity(t2, 2);
  ComplexMatrix out = apply_map(idT, max_entangled(2).mat);
  CHECK(max_abs_diff(out, swap_operator(2) / 2.0) < 1e-13);

  QuantumMap red = make_named_map("reduction", {{"d", 2}});
  ComplexMatrix red_out =
      apply_map(tensor_with_identity(red, 2), max_entangled(2).mat);
  // (id x R)[P+] = I/2 - P+, minimum eigenvalue -1/2
  CHECK(max_abs_diff(red_out, ComplexMatrix(identity(4) / 2.0 -
                                            max_entangled(2).mat)) < 1e-13);
  CHECK(min_eigenvalue(red_out) == doctest::Approx(-0.5).epsilon(1e-10));

  SUBCASE("product action") {
    std::mt19937_64 rng(12);
    ComplexMatrix a = random_density(2, rng);
    ComplexMatrix b = random_density(2, rng);
    ComplexMatrix lhs = apply_map(idT, kron(a, b));
    ComplexMatrix rhs = kron(a, ComplexMatrix(b.transpose()));
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("compose") {
  QuantumMap t2 = make_named_map("transpose", {{"d", 2}});
  QuantumMap id2 = make_named_map("identity", {{"d", 2}});
  CHECK(max_abs_diff(compose(t2, t2).choi, id2.choi) < 1e-13);

  // transpose after partial depolarization at 2/3 is the SPAed transpose
  ComplexMatrix s2_over_3 = (identity(4) + swap_operator(2)) / 6.0;
  CHECK(max_abs_diff(compose(t2, partial_depolarize(2, 2.0 / 3.0)).choi,
                     s2_over_3) < 1e-13);

  QuantumMap unot = make_named_map("unot");
  CHECK(max_abs_diff(compose(unot, unot).choi, id2.choi) < 1e-13);

  CHECK_THROWS_AS(compose(t2, make_named_map("transpose", {{"d", 3}})),
                  std::invalid_argument);
}

TEST_CASE("classify") {
  MapClassification t3 = classify(make_named_map("transpose", {{"d", 3}}));
  CHECK_FALSE(t3.is_cp);
  CHECK(t3.min_choi_eigenvalue == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
  CHECK(t3.is_tp);
  CHECK(t3.is_unital);
  CHECK(t3.positivity.kind == PositivityEstimate::Kind::numerically_positive);

  MapClassification dep = classify(make_named_map("depolarize", {{"d", 2}}));
  CHECK(dep.is_cp);
  CHECK(dep.is_tp);
  CHECK(dep.is_unital);

  MapClassification inv = classify(make_named_map("inversion", {{"d", 2}}));
  CHECK(inv.positivity.kind == PositivityEstimate::Kind::certified_nonpositive);
  CHECK(inv.positivity.min_product_value < -1e-6);
}

TEST_CASE("unot equals reduction on qubits") {
  QuantumMap unot = make_named_map("unot");
  ComplexMatrix expect = kron(identity(2), pauli_y()) *
                         (swap_operator(2) / 2.0) *
                         kron(identity(2), pauli_y());
  CHECK(max_abs_diff(unot.choi, expect) < 1e-15);
  CHECK(max_abs_diff(unot.choi, make_named_map("reduction", {{"d", 2}}).choi) <
        1e-12);
}

TEST_CASE("choi map and ha map actions") {
  QuantumMap cm = make_named_map("choi_map");
  // Lambda_C[|0><0|] = (|0><0| + |2><2|)/2
  ComplexMatrix img = apply_map(cm, projector(basis_ket(3, 0)));
  ComplexMatrix expect = (projector(basis_ket(3, 0)) + projector(basis_ket(3, 2))) / 2.0;
  CHECK(max_abs_diff(img, expect) < 1e-13);
  CHECK(classify(cm).is_tp);

  QuantumMap ha = make_named_map("ha_map", {{"a", 1}, {"b", 1}, {"c", 1}, {"theta", 0}});
  ComplexMatrix himg = apply_map(ha, projector(basis_ket(3, 0)));
  CHECK(max_abs_diff(himg, identity(3)) < 1e-13);  // diag(a, c, b) = I at 1,1,1
  CHECK(is_hermitian(make_named_map("ha_map", {{"theta", 0.7}}).choi));
  CHECK_THROWS_AS(make_named_map("ha_map", {{"a", -1}}), std::invalid_argument);

  SUBCASE("ha off-diagonal phases") {
    double th = 0.6;
    QuantumMap ham = make_named_map("ha_map", {{"a", 1}, {"b", 1}, {"c", 1}, {"theta", th}});
    ComplexMatrix x01 = apply_map(ham, unit(3, 0, 1));
    CHECK(std::abs(x01(0, 1) - (-std::polar(1.0, th))) < 1e-13);
    ComplexMatrix x02 = apply_map(ham, unit(3, 0, 2));
    CHECK(std::abs(x02(0, 2) - (-std::polar(1.0, -th))) < 1e-13);
  }
}

TEST_CASE("registry round trip") {
  std::vector<QuantumMap> maps = {
      make_named_map("identity", {{"d", 3}}),
      make_named_map("transpose", {{"d", 3}}),
      make_named_map("reduction", {{"d", 2}}),
      make_named_map("choi_map"),
      make_named_map("ha_map", {{"a", 1}, {"b", 1}, {"c", 1}, {"theta", 0.5}}),
      make_named_map("inversion", {{"d", 2}}),
      make_named_map("depolarize", {{"d_in", 2}, {"d_out", 3}}),
      make_named_map("unot"),
  };
  for (const QuantumMap& m : maps) {
    QuantumMap rebuilt = choi_of(
        m.d_in,
        [&](int i, int j) { return apply_map(m, unit(m.d_in, i, j)); },
        m.label);
    CHECK(max_abs_diff(rebuilt.choi, m.choi) < 1e-10);
  }
  CHECK_THROWS_AS(make_named_map("unknown"), std::invalid_argument);

  // transpose(d) minimum Choi eigenvalue is exactly -1/d
  for (int d = 2; d <= 4; ++d)
    CHECK(min_eigenvalue(make_named_map("transpose", {{"d", double(d)}}).choi) ==
          doctest::Approx(-1.0 / d).epsilon(1e-10));
}

TEST_CASE("kraus extraction") {
  QuantumMap id2 = make_named_map("identity", {{"d", 2}});
  KrausSet ks = kraus_from_choi(id2);
  REQUIRE(ks.operators.size() == 1);
  CHECK(max_abs_diff(ks.operators[0] * ks.operators[0].adjoint(), identity(2)) <
        1e-12);

  SUBCASE("SPAed transpose has Choi rank three") {
    ComplexMatrix s2_over_3 = (identity(4) + swap_operator(2)) / 6.0;
    QuantumMap spa_t{2, 2, s2_over_3, "spa(transpose)"};
    KrausSet spa_ks = kraus_from_choi(spa_t);
    CHECK(spa_ks.operators.size() == 3);
    std::mt19937_64 rng(13);
    for (int k = 0; k < 5; ++k) {
      ComplexMatrix rho = random_density(2, rng);
      ComplexMatrix via_kraus = zeros(2, 2);
      for (const auto& op : spa_ks.operators) via_kraus += op * rho * op.adjoint();
      CHECK(max_abs_diff(via_kraus, apply_map(spa_t, rho)) < 1e-9);
    }
  }
  SUBCASE("trace preservation of extracted sets") {
    KrausSet dep = kraus_from_choi(make_named_map("depolarize", {{"d", 2}}));
    ComplexMatrix sum = zeros(2, 2);
    for (const auto& op : dep.operators) sum += op.adjoint() * op;
    CHECK(max_abs_diff(sum, identity(2)) < 1e-9);
  }
  CHECK_THROWS_AS(kraus_from_choi(make_named_map("transpose", {{"d", 2}})),
                  std::invalid_argument);
}

TEST_CASE("channel fidelity bound") {
  QuantumMap dep = make_named_map("depolarize", {{"d", 2}});
  CHECK(channel_fidelity_bound(dep, dep) == doctest::Approx(1.0));

  ComplexMatrix s2_over_3 = (identity(4) + swap_operator(2)) / 6.0;
  QuantumMap spa_t{2, 2, s2_over_3, ""};
  CHECK(channel_fidelity_bound(spa_t, dep) == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937_64 rng(14);
  for (int k = 0; k < 10; ++k) {
    QuantumMap a{2, 2, random_density(4, rng), ""};
    QuantumMap b{2, 2, random_density(4, rng), ""};
    double bound = channel_fidelity_bound(a, b);
    CHECK(bound >= 0.0);
    CHECK(bound <= 1.0);
  }
}

TEST_CASE("map json round trip") {
  QuantumMap t3 = make_named_map("transpose", {{"d", 3}});
  json j = map_to_json(t3);
  QuantumMap back = map_from_json(json::parse(dump_json(j)));
  CHECK(back.d_in == 3);
  CHECK(back.label == "transpose");
  CHECK(max_abs_diff(back.choi, t3.choi) == 0.0);
}
