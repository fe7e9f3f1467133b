#ifndef SPAKIT_DESIGNS_HPP
#define SPAKIT_DESIGNS_HPP

#include <optional>
#include <vector>

#include "spakit/spa.hpp"

namespace spakit {

struct DesignSet {
  enum class Kind { MUB, SIC, Custom };
  Kind kind = Kind::Custom;
  int dim = 0;
  std::vector<Vector> vectors;  // unit kets
  double residual = 0.0;        // two-design frame error against 2S/(d(d+1))
};

bool is_prime(int n);

// d+1 bases of d vectors each; d = 2 uses the Pauli eigenbases, odd primes
// the quadratic Weyl-Heisenberg construction.
DesignSet mub(int d);

struct TetrahedronPhases {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = M_PI / 3.0;
  double theta4 = -M_PI / 3.0;
};

// SIC sets for d in {2,3}. The qubit tetrahedron is built from the
// magic-basis phase construction; the phases must satisfy
// e^{-2i t2} + e^{-2i t3} + e^{-2i t4} = 0.
DesignSet sic(int d,
              const std::optional<TetrahedronPhases>& phases = std::nullopt);

// max elementwise |(1/N) sum P x P - 2 S_d/(d(d+1))|.
double two_design_check(const DesignSet& set);

// Measure-and-prepare channel induced by the design. With conjugate
// measurement the induced Choi is 2S/(d(d+1)) (the SPAed transpose),
// otherwise (I + d P+)/(d(d+1)).
MeasurePrepareChannel design_channel(const DesignSet& set,
                                     bool conjugate_measurement = true);

}  // namespace spakit

#endif
