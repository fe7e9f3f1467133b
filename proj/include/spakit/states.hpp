#ifndef SPAKIT_STATES_HPP
#define SPAKIT_STATES_HPP

#include <optional>
#include <string>
#include <vector>

#include "spakit/tensor.hpp"

namespace spakit {

// Positive unit-trace operator with an explicit subsystem dimension list.
struct DensityMatrix {
  ComplexMatrix mat;
  DimProfile dims;

  int side() const { return dims.total(); }
};

struct StateValidation {
  bool valid = true;
  std::vector<std::string> violations;  // "what: magnitude" entries
  std::optional<DensityMatrix> state;
};

// Checks hermiticity (1e-12), unit trace (1e-12) and positivity (-1e-9)
// and reports every violated invariant with its magnitude.
StateValidation validate_state(const ComplexMatrix& m, const DimProfile& dims);

// Throwing variant for internal constructors.
DensityMatrix make_state(const ComplexMatrix& m, const DimProfile& dims);

Vector max_entangled_ket(int d);
DensityMatrix max_entangled(int d);

// |Phi_mn> = (id x W_mn) |phi_d^+> with the Weyl operator
// W_mn = sum_k exp(2 pi i k n / d) |k><k+m|.
Vector weyl_ket(int d, int m, int n);
DensityMatrix weyl_basis_state(int d, int m, int n);

// (1-p) P_d^+ + (p/d^2) I -- noise convention, p multiplies white noise.
DensityMatrix isotropic(int d, double p);

ComplexMatrix swap_operator(int d);

struct SymAntisym {
  ComplexMatrix sym;       // S_d = (I + Pi)/2
  ComplexMatrix antisym;   // A_d = (I - Pi)/2
};
SymAntisym sym_antisym_projectors(int d);

// Named-state registry: "bell:phi+", "bell:psi-", "isotropic:d=3,p=0.5",
// "maxent:d=4", "weyl:d=3,m=1,n=2".
DensityMatrix named_state(const std::string& name);
std::vector<std::string> named_state_patterns();

}  // namespace spakit

#endif
