#ifndef SPAKIT_WITNESS_HPP
#define SPAKIT_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spakit/channels.hpp"

namespace spakit {

// Hermitian block operator on d_A x d_B. Witness-hood (nonnegativity on
// product states) is only ever checked heuristically.
struct Witness {
  ComplexMatrix op;
  DimProfile dims;           // exactly two entries
  bool trace_normalized = false;
  bool psd_no_detection = false;  // PSD operator: detects nothing

  int d_a() const { return dims[0]; }
  int d_b() const { return dims[1]; }
};

// W = (id x Lambda)[P+] for the default Q, else (id x adj Lambda)[Q].
// A CP input yields a PSD operator flagged psd_no_detection.
Witness witness_from_map(const QuantumMap& lambda_map,
                         const std::optional<ComplexMatrix>& q = std::nullopt);

struct WitnessValue {
  double value = 0.0;
  bool detected = false;  // value < -1e-10
};
WitnessValue evaluate_witness(const Witness& w, const DensityMatrix& rho);

struct SpaWitness {
  DensityMatrix state;    // (1-p*) W + p* I/d^2, PSD and unit trace
  double p_star = 0.0;
  double threshold = 0.0; // p*/d^2; tr[state rho] < threshold detects rho
  bool auto_normalized = false;
};

// Requires tr W = 1 (auto-normalizes otherwise, flagged).
SpaWitness spa_witness(const Witness& w);

struct LocalTerm {
  double coefficient = 0.0;
  ComplexMatrix povm_a;  // PSD
  ComplexMatrix povm_b;  // PSD
};
using LocalDecomposition = std::vector<LocalTerm>;

// Expansion in the orthonormal Hermitian product basis, with traceless
// factors shifted minimally to PSD. At most d_A^2 d_B^2 terms.
LocalDecomposition decompose_local(const Witness& w);

ComplexMatrix local_decomposition_operator(const LocalDecomposition& dec,
                                           int d_a, int d_b);

// Transpose every factor; sum c tr[(tau^T x w^T) rho] = tr[W rho^T].
LocalDecomposition mdi_witness(const LocalDecomposition& dec);

struct WitnessStep {
  ComplexMatrix candidate;        // W - epsilon P'
  bool still_witness = false;     // heuristic multi-start verdict
  double min_product_value = 0.0;
};

WitnessStep optimize_witness_step(const Witness& w, const ComplexMatrix& p_sub,
                                  double epsilon, int starts = 128,
                                  std::uint64_t seed = 4242);

struct SpanningCheck {
  std::vector<std::pair<Vector, Vector>> kernel_states;
  int span_dimension = 0;
};

// Collects product states with |<ef|W|ef>| < 1e-8 from seeded multi-start
// minimization and reports the rank of their span. Sufficient-condition
// probe only.
SpanningCheck spanning_property_check(const Witness& w, int samples,
                                      std::uint64_t seed);

}  // namespace spakit

#endif
