#ifndef SPAKIT_SPA_HPP
#define SPAKIT_SPA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spakit/channels.hpp"

namespace spakit {

struct ProductTerm {
  double weight = 0.0;
  Vector ket_a;
  Vector ket_b;
};
using ProductDecomposition = std::vector<ProductTerm>;

// Sum of w |e><e| x |f><f| over the decomposition.
ComplexMatrix decomposition_operator(const ProductDecomposition& dec);

struct SpaResult {
  QuantumMap original;
  QuantumMap spa_map;
  double p_star = 0.0;
  double lambda = 0.0;          // max(0, -min Choi eigenvalue)
  double min_choi_eigenvalue = 0.0;
  double threshold = 0.0;       // detection cut p*/d^2, bipartite id x Lambda case
};

// Minimal white-noise admixture making the map CP:
// spa chi = (1-p*) chi + p* I/(d_in d_out), p* = D lambda / (1 + D lambda).
// The closed form is cross-checked against PSD bisection on every call;
// disagreement beyond 1e-8 throws.
SpaResult spa(const QuantumMap& map);

// Generalized noise operator: (1-p) chi + p (I/d_in x K), minimal p by
// bisection. K must be a full-rank state on the output space.
SpaResult spa_general(const QuantumMap& map, const ComplexMatrix& k_state);

// SPA of id x Lambda for square Lambda, with the detection threshold
// lambda d^2 / (lambda d^4 + 1).
SpaResult spa_bipartite(const QuantumMap& lambda_map);

struct SpaLoccResult {
  double q = 0.0;
  QuantumMap term_a;  // id x spa(Lambda)
  QuantumMap term_b;  // spa_inversion x depolarize
  QuantumMap mixture; // (1-q) term_a + q term_b; equals spa_bipartite's map
};

// LOCC split of the bipartite SPA. The mixture is verified against
// spa_bipartite to 1e-9 on every call.
SpaLoccResult spa_locc(const QuantumMap& lambda_map);

// CP approximation of the inversion map -id:
// (1/(d^2-1)) Theta + (d^2/(d^2-1)) D, trace-preserving by construction.
QuantumMap spa_inversion(int d);

struct MeasurePrepareChannel {
  std::vector<ComplexMatrix> povm;            // sums to I
  std::vector<DensityMatrix> preparations;
  QuantumMap induced;                         // built from the action table
};

// Builds the measure-and-prepare channel whose Choi matrix equals
// sum_i w_i |e_i><e_i| x |f_i><f_i|; POVM elements are d_in w_i |e_i*><e_i*|.
MeasurePrepareChannel measure_prepare_from(const ProductDecomposition& dec);

enum class EbStatus { EB, NotEB, Inconclusive };

struct EbCertificate {
  enum class Kind {
    none,
    nppt_eigenvalue,        // NotEB: negative partial-transpose eigenvalue
    ccnr_violation,         // NotEB: realignment trace norm above 1
    ppt_exact,              // EB: PPT in 2x2 or 2x3, where PPT = SEP
    design_decomposition,   // EB: matched a known two-design decomposition
    explicit_decomposition  // EB: converged separable decomposition
  };
  Kind kind = Kind::none;
  double value = 0.0;       // eigenvalue / ccnr norm / reconstruction residual
  std::optional<ProductDecomposition> decomposition;
  double decomposition_distance = 0.0;  // Hilbert-Schmidt gap of decomposition
};

struct EbVerdict {
  EbStatus status = EbStatus::Inconclusive;
  EbCertificate certificate;
  double nearest_separable_distance = -1.0;  // filled on the Inconclusive path
};

// Decision cascade on the (trace-normalized) Choi state:
// NPPT -> exact-dimension PPT -> known design decomposition -> CCNR ->
// Gilbert distance. Requires a CP map.
EbVerdict eb_verdict(const QuantumMap& map, std::uint64_t seed = 77,
                     int gilbert_iters = 800);

struct IsotropicScan {
  double grid_step = 1e-3;
  double boundary_estimate = 0.0;   // largest noise level still detected
  double expected_boundary = 0.0;   // d/(d+1)
  bool detects_all_entangled = false;
};

struct ConjectureReport {
  std::string map_label;
  MapClassification classification;  // of the original map
  SpaResult spa_result;
  EbVerdict verdict;                 // of the SPAed map
  IsotropicScan scan;
};

// Probe of the entanglement-breaking conjecture for one map: SPA, verdict
// with raw certificates, and the isotropic detection scan. Makes no
// optimality claim.
ConjectureReport conjecture_report(const QuantumMap& map,
                                   std::uint64_t seed = 77);

}  // namespace spakit

#endif
