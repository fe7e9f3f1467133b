#ifndef SPAKIT_DETECT_HPP
#define SPAKIT_DETECT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "spakit/spa.hpp"
#include "spakit/witness.hpp"

namespace spakit {

enum class DetectionMethod { spa_spectrum, witness, ppt, ccnr, hom };
enum class DetectionVerdict { entangled, not_detected };

struct DetectionReport {
  DetectionMethod method = DetectionMethod::ppt;
  double statistic = 0.0;
  double threshold = 0.0;
  DetectionVerdict verdict = DetectionVerdict::not_detected;
  std::optional<long long> shots;
  std::optional<double> stderr_estimate;
  std::string note;  // e.g. "separable (exact)" in 2x2 / 2x3
};

// Minimum eigenvalue of the SPAed id x Lambda applied to rho against the
// threshold of the bipartite SPA; cross-checked against the sign of the
// direct (id x Lambda)[rho] spectrum on every call.
DetectionReport spa_detect(const DensityMatrix& rho,
                           const QuantumMap& lambda_map);

DetectionReport ppt_test(const DensityMatrix& rho);

// Realignment trace norm; above 1 certifies entanglement.
DetectionReport ccnr_test(const DensityMatrix& rho);
ComplexMatrix realign(const ComplexMatrix& m, int d_a, int d_b);

struct SeparableApproximation {
  ProductDecomposition decomposition;
  double distance = 0.0;  // Hilbert-Schmidt distance to the target
  int iterations = 0;
};

// Gilbert-style alternating linear optimization over product states with
// fully corrective weight re-optimization. Distance is non-increasing;
// returns the best mixture found.
SeparableApproximation nearest_separable(const DensityMatrix& rho,
                                         int max_iter = 5000,
                                         std::uint64_t seed = 1);

// Coincidence probability p_c = (1 - tr[s1 s2])/2 of the two-photon
// interference relation.
double hom_coincidence(const DensityMatrix& sigma1, const DensityMatrix& sigma2);

// Shot-level estimate of tr[W~ rho] = 1 - 2 p_c via per-shot sampling of
// mixture components and a coincidence Bernoulli draw. Shots above 1e8 take
// the analytic shortcut. Verdict at 3 sigma against the SPA threshold.
DetectionReport hom_witness_estimate(const SpaWitness& spa_w,
                                     const DensityMatrix& rho, long long shots,
                                     std::uint64_t seed);

}  // namespace spakit

#endif
