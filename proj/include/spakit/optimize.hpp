#ifndef SPAKIT_OPTIMIZE_HPP
#define SPAKIT_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <random>

#include "spakit/tensor.hpp"

namespace spakit {

// Deterministic uniform double in [0,1) from a standardized engine; avoids
// implementation-defined std distributions so payloads are stable.
double uniform01(std::mt19937_64& rng);

// Haar-ish random unit ket (Gaussian components via Box-Muller on uniform01).
Vector random_ket(int d, std::mt19937_64& rng);

// Random density matrix (Ginibre: G G^dag / tr) on `d` levels.
ComplexMatrix random_density(int d, std::mt19937_64& rng);

struct ProductExtremum {
  double value = 0.0;
  Vector ket_a;
  Vector ket_b;
};

// Locally maximize <e f| M |e f> by alternating top-eigenvector updates,
// warm-started from (a0, b0) when given.
ProductExtremum maximize_product_form(const ComplexMatrix& m, int da, int db,
                                      const Vector* a0 = nullptr,
                                      const Vector* b0 = nullptr,
                                      int iters = 60);

// Multi-start global estimate of min_{|e>|f>} <e f| M |e f>.
// Start k uses rng stream seed+k; honors SPA_TOOLKIT_THREADS.
ProductExtremum minimize_product_form_multistart(const ComplexMatrix& m,
                                                 int da, int db, int starts,
                                                 std::uint64_t seed);

ProductExtremum maximize_product_form_multistart(const ComplexMatrix& m,
                                                 int da, int db, int starts,
                                                 std::uint64_t seed);

// Runs fn(i) for i in [0, n) on up to SPA_TOOLKIT_THREADS threads (env var,
// default 1). Results must be written to caller-owned slots, never shared.
void parallel_for(int n, const std::function<void(int)>& fn);

int thread_cap();

}  // namespace spakit

#endif
