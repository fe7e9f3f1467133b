#ifndef SPAKIT_TEST_HELPERS_HPP
#define SPAKIT_TEST_HELPERS_HPP

#include <doctest.h>

#include "spakit/optimize.hpp"
#include "spakit/states.hpp"
#include "spakit/tensor.hpp"

namespace spakit::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix from_rows(
    int n, std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(n, n);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const Complex& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline DensityMatrix random_two_qubit_state(std::mt19937_64& rng) {
  return {random_density(4, rng), DimProfile{2, 2}};
}

// random rank-deficient and pure states mixed in
inline DensityMatrix random_two_qubit_state_varied(std::mt19937_64& rng) {
  double pick = uniform01(rng);
  if (pick < 0.3) {
    Vector k = random_ket(4, rng);
    return {projector(k), DimProfile{2, 2}};
  }
  if (pick < 0.5) {
    DensityMatrix bell = named_state("bell:psi-");
    double p = uniform01(rng);
    return {ComplexMatrix((1 - p) * bell.mat + p * random_density(4, rng)),
            DimProfile{2, 2}};
  }
  return random_two_qubit_state(rng);
}

}  // namespace spakit::test

#endif
