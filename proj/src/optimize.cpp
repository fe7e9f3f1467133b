#include "spakit/optimize.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace spakit {

double uniform01(std::mt19937_64& rng) {
  return (rng() >> 11) * 0x1.0p-53;
}

Vector random_ket(int d, std::mt19937_64& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    // Box-Muller
    double u1 = std::max(uniform01(rng), 1e-300);
    double u2 = uniform01(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    v(i) = Complex(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
  }
  return v / v.norm();
}

ComplexMatrix random_density(int d, std::mt19937_64& rng) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double u1 = std::max(uniform01(rng), 1e-300);
      double u2 = uniform01(rng);
      double r = std::sqrt(-2.0 * std::log(u1));
      g(i, j) = Complex(r * std::cos(2.0 * M_PI * u2),
                        r * std::sin(2.0 * M_PI * u2));
    }
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

namespace {

// (I x <f|) M (I x |f>)
ComplexMatrix contract_b(const ComplexMatrix& m, int da, int db,
                         const Vector& f) {
  ComplexMatrix out = zeros(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out(i, j) = f.adjoint() * m.block(i * db, j * db, db, db) * f;
  return out;
}

// (<e| x I) M (|e> x I)
ComplexMatrix contract_a(const ComplexMatrix& m, int da, int db,
                         const Vector& e) {
  ComplexMatrix out = zeros(db, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      out += std::conj(e(i)) * e(j) * m.block(i * db, j * db, db, db);
  return out;
}

}  // namespace

ProductExtremum maximize_product_form(const ComplexMatrix& m, int da, int db,
                                      const Vector* a0, const Vector* b0,
                                      int iters) {
  std::mt19937_64 fallback(12345);
  Vector f = b0 ? *b0 : random_ket(db, fallback);
  Vector e = a0 ? *a0 : Vector();
  for (int it = 0; it < iters; ++it) {
    EigResult ra = hermitian_eig(contract_b(m, da, db, f));
    e = ra.vectors.col(da - 1);
    EigResult rb = hermitian_eig(contract_a(m, da, db, e));
    Vector fn = rb.vectors.col(db - 1);
    bool converged = std::abs(std::abs(fn.dot(f)) - 1.0) < 1e-15;
    f = fn;
    if (converged && it > 0) break;
  }
  Vector ef = kron(ComplexMatrix(e), ComplexMatrix(f));
  double val = (ef.adjoint() * m * ef)(0, 0).real();
  return {val, e, f};
}

ProductExtremum maximize_product_form_multistart(const ComplexMatrix& m,
                                                 int da, int db, int starts,
                                                 std::uint64_t seed) {
  std::vector<ProductExtremum> results(static_cast<size_t>(starts));
  parallel_for(starts, [&](int k) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
    Vector f = random_ket(db, rng);
    Vector e = random_ket(da, rng);
    results[static_cast<size_t>(k)] =
        maximize_product_form(m, da, db, &e, &f);
  });
  ProductExtremum best = results[0];
  for (const auto& r : results)
    if (r.value > best.value) best = r;
  return best;
}

ProductExtremum minimize_product_form_multistart(const ComplexMatrix& m,
                                                 int da, int db, int starts,
                                                 std::uint64_t seed) {
  ProductExtremum r = maximize_product_form_multistart(-m, da, db, starts, seed);
  r.value = -r.value;
  return r;
}

int thread_cap() {
  const char* env = std::getenv("SPA_TOOLKIT_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int threads = std::min(thread_cap(), n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t]() {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace spakit
