#ifndef SPAKIT_CHANNELS_HPP
#define SPAKIT_CHANNELS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spakit/states.hpp"
#include "spakit/tensor.hpp"

namespace spakit {

// Linear map between operator spaces, stored as its Choi matrix
// chi = (id x Lambda)[P+_{d_in}] on side d_in * d_out, input-copy factor
// first. Trace-preserving maps have unit-trace chi.
struct QuantumMap {
  int d_in = 0;
  int d_out = 0;
  ComplexMatrix choi;
  std::string label;

  DimProfile choi_dims() const { return DimProfile{d_in, d_out}; }
};

// Build the Choi matrix from the basis-image table Lambda[|i><j|].
QuantumMap choi_of(int d_in,
                   const std::function<ComplexMatrix(int, int)>& action,
                   const std::string& label = "");

// Lambda(rho) = d_in * tr_A[ chi (rho^T x I) ]; linear, defined on any
// matrix of matching side.
ComplexMatrix apply_map(const QuantumMap& map, const ComplexMatrix& rho);

// id_{d_id} x Lambda, identity factor first.
QuantumMap tensor_with_identity(const QuantumMap& map, int d_id);

// f after g.
QuantumMap compose(const QuantumMap& f, const QuantumMap& g);

// Adjoint map w.r.t. the Hilbert-Schmidt form: tr[Lambda[A] B] = tr[A adj[B]].
QuantumMap adjoint_map(const QuantumMap& map);

struct PositivityEstimate {
  enum class Kind { certified_nonpositive, numerically_positive };
  Kind kind = Kind::numerically_positive;
  double min_product_value = 0.0;  // min over sampled product states
  Vector witness_a, witness_b;     // product state attaining the minimum
};

struct MapClassification {
  bool is_cp = false;
  double min_choi_eigenvalue = 0.0;
  bool is_tp = false;
  double tp_deviation = 0.0;
  bool is_unital = false;
  double unital_deviation = 0.0;
  PositivityEstimate positivity;  // heuristic, never a proof of positivity
};

// CP/TP/unital within shared tolerances; positivity via multi-start
// product-state minimization (64 starts by default).
MapClassification classify(const QuantumMap& map, int starts = 64,
                           std::uint64_t seed = 20240901);

struct KrausSet {
  std::vector<ComplexMatrix> operators;  // d_out x d_in each
};

// Choi eigendecomposition with eigenvalue cutoff 1e-10; throws on non-CP input.
KrausSet kraus_from_choi(const QuantumMap& map);

// max(0, 1 - d_in * D_tr(chi_a, chi_b)), the entanglement-breaking gate
// fidelity floor.
double channel_fidelity_bound(const QuantumMap& a, const QuantumMap& b);

// Registry: identity(d), transpose(d), reduction(d), choi_map, inversion(d),
// depolarize(d_in[,d_out]), unot, ha_map(a,b,c,theta).
QuantumMap make_named_map(const std::string& name,
                          const std::map<std::string, double>& params = {});

struct MapRegistryEntry {
  std::string name;
  std::string params;
  std::string summary;
};
std::vector<MapRegistryEntry> map_registry();

}  // namespace spakit

#endif
