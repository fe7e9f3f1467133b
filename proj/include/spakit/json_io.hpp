#ifndef SPAKIT_JSON_IO_HPP
#define SPAKIT_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "spakit/channels.hpp"
#include "spakit/states.hpp"
#include "spakit/tensor.hpp"

namespace spakit {

using json = nlohmann::json;

// Serialize with reals at 17 significant digits (lossless double round-trip),
// keys in insertion order untouched.
std::string dump_json(const json& j, int indent = -1);

// {"rows", "cols", "dims", "data": [[re, im], ...] row-major}
json matrix_to_json(const ComplexMatrix& m,
                    const std::optional<DimProfile>& dims = std::nullopt);
ComplexMatrix matrix_from_json(const json& j, DimProfile* dims_out = nullptr);

// matrix schema plus {"d_in", "d_out", "label"}
json map_to_json(const QuantumMap& map);
QuantumMap map_from_json(const json& j);

json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const json& j);

}  // namespace spakit

#endif
