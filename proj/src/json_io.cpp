#include "spakit/json_io.hpp"

#include <cstdio>

namespace spakit {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void dump_rec(const json& j, std::string& out, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      if (!first) newline(depth);
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_rec(el, out, indent, depth + 1);
      }
      if (!first) newline(depth);
      out += ']';
      break;
    }
    case json::value_t::number_float:
      append_number(out, j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  return out;
}

json matrix_to_json(const ComplexMatrix& m,
                    const std::optional<DimProfile>& dims) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (dims) j["dims"] = dims->dims;
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      data.push_back({m(i, k).real(), m(i, k).imag()});
  j["data"] = std::move(data);
  return j;
}

ComplexMatrix matrix_from_json(const json& j, DimProfile* dims_out) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const auto& data = j.at("data");
  if (static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix_from_json: data size mismatch");
  ComplexMatrix m(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c, ++k)
      m(i, c) = Complex(data[k][0].get<double>(), data[k][1].get<double>());
  if (dims_out && j.contains("dims"))
    *dims_out = DimProfile(j.at("dims").get<std::vector<int>>());
  return m;
}

json map_to_json(const QuantumMap& map) {
  json j = matrix_to_json(map.choi, map.choi_dims());
  j["d_in"] = map.d_in;
  j["d_out"] = map.d_out;
  j["label"] = map.label;
  return j;
}

QuantumMap map_from_json(const json& j) {
  QuantumMap map;
  map.d_in = j.at("d_in").get<int>();
  map.d_out = j.at("d_out").get<int>();
  map.choi = matrix_from_json(j);
  map.label = j.value("label", "");
  if (map.choi.rows() != map.d_in * map.d_out)
    throw std::invalid_argument("map_from_json: Choi side mismatch");
  return map;
}

json state_to_json(const DensityMatrix& rho) {
  return matrix_to_json(rho.mat, rho.dims);
}

DensityMatrix state_from_json(const json& j) {
  DimProfile dims;
  ComplexMatrix m = matrix_from_json(j, &dims);
  if (dims.dims.empty())
    throw std::invalid_argument("state_from_json: missing dims");
  return make_state(m, dims);
}

}  // namespace spakit
