#include "spakit/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "spakit/designs.hpp"
#include "spakit/detect.hpp"
#include "spakit/spa.hpp"
#include "spakit/witness.hpp"

namespace spakit::cli {

namespace {

std::map<std::string, double> parse_params(const std::string& dim,
                                           const std::string& params) {
  std::map<std::string, double> p;
  if (!dim.empty()) p["d"] = std::stod(dim);
  if (!params.empty()) {
    // positional a,b,c,theta
    std::vector<double> vals;
    std::stringstream ss(params);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
    const char* names[] = {"a", "b", "c", "theta"};
    if (vals.size() > 4)
      throw std::invalid_argument("--params takes at most a,b,c,theta");
    for (size_t i = 0; i < vals.size(); ++i) p[names[i]] = vals[i];
  }
  return p;
}

QuantumMap map_from_flags(const std::string& name, const std::string& dim,
                          const std::string& params) {
  return make_named_map(name, parse_params(dim, params));
}

DensityMatrix state_from_flag(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("cannot open state file " + spec.substr(1));
    json j = json::parse(in);
    return state_from_json(j);
  }
  return named_state(spec);
}

const char* verdict_str(DetectionVerdict v) {
  return v == DetectionVerdict::entangled ? "entangled" : "not_detected";
}

const char* method_str(DetectionMethod m) {
  switch (m) {
    case DetectionMethod::spa_spectrum: return "spa_spectrum";
    case DetectionMethod::witness: return "witness";
    case DetectionMethod::ppt: return "ppt";
    case DetectionMethod::ccnr: return "ccnr";
    case DetectionMethod::hom: return "hom";
  }
  return "?";
}

json report_to_json(const DetectionReport& r) {
  json j;
  j["method"] = method_str(r.method);
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  j["verdict"] = verdict_str(r.verdict);
  if (r.shots) j["shots"] = *r.shots;
  if (r.stderr_estimate) j["stderr"] = *r.stderr_estimate;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json decomposition_to_json(const ProductDecomposition& dec) {
  json arr = json::array();
  for (const auto& t : dec) {
    json kets_a = json::array(), kets_b = json::array();
    for (Eigen::Index i = 0; i < t.ket_a.size(); ++i)
      kets_a.push_back({t.ket_a(i).real(), t.ket_a(i).imag()});
    for (Eigen::Index i = 0; i < t.ket_b.size(); ++i)
      kets_b.push_back({t.ket_b(i).real(), t.ket_b(i).imag()});
    arr.push_back({{"weight", t.weight}, {"ket_a", kets_a}, {"ket_b", kets_b}});
  }
  return arr;
}

const char* eb_status_str(EbStatus s) {
  switch (s) {
    case EbStatus::EB: return "EB";
    case EbStatus::NotEB: return "NotEB";
    default: return "Inconclusive";
  }
}

const char* eb_kind_str(EbCertificate::Kind k) {
  switch (k) {
    case EbCertificate::Kind::nppt_eigenvalue: return "nppt_eigenvalue";
    case EbCertificate::Kind::ccnr_violation: return "ccnr_violation";
    case EbCertificate::Kind::ppt_exact: return "ppt_exact";
    case EbCertificate::Kind::design_decomposition: return "design_decomposition";
    case EbCertificate::Kind::explicit_decomposition:
      return "explicit_decomposition";
    default: return "none";
  }
}

json verdict_to_json(const EbVerdict& v, bool with_decomposition = true) {
  json j;
  j["status"] = eb_status_str(v.status);
  j["certificate"]["kind"] = eb_kind_str(v.certificate.kind);
  j["certificate"]["value"] = v.certificate.value;
  if (v.certificate.decomposition && with_decomposition) {
    j["certificate"]["decomposition"] =
        decomposition_to_json(*v.certificate.decomposition);
    j["certificate"]["decomposition_distance"] =
        v.certificate.decomposition_distance;
  }
  if (v.nearest_separable_distance >= 0)
    j["nearest_separable_distance"] = v.nearest_separable_distance;
  return j;
}

struct OutputOpts {
  bool compact = false;
  std::string csv_path;
};

std::string render(const json& payload, const OutputOpts& opts) {
  return dump_json(payload, opts.compact ? -1 : 2) + "\n";
}

void write_isotropic_csv(const std::string& path, const QuantumMap& map) {
  SpaResult sres = spa_bipartite(map);
  const int d = map.d_in;
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open csv path " + path);
  out << "p,statistic,threshold,verdict\n";
  char buf[64];
  for (int k = 0; k <= 1000; ++k) {
    double p = k * 1e-3;
    DensityMatrix iso = isotropic(d, p);
    double stat = min_eigenvalue(apply_map(sres.spa_map, iso.mat));
    bool ent = stat < sres.threshold - 1e-10;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,", p, stat,
                  sres.threshold);
    out << buf << (ent ? "entangled" : "not_detected") << "\n";
  }
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CommandResult result;
  CLI::App app{"structural physical approximation toolkit"};
  app.require_subcommand(1);

  std::string map_name, dim, params, state_spec, method, kind, phases,
      out_path;
  long long shots = 0;
  std::uint64_t seed = 0;
  bool have_seed = false, bipartite = false, locc = false, compact = false;
  std::string csv_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", compact, "compact single-line JSON payload");
    cmd->add_option("--csv", csv_path, "CSV sweep output path");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (required)")->each(
        [&](const std::string&) { have_seed = true; });
  };

  CLI::App* maps = app.add_subcommand("maps", "map registry");
  CLI::App* maps_list = maps->add_subcommand("list", "list named maps");
  add_common(maps_list);

  CLI::App* spa_cmd = app.add_subcommand("spa", "structural physical approximation");
  spa_cmd->add_option("--map", map_name, "registry map name")->required();
  spa_cmd->add_option("--dim", dim, "map dimension");
  spa_cmd->add_option("--params", params, "a,b,c,theta for parametrized maps");
  spa_cmd->add_flag("--bipartite", bipartite, "SPA of id x map");
  spa_cmd->add_flag("--locc", locc, "LOCC split of the bipartite SPA");
  add_common(spa_cmd);

  CLI::App* conj = app.add_subcommand("conjecture", "entanglement-breaking probe");
  conj->add_option("--map", map_name, "registry map name")->required();
  conj->add_option("--dim", dim, "map dimension");
  conj->add_option("--params", params, "a,b,c,theta for parametrized maps");
  add_seed(conj);
  add_common(conj);

  CLI::App* design = app.add_subcommand("design", "two-design machinery");
  CLI::App* design_verify = design->add_subcommand("verify", "check a design");
  design_verify->add_option("--kind", kind, "sic or mub")->required();
  design_verify->add_option("--dim", dim, "dimension")->required();
  design_verify->add_option("--phases", phases, "t2,t3,t4 tetrahedron phases");
  add_common(design_verify);

  CLI::App* witness = app.add_subcommand("witness", "entanglement witnesses");
  CLI::App* witness_eval = witness->add_subcommand("eval", "evaluate on a state");
  witness_eval->add_option("--map", map_name, "positive map behind the witness")
      ->required();
  witness_eval->add_option("--dim", dim, "map dimension");
  witness_eval->add_option("--params", params, "a,b,c,theta");
  witness_eval->add_option("--state", state_spec, "named state or @file.json")
      ->required();
  add_common(witness_eval);

  CLI::App* detect = app.add_subcommand("detect", "entanglement detection");
  detect->add_option("--state", state_spec, "named state or @file.json")
      ->required();
  detect->add_option("--method", method,
                     "spa:<map> | ppt | ccnr | hom:<map>")->required();
  detect->add_option("--shots", shots, "shot count for sampled methods");
  add_seed(detect);
  add_common(detect);

  CLI::App* choi = app.add_subcommand("choi", "Choi matrices");
  CLI::App* choi_dump = choi->add_subcommand("dump", "dump a Choi matrix");
  choi_dump->add_option("--map", map_name, "registry map name");
  choi_dump->add_option("--state", state_spec, "named state or @file.json");
  choi_dump->add_option("--out", out_path, "also write payload to file");
  add_common(choi_dump);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    std::ostringstream os;
    os << e.what() << "\n" << app.help();
    result.diagnostics = os.str();
    return result;
  }

  OutputOpts opts{compact, csv_path};
  try {
    json payload;
    if (maps_list->parsed()) {
      payload["maps"] = json::array();
      for (const auto& e : map_registry())
        payload["maps"].push_back(
            {{"name", e.name}, {"params", e.params}, {"summary", e.summary}});
      payload["states"] = named_state_patterns();
    } else if (spa_cmd->parsed()) {
      QuantumMap map = map_from_flags(map_name, dim, params);
      if (locc) {
        SpaLoccResult r = spa_locc(map);
        payload["map"] = map.label;
        payload["q"] = r.q;
        payload["weights"] = {1.0 - r.q, r.q};
        payload["term_a"] = map_to_json(r.term_a);
        payload["term_b"] = map_to_json(r.term_b);
      } else {
        SpaResult r = bipartite ? spa_bipartite(map) : spa(map);
        payload["map"] = map.label;
        payload["bipartite"] = bipartite;
        payload["p_star"] = r.p_star;
        payload["lambda"] = r.lambda;
        payload["min_choi_eigenvalue"] = r.min_choi_eigenvalue;
        payload["threshold"] = r.threshold;
        payload["spa_choi"] = map_to_json(r.spa_map);
      }
    } else if (conj->parsed()) {
      if (!have_seed)
        throw std::invalid_argument("conjecture requires --seed");
      QuantumMap map = map_from_flags(map_name, dim, params);
      ConjectureReport rep = conjecture_report(map, seed);
      payload["map"] = rep.map_label;
      payload["p_star"] = rep.spa_result.p_star;
      payload["lambda"] = rep.spa_result.lambda;
      payload["positivity"] =
          rep.classification.positivity.kind ==
                  PositivityEstimate::Kind::certified_nonpositive
              ? "certified_nonpositive"
              : "numerically_positive";
      payload["min_product_value"] =
          rep.classification.positivity.min_product_value;
      payload["verdict"] = verdict_to_json(rep.verdict);
      payload["isotropic_scan"] = {
          {"grid_step", rep.scan.grid_step},
          {"boundary_estimate", rep.scan.boundary_estimate},
          {"expected_boundary", rep.scan.expected_boundary},
          {"detects_all_entangled", rep.scan.detects_all_entangled}};
      if (!csv_path.empty()) write_isotropic_csv(csv_path, map);
    } else if (design_verify->parsed()) {
      DesignSet set;
      if (kind == "sic") {
        std::optional<TetrahedronPhases> ph;
        if (!phases.empty()) {
          std::stringstream ss(phases);
          std::string item;
          std::vector<double> v;
          while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
          if (v.size() != 3)
            throw std::invalid_argument("--phases needs t2,t3,t4");
          ph = TetrahedronPhases{0.0, v[0], v[1], v[2]};
        }
        set = sic(std::stoi(dim), ph);
      } else if (kind == "mub") {
        set = mub(std::stoi(dim));
      } else {
        throw std::invalid_argument("design verify: --kind must be sic or mub");
      }
      payload["kind"] = kind;
      payload["dim"] = set.dim;
      payload["count"] = set.vectors.size();
      payload["residual"] = set.residual;
      payload["pass"] = set.residual < 1e-8;
    } else if (witness_eval->parsed()) {
      QuantumMap map = map_from_flags(map_name, dim, params);
      Witness w = witness_from_map(map);
      DensityMatrix rho = state_from_flag(state_spec);
      WitnessValue val = evaluate_witness(w, rho);
      payload["map"] = map.label;
      payload["state"] = state_spec;
      payload["value"] = val.value;
      payload["verdict"] = val.detected ? "detected" : "not_detected";
      payload["psd_no_detection"] = w.psd_no_detection;
      if (!w.psd_no_detection) {
        SpaWitness sw = spa_witness(w);
        double sval = (sw.state.mat * rho.mat).trace().real();
        payload["spa"] = {{"p_star", sw.p_star},
                          {"threshold", sw.threshold},
                          {"value", sval},
                          {"detected", sval < sw.threshold - 1e-10}};
      }
    } else if (detect->parsed()) {
      DensityMatrix rho = state_from_flag(state_spec);
      DetectionReport rep;
      auto colon = method.find(':');
      std::string head = method.substr(0, colon);
      std::string tail =
          colon == std::string::npos ? "" : method.substr(colon + 1);
      if (head == "spa") {
        if (tail.empty())
          throw std::invalid_argument("detect: --method spa:<map name>");
        int d = rho.dims[0];
        rep = spa_detect(rho, make_named_map(tail, {{"d", double(d)}}));
      } else if (head == "ppt") {
        rep = ppt_test(rho);
      } else if (head == "ccnr") {
        rep = ccnr_test(rho);
      } else if (head == "hom") {
        if (!have_seed) throw std::invalid_argument("detect hom requires --seed");
        if (shots < 1) throw std::invalid_argument("detect hom requires --shots");
        std::string wmap = tail.empty() ? "transpose" : tail;
        int d = rho.dims[0];
        Witness w = witness_from_map(make_named_map(wmap, {{"d", double(d)}}));
        rep = hom_witness_estimate(spa_witness(w), rho, shots, seed);
      } else {
        throw std::invalid_argument("detect: unknown method '" + method + "'");
      }
      payload = report_to_json(rep);
      payload["state"] = state_spec;
    } else if (choi_dump->parsed()) {
      if (map_name.empty() == state_spec.empty())
        throw std::invalid_argument("choi dump: give exactly one of --map/--state");
      if (!map_name.empty())
        payload = map_to_json(map_from_flags(map_name, dim, params));
      else
        payload = state_to_json(state_from_flag(state_spec));
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot open --out path");
        out << dump_json(payload, compact ? -1 : 2) << "\n";
      }
    }
    result.payload = std::move(payload);
    result.rendered = render(result.payload, opts);
    result.exit_code = 0;
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.diagnostics = std::string("invalid input: ") + e.what();
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.diagnostics = std::string("numerical failure: ") + e.what();
  }
  return result;
}

}  // namespace spakit::cli
