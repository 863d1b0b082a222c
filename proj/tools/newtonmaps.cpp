// newtonmaps: analyze, classify, render and verify Newton maps from the shell.
// Exit codes: 0 ok, 1 verification/diagnostic failure, 2 usage or parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newtonmaps/classifier.hpp"
#include "newtonmaps/dynamics.hpp"
#include "newtonmaps/json_io.hpp"
#include "newtonmaps/mcmullen.hpp"
#include "newtonmaps/newton_core.hpp"
#include "newtonmaps/parse.hpp"
#include "newtonmaps/render.hpp"
#include "newtonmaps/verification.hpp"

namespace nm = newtonmaps;
using nm::io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!path.empty()) nm::write_file(path, text);
}

json analyze_report(const std::string& spec, bool already_newton, double tol) {
  const auto parsed = nm::parse_map(spec, tol);
  const bool is_newton = already_newton || parsed.is_newton;
  json out{{"schema", nm::io::kSchema}, {"input", spec}};
  json warnings = json::array();

  nm::RationalMap N;
  if (is_newton) {
    N = parsed.map;
  } else {
    if (parsed.map.is_constant()) throw UsageError("constant map has no Newton map");
    out["source"] = nm::io::to_json(parsed.map);
    N = nm::newton_map(parsed.map);
    out["expected_degree"] = nm::expected_degree(parsed.map);
  }
  out["newton"] = nm::io::to_json(N);
  out["degree"] = N.degree();

  if (N.degree() < 2) {
    warnings.push_back(N.degree() == 1 ? "linear Newton map (1-1/k)z: degree < 2, fixed-point theory not applied"
                                       : "constant map");
    if (N.degree() == 1) {
      json fps = json::array();
      for (const auto& fp : nm::fixed_points(N)) fps.push_back(nm::io::to_json(fp));
      out["fixed_points"] = fps;
    }
    out["warnings"] = warnings;
    return out;
  }

  json fps = json::array();
  for (const auto& fp : nm::fixed_points(N)) fps.push_back(nm::io::to_json(fp));
  out["fixed_points"] = fps;

  try {
    out["residue_sum"] = nm::io::to_json(nm::residue_sum(N));
  } catch (const std::domain_error& e) {
    out["residue_sum"] = nullptr;
    warnings.push_back(e.what());
  }

  const auto ch = nm::characterize(N);
  json chj{{"is_newton", ch.is_newton}, {"reconstruction_verified", ch.reconstruction_verified}};
  if (!ch.reason.empty()) chj["reason"] = ch.reason;
  if (ch.reconstructed_R) chj["reconstructed_R"] = nm::io::to_json(*ch.reconstructed_R);
  out["characterization"] = chj;

  json ex = json::array();
  for (const auto& p : nm::exceptional_points(N)) ex.push_back(nm::io::to_json(p));
  out["exceptional_points"] = ex;

  const auto cnt = nm::count_attracting(N);
  out["counts"] = {{"attracting", cnt.attracting}, {"repelling", cnt.repelling}};

  const auto cps = nm::critical_points(N);
  out["critical_points"] = {{"finite", nm::io::to_json(cps.finite)}, {"at_infinity", cps.at_infinity}};
  out["warnings"] = warnings;
  return out;
}

json classify_report(int d) {
  if (d < 3 || d > 5) throw UsageError("classify: d must be 3, 4 or 5");
  const auto rep = nm::verify_table(d, 1e-9);
  json rows = json::array();
  for (const auto& r : rep.enumeration.rows) {
    json params = json::object();
    for (const auto& p : r.params) params[p.name] = nm::io::to_json(p.value);
    bool matched = false;
    for (const auto& chk : rep.rows)
      if (chk.row == &r) matched = chk.matched;
    rows.push_back({{"id", r.table_row_id},
                    {"pattern", r.pattern.to_string()},
                    {"params", params},
                    {"p_coeffs", nm::io::to_json(r.p)},
                    {"newton_coeffs", nm::io::to_json(r.newton.num())},
                    {"matched", matched}});
  }
  return {{"schema", nm::io::kSchema},
          {"d", d},
          {"rows", rows},
          {"discarded", rep.enumeration.discarded},
          {"expected_rows", nm::golden_rows(d).size()},
          {"all_matched", rep.all_matched()}};
}

struct RenderArgs {
  std::vector<double> window{0.0, 0.0, 2.0, 2.0};
  std::vector<int> res{400, 400};
  int cap = 1000;
  std::string out;
};

void add_render_options(CLI::App* cmd, RenderArgs& a) {
  cmd->add_option("--window", a.window, "cx cy half-width half-height")->expected(4);
  cmd->add_option("--res", a.res, "width height in pixels")->expected(2);
  cmd->add_option("--cap", a.cap, "iteration cap per pixel");
  cmd->add_option("--out", a.out, "output image (.ppm); a .json sidecar is written next to it")->required();
}

int do_render(const nm::RationalMap& N, const RenderArgs& a, const std::string& label) {
  if (a.res[0] < 16 || a.res[1] < 16) throw UsageError("resolution must be at least 16x16");
  if (a.cap < 1) throw UsageError("cap must be at least 1");
  if (a.window[2] <= 0 || a.window[3] <= 0) throw UsageError("window half-sizes must be positive");
  if (N.degree() < 1) throw UsageError("cannot render a constant map");
  nm::BasinGrid g;
  try {
    g = nm::basin_grid(N, {{a.window[0], a.window[1]}, a.window[2], a.window[3]}, {a.res[0], a.res[1]}, a.cap);
  } catch (const std::domain_error& e) {
    std::cerr << "render: " << e.what() << "\n";
    return kFail;
  }
  nm::write_file(a.out, nm::ppm_bytes(g));
  auto side = nm::sidecar_json(g, label);
  nm::write_file(a.out + ".json", side.dump(2) + "\n");
  std::cout << side.dump(2) << "\n";
  return kOk;
}

nm::cplx parse_lambda(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--lambda expects re,im");
  }
}

json mcmullen_info(const nm::McMullenParams& p, bool raw) {
  const auto nn = nm::mcmullen_newton(p, raw);
  json out{{"schema", nm::io::kSchema},
           {"m", p.m},
           {"n", p.n},
           {"lambda", nm::io::to_json(p.lambda)},
           {"raw", raw},
           {"rho", nm::io::to_json(nn.rho)},
           {"f", nm::io::to_json(nm::mcmullen_map(p))},
           {"newton", nm::io::to_json(nn.newton)},
           {"degree", nn.newton.degree()}};
  json fps = json::array();
  for (const auto& fp : nm::fixed_points(nn.newton)) fps.push_back(nm::io::to_json(fp));
  out["fixed_points"] = fps;
  if (p.m >= 2) {
    out["case"] = nm::to_string(nm::case_of(p.m, p.n));
    const auto fc = nm::free_critical(p.m, p.n);
    json roots = json::array();
    for (const auto& z : fc.all_roots) roots.push_back(nm::io::to_json(z));
    out["free_critical"] = {{"c", fc.c ? json(*fc.c) : json(nullptr)}, {"all", roots}};
    if (fc.c) out["nf_at_c"] = nm::io::to_json(nm::nf_at_free_critical(p.m, p.n));
  }
  if (p.m + p.n > 2)
    out["symmetry_order"] = nm::symmetry_group_order(p.m, p.n);
  else
    out["symmetry_order"] = "line case: Julia set is the imaginary axis";
  const auto ev = nm::basin_evidence_mcmullen(p.m, p.n);
  json orbits = json::array();
  for (const auto& [z, o] : ev.free_orbits) orbits.push_back({{"start", nm::io::to_json(z)}, {"orbit", nm::io::to_json(o)}});
  out["evidence"] = {{"complete", ev.complete},
                     {"free_orbits", orbits},
                     {"axis_samples", ev.axis_samples},
                     {"axis_in_basin_of_one", ev.axis_in_basin_of_one}};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton maps of rational functions"};
  app.require_subcommand(1);

  std::string spec, json_path;
  bool already_newton = false;
  double tol = 1e-6;
  auto* analyze = app.add_subcommand("analyze", "fixed points, multipliers, residues and characterization");
  analyze->add_option("spec", spec, "map: expression in z, coefficient list, or a named map")->required();
  analyze->add_flag("--already-newton", already_newton, "treat the input as a Newton map");
  analyze->add_option("--tol", tol, "numeric GCD tolerance used to reduce the input")->check(CLI::PositiveNumber);
  analyze->add_option("--json", json_path, "also write the report here");

  int d = 0;
  auto* classify = app.add_subcommand("classify", "Newton maps with an exceptional attracting fixed point");
  classify->add_option("d", d, "degree of p, 3..5")->required();
  classify->add_option("--json", json_path, "also write the report here");

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "basin image (PPM) plus JSON sidecar");
  render->add_option("spec", spec, "map specification")->required();
  render->add_flag("--already-newton", already_newton, "treat the input as a Newton map");
  add_render_options(render, render_args);

  std::string suite;
  std::uint64_t seed = 20240501;
  auto* verify = app.add_subcommand("verify", "built-in verification suites");
  verify->add_option("suite", suite, "tables | properties | mcmullen | disconnection | all")
      ->required()
      ->check(CLI::IsMember(nm::verify::suite_names()));
  verify->add_option("--seed", seed, "seed for randomized suites");
  verify->add_option("--json", json_path, "also write the summary here");

  int mm = 0, mn = 0;
  std::string lambda = "1,0";
  bool raw = false;
  RenderArgs mc_render_args;
  auto* mcm = app.add_subcommand("mcmullen", "Newton maps of z^m - lambda/z^n");
  mcm->add_option("m", mm)->required();
  mcm->add_option("n", mn)->required();
  mcm->add_option("--lambda", lambda, "re,im");
  mcm->add_flag("--raw", raw, "keep lambda instead of normalizing it to 1");
  mcm->require_subcommand(1);
  auto* mc_info = mcm->add_subcommand("info", "case analysis, free critical points, symmetry, evidence");
  mc_info->add_option("--json", json_path, "also write the report here");
  auto* mc_render = mcm->add_subcommand("render", "basin image");
  add_render_options(mc_render, mc_render_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) {
      emit(analyze_report(spec, already_newton, tol), json_path);
      return kOk;
    }
    if (*classify) {
      const auto rep = classify_report(d);
      emit(rep, json_path);
      return rep["all_matched"].get<bool>() ? kOk : kFail;
    }
    if (*render) {
      const auto parsed = nm::parse_map(spec);
      const bool is_newton = already_newton || parsed.is_newton;
      if (!is_newton && parsed.map.is_constant()) throw UsageError("constant map has no Newton map");
      return do_render(is_newton ? parsed.map : nm::newton_map(parsed.map), render_args, spec);
    }
    if (*verify) {
      const auto rep = nm::verify::run_suite(suite, seed);
      emit(rep, json_path);
      return rep["passed"].get<bool>() ? kOk : kFail;
    }
    if (*mcm) {
      nm::McMullenParams p;
      try {
        p = nm::McMullenParams(mm, mn, parse_lambda(lambda));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (*mc_info) {
        emit(mcmullen_info(p, raw), json_path);
        return kOk;
      }
      const auto nn = nm::mcmullen_newton(p, raw);
      std::ostringstream label;
      label << "mcmullen(" << p.m << "," << p.n << ")";
      return do_render(nn.newton, mc_render_args, label.str());
    }
  } catch (const nm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
