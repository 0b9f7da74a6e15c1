// kugacert: command-line front end for the certificate pipeline.
//
// Subcommands expose every library operation: Kodaira verdict tables,
// stabilizer-scan certificates, lifted-fan construction and condition
// checks, the floating-point lemma verifiers, and divisor-class slopes.
// Runs are deterministic given --seed; JSON output is byte-stable
// (sorted keys, rationals rendered "p/q").  Exit codes: 0 pass, 1
// mathematical failure (a witness is printed), 2 usage, 3 requested
// range not supported.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kuga/json_io.hpp"
#include "kuga/perfect_cone.hpp"
#include "kuga/reid_tai.hpp"
#include "kuga/slope.hpp"
#include "kuga/symplectic.hpp"
#include "kuga/toric.hpp"
#include "kuga/version.hpp"

using namespace kuga;

namespace {

struct GlobalOpts {
  bool json = false;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

std::string dtos(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string vec_txt(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += int_str(v[i]);
  }
  return s + ")";
}

std::string profile_txt(const StabilizerProfile& p) {
  std::string s = "g_prime=" + std::to_string(p.g_prime) +
                  " g_dd=" + std::to_string(p.g_dd) +
                  " n=" + std::to_string(p.n) + " gamma=" + to_string(p.gamma_kind);
  if (p.gamma_kind == GammaKind::Elliptic) {
    s += " [";
    for (std::size_t i = 0; i < p.gamma_profile.size(); ++i) {
      if (i) s += ", ";
      s += rat_str(p.gamma_profile[i]);
    }
    s += "]";
  }
  s += " u=" + to_string(p.u_kind);
  return s;
}

// Header: tool version plus the full resolved parameter set, echoed in
// sorted key order.  In JSON mode the same data rides inside the object.
void emit_header(const GlobalOpts& go, const Json& params) {
  if (go.json) return;
  std::cout << "# kugacert " << kToolVersion << "\n# params:";
  for (auto it = params.begin(); it != params.end(); ++it) {
    std::cout << ' ' << it.key() << '=';
    if (it->is_string()) std::cout << it->get<std::string>();
    else std::cout << it->dump();
  }
  std::cout << "\n";
}

Json base_params(const GlobalOpts& go, const std::string& command) {
  Json p;
  p["command"] = command;
  p["seed"] = go.seed;
  p["tol"] = dtos(go.tol);
  return p;
}

void emit_json(const Json& j) { std::cout << j.dump() << "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed " + what + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// kodaira
// ---------------------------------------------------------------------------

std::string kappa_text(const KodairaVerdict& v) {
  switch (v.kind) {
    case KodairaKind::GeneralType:
      return "kappa = " + std::to_string(v.dimension) + " (general type)";
    case KodairaKind::Zero:
      return "kappa = 0";
    case KodairaKind::MinusInfinity:
      return v.g == 1 ? "kappa = -infinity (fibres rational)"
                      : "kappa = -infinity";
  }
  return "";
}

std::string kappa_cell(const KodairaVerdict& v) {
  switch (v.kind) {
    case KodairaKind::GeneralType:
      return "GT(" + std::to_string(v.dimension) + ")";
    case KodairaKind::Zero:
      return "0";
    case KodairaKind::MinusInfinity:
      return "-inf";
  }
  return "";
}

int run_kodaira(const GlobalOpts& go, int g, int n,
                const std::vector<int>& table) {
  if (!table.empty()) {
    Json params = base_params(go, "kodaira");
    params["table_g_max"] = table[0];
    params["table_n_max"] = table[1];
    KdimTable t = kdim_table(table[0], table[1]);
    if (go.json) {
      Json out;
      out["params"] = params;
      out["table"] = table_to_json(t);
      out["version"] = kToolVersion;
      emit_json(out);
      return 0;
    }
    emit_header(go, params);
    std::cout << "g\\n";
    for (int c = 1; c <= t.n_max; ++c) std::cout << std::setw(8) << c;
    std::cout << "\n";
    for (int gg = 1; gg <= t.g_max; ++gg) {
      std::cout << gg << "  ";
      for (int c = 1; c <= t.n_max; ++c)
        std::cout << std::setw(8) << kappa_cell(t.verdicts[gg - 1][c - 1]);
      std::cout << "\n";
    }
    return 0;
  }
  if (g < 0 || n < 0)
    throw std::invalid_argument("kodaira: need --g and --n, or --table");
  Json params = base_params(go, "kodaira");
  params["g"] = g;
  params["n"] = n;
  KodairaVerdict v = kodaira_dimension(g, n);
  if (go.json) {
    Json out;
    out["params"] = params;
    out["verdict"] = verdict_to_json(v);
    out["version"] = kToolVersion;
    emit_json(out);
    return 0;
  }
  emit_header(go, params);
  std::cout << kappa_text(v) << "\n";
  for (const auto& line : v.justification) std::cout << "  " << line << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

int run_certify(const GlobalOpts& go, int g, int n, int fan_window,
                const std::string& out_path) {
  Json params = base_params(go, "certify");
  params["g"] = g;
  params["n"] = n;
  params["fan_window"] = fan_window;
  params["d_max"] = 12;
  Certificate cert = certify(g, n, fan_window);
  Json cj = certificate_to_json(cert, params);
  if (!out_path.empty()) write_file(out_path, cj.dump(2) + "\n");
  if (go.json) {
    emit_json(cj);
  } else {
    emit_header(go, params);
    std::cout << "certify g=" << g << " n=" << n << ": "
              << (cert.pass ? "PASS" : "FAIL") << "\n";
    std::cout << "interior: "
              << (cert.interior == InteriorVerdict::CanonicalNoQuasireflections
                      ? "canonical_no_quasireflections"
                      : "exception")
              << "\n";
    std::cout << "scan: " << cert.scan.rows.size() << " profiles, "
              << cert.scan.age_violation_idx.size() << " age violations, "
              << cert.scan.quasireflection_idx.size() << " quasireflections, "
              << cert.scan.bound_witnesses.size() << " bound witnesses\n";
    for (std::size_t idx : cert.scan.age_violation_idx) {
      const ScanRow& r = cert.scan.rows[idx];
      std::cout << "age violation: " << profile_txt(r.profile)
                << " min age " << rat_str(r.min_age) << "\n";
    }
    for (const auto& w : cert.scan.bound_witnesses)
      std::cout << "bound witness: " << profile_txt(w.profile) << " order "
                << int_str(w.d) << " bound " << rat_str(w.bound) << "\n";
    for (const auto& u : cert.scan.u_checks)
      std::cout << "u check g_dd=" << u.g_dd << ": "
                << (u.pass ? "pass" : "FAIL") << "\n";
    for (const auto& f : cert.fan_checks)
      std::cout << f.name << ": " << (f.ok ? "ok" : "VIOLATION") << "\n";
    if (!out_path.empty())
      std::cout << "certificate written to " << out_path << "\n";
  }
  return cert.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fan build | check | refine
// ---------------------------------------------------------------------------

Fan load_or_build_fan(const std::string& in_path, int gdd, int n, int window) {
  if (in_path.empty()) return lifted_fan(gdd, n, window);
  Json j = parse_json(read_file(in_path), "fan file");
  if (j.is_object() && j.contains("fan")) j = j["fan"];
  Fan f = fan_from_json(j);
  if (f.ambient_rank != lifted_flat_dim(gdd, n))
    throw std::invalid_argument(
        "fan file: ambient_rank does not match --gdd/--n");
  if (!f.base_projection) f.base_projection = lifted_projection_matrix(gdd, n);
  return f;
}

struct CheckResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> detail;
};

std::vector<CheckResult> run_fan_checks(const Fan& f, int gdd, int n,
                                        int window) {
  std::vector<CheckResult> out;

  CheckResult support{"support_membership", true, {}};
  for (const auto& r : f.rays())
    if (!in_cone_C_tilde(unflatten(r, gdd, n))) {
      support.ok = false;
      support.detail.push_back("in_cone violation: ray " + vec_txt(r));
    }
  out.push_back(std::move(support));

  CheckResult valid{"fan_valid", true, {}};
  for (const auto& [i, j] : fan_validity_offenders(f)) {
    valid.ok = false;
    valid.detail.push_back("cones " + std::to_string(i) + " and " +
                           std::to_string(j) + " do not meet in a face");
  }
  out.push_back(std::move(valid));

  Fan base = perfect_cone_fan(gdd, window);
  CheckResult equi{"equidim_codim1", true, {}};
  RayCheckReport er = is_equidim_codim1(f, base);
  equi.ok = er.ok;
  for (const auto& r : er.offending)
    equi.detail.push_back("ray " + vec_txt(r) +
                          " does not project onto a base ray");
  out.push_back(std::move(equi));

  CheckResult noint{"no_interior_rays", true, {}};
  RayCheckReport nr = no_interior_rays(f, gdd, n);
  noint.ok = nr.ok;
  for (const auto& r : nr.offending)
    noint.detail.push_back("ray " + vec_txt(r) +
                           " sits over the interior of the base cone");
  out.push_back(std::move(noint));

  CheckResult basec{"base_cones", true, {}};
  BaseConeReport br = base_cone_inclusion(f, base, gdd, n);
  basec.ok = br.ok;
  for (const auto& c : br.missing) {
    std::string gens;
    for (const auto& gv : c.gens()) gens += " " + vec_txt(gv);
    basec.detail.push_back("base cone not present in the lifted fan:" + gens);
  }
  out.push_back(std::move(basec));

  CheckResult toric{"toric_canonical", true, {}};
  int idx = 0;
  for (const auto& c : f.cones) {
    ToricReport tr = toric_is_canonical(c);
    if (tr.verdict == ToricVerdict::NotCanonical ||
        tr.verdict == ToricVerdict::NotQGorenstein) {
      toric.ok = false;
      std::string line = "cone " + std::to_string(idx) + ": " +
                         std::string(to_string(tr.verdict));
      if (tr.violating_point) line += ", witness " + vec_txt(*tr.violating_point);
      toric.detail.push_back(std::move(line));
    }
    ++idx;
  }
  out.push_back(std::move(toric));
  return out;
}

Json checks_to_json(const std::vector<CheckResult>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json cj;
    cj["name"] = c.name;
    cj["ok"] = c.ok;
    cj["detail"] = c.detail;
    arr.push_back(std::move(cj));
  }
  return arr;
}

int run_fan(const GlobalOpts& go, const std::string& mode, int gdd, int n,
            int window, const std::string& in_path,
            const std::string& out_path) {
  if (window == 0) window = (gdd == 1) ? 3 : 2;
  Json params = base_params(go, "fan " + mode);
  params["gdd"] = gdd;
  params["n"] = n;
  params["window"] = window;
  if (!in_path.empty()) params["in"] = in_path;
  if (!out_path.empty()) params["out"] = out_path;

  Fan f = load_or_build_fan(in_path, gdd, n, window);

  if (mode == "build") {
    Json fj = fan_to_json(f);
    if (!out_path.empty()) write_file(out_path, fj.dump(2) + "\n");
    if (go.json) {
      Json out;
      out["fan"] = fj;
      out["params"] = params;
      out["version"] = kToolVersion;
      emit_json(out);
    } else {
      emit_header(go, params);
      std::cout << "fan: " << f.cones.size() << " cones, " << f.rays().size()
                << " rays, ambient rank " << f.ambient_rank << "\n";
      if (!out_path.empty())
        std::cout << "fan written to " << out_path << "\n";
      else
        std::cout << fj.dump() << "\n";
    }
    return 0;
  }

  if (mode == "check") {
    auto checks = run_fan_checks(f, gdd, n, window);
    bool all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c.ok;
    if (go.json) {
      Json out;
      out["checks"] = checks_to_json(checks);
      out["params"] = params;
      out["pass"] = all_ok;
      out["version"] = kToolVersion;
      emit_json(out);
    } else {
      emit_header(go, params);
      for (const auto& c : checks) {
        std::cout << c.name << ": " << (c.ok ? "ok" : "VIOLATION") << "\n";
        for (const auto& d : c.detail) std::cout << "  " << d << "\n";
      }
      std::cout << (all_ok ? "all conditions pass" : "conditions violated")
                << "\n";
    }
    return all_ok ? 0 : 1;
  }

  // refine: make every cone smooth, then re-test equidimensionality; the
  // subdivision may introduce rays over the interior of the base cone, and
  // the report says so rather than hiding it.
  Fan refined = refine_to_smooth(f);
  refined.base_projection = f.base_projection;
  Json fj = fan_to_json(refined);
  if (!out_path.empty()) write_file(out_path, fj.dump(2) + "\n");
  Fan base = perfect_cone_fan(gdd, window);
  RayCheckReport er = is_equidim_codim1(refined, base);
  RayCheckReport nr = no_interior_rays(refined, gdd, n);
  bool ok = er.ok && nr.ok;
  if (go.json) {
    Json out;
    out["equidim_codim1_after_refinement"] = er.ok;
    out["no_interior_rays_after_refinement"] = nr.ok;
    out["cones"] = refined.cones.size();
    if (out_path.empty()) out["fan"] = fj;
    out["params"] = params;
    out["pass"] = ok;
    out["version"] = kToolVersion;
    emit_json(out);
  } else {
    emit_header(go, params);
    std::cout << "refined: " << f.cones.size() << " -> " << refined.cones.size()
              << " cones, all smooth\n";
    std::cout << "equidim_codim1 after refinement: "
              << (er.ok ? "ok" : "VIOLATION") << "\n";
    for (const auto& r : er.offending)
      std::cout << "  ray " << vec_txt(r) << " does not project onto a base ray\n";
    std::cout << "no_interior_rays after refinement: "
              << (nr.ok ? "ok" : "VIOLATION") << "\n";
    for (const auto& r : nr.offending)
      std::cout << "  ray " << vec_txt(r) << " sits over the interior\n";
    if (!out_path.empty()) std::cout << "fan written to " << out_path << "\n";
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify cocycle | fixed-point
// ---------------------------------------------------------------------------

int run_verify_cocycle(const GlobalOpts& go, int g, int trials) {
  if (g < 1 || g > 3)
    throw std::invalid_argument("verify cocycle: g must be in [1, 3]");
  if (trials < 1) throw std::invalid_argument("verify cocycle: trials must be >= 1");
  Json params = base_params(go, "verify cocycle");
  params["g"] = g;
  params["trials"] = trials;
  std::mt19937_64 rng(go.seed);
  double max_res = 0.0;
  bool pass = true;
  for (int t = 0; t < trials; ++t) {
    IMat b1 = random_symplectic(g, rng);
    IMat b2 = random_symplectic(g, rng);
    CMat tau = random_tau(g, rng);
    CocycleReport rep = cocycle_check(b1, b2, tau, go.tol);
    if (rep.residual > max_res) max_res = rep.residual;
    pass = pass && rep.pass;
  }
  if (go.json) {
    Json out;
    out["max_residual"] = max_res;
    out["params"] = params;
    out["pass"] = pass;
    out["version"] = kToolVersion;
    emit_json(out);
  } else {
    emit_header(go, params);
    std::cout << "cocycle: g=" << g << " trials=" << trials
              << " max residual = " << max_res << " (tol " << go.tol
              << "): " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

int run_verify_fixed_point(const GlobalOpts& go, int g) {
  if (g < 1) throw std::invalid_argument("verify fixed-point: g must be >= 1");
  Json params = base_params(go, "verify fixed-point");
  params["g"] = g;
  struct Row {
    int order;
    bool matched;
    bool has_nontrivial;
    double residual;
  };
  std::vector<Row> rows;
  {
    // identity: trivially consistent, every eigenvalue 1
    IMat id = IMat::identity(2 * g);
    FixedPointReport rep =
        fixed_point_eigen_check(id, scalar_tau({0.0, 1.0}, g), go.tol);
    rows.push_back({1, rep.matched, rep.has_nontrivial, rep.fixed_residual});
  }
  for (const auto& e : sl2_torsion_catalog()) {
    IMat gamma = embed_sl2_diag(e.a, e.b, e.c, e.d, g);
    FixedPointReport rep =
        fixed_point_eigen_check(gamma, scalar_tau(e.tau0, g), go.tol);
    rows.push_back({e.order, rep.matched, rep.has_nontrivial, rep.fixed_residual});
  }
  bool pass = true;
  for (const auto& r : rows) {
    bool ok = r.matched && (r.order == 1 ? !r.has_nontrivial : r.has_nontrivial);
    pass = pass && ok;
  }
  if (go.json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json rj;
      rj["order"] = r.order;
      rj["matched"] = r.matched;
      rj["has_nontrivial_eigenvalue"] = r.has_nontrivial;
      rj["fixed_residual"] = r.residual;
      arr.push_back(std::move(rj));
    }
    Json out;
    out["catalog"] = std::move(arr);
    out["params"] = params;
    out["pass"] = pass;
    out["version"] = kToolVersion;
    emit_json(out);
  } else {
    emit_header(go, params);
    for (const auto& r : rows) {
      std::cout << "order " << r.order << (r.order == 1 ? " (identity)" : "")
                << ": " << (r.matched ? "eigenvalues match" : "MISMATCH");
      if (r.order > 1)
        std::cout << (r.has_nontrivial ? ", nontrivial eigenvalue present"
                                       : ", NO nontrivial eigenvalue");
      else
        std::cout << ", all eigenvalues 1";
      std::cout << "\n";
    }
    std::cout << (pass ? "fixed-point catalog consistent"
                       : "fixed-point catalog FAILED")
              << "\n";
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// slope class | form | table
// ---------------------------------------------------------------------------

std::string class_txt(const DivisorClass& d, const Rat& s) {
  return rat_str(d.lambda_coeff) + "*lambda - " + rat_str(d.delta_coeff) +
         "*delta, slope " + rat_str(s);
}

int run_slope_class(const GlobalOpts& go, std::string which, int g) {
  for (auto& c : which) c = static_cast<char>(std::tolower(c));
  DivisorClass d;
  std::string canonical;
  if (which == "theta" || which == "theta_null" || which == "thetanull") {
    d = theta_null_class(g);
    canonical = "theta_null";
  } else if (which == "n0prime" || which == "n0_prime") {
    d = n0_prime_class(g);
    canonical = "n0_prime";
  } else {
    throw std::invalid_argument(
        "slope class: --which must be theta or N0prime");
  }
  Rat s = slope(d);
  Json params = base_params(go, "slope class");
  params["g"] = g;
  params["which"] = canonical;
  if (go.json) {
    Json out;
    out["class"] = class_to_json(d);
    out["params"] = params;
    out["slope"] = rat_str(s);
    out["version"] = kToolVersion;
    emit_json(out);
  } else {
    emit_header(go, params);
    std::cout << class_txt(d, s) << "\n";
  }
  return 0;
}

int run_slope_form(const GlobalOpts& go, int weight,
                   const std::string& support_path) {
  if (support_path.empty())
    throw std::invalid_argument("slope form: need --support FILE");
  FourierSupport s =
      support_from_json(parse_json(read_file(support_path), "support file"));
  Json params = base_params(go, "slope form");
  params["support"] = support_path;
  params["weight"] = weight;
  Rat order = vanishing_order(s);
  Rat sl = cusp_form_slope(weight, s);  // rejects vanishing order 0
  if (go.json) {
    Json out;
    out["params"] = params;
    out["slope"] = rat_str(sl);
    out["vanishing_order"] = rat_str(order);
    out["version"] = kToolVersion;
    emit_json(out);
  } else {
    emit_header(go, params);
    std::cout << rat_str(sl) << "\n";
  }
  return 0;
}

int run_slope_table(const GlobalOpts& go) {
  Json params = base_params(go, "slope table");
  if (go.json) {
    Json arr = Json::array();
    for (int g = 1; g <= 6; ++g) arr.push_back(slope_record_to_json(s_min_record(g)));
    Json out;
    out["params"] = params;
    out["records"] = std::move(arr);
    out["version"] = kToolVersion;
    emit_json(out);
    return 0;
  }
  emit_header(go, params);
  std::cout << "g  s_min   achieved_by  rigid  notes\n";
  for (int g = 1; g <= 6; ++g) {
    SlopeRecord r = s_min_record(g);
    std::ostringstream line;
    line << g << "  " << (r.is_upper_bound_only ? "<= " : "")
         << rat_str(r.value);
    std::string v = line.str();
    v.resize(std::max<std::size_t>(v.size(), 10), ' ');
    std::cout << v << " " << to_string(r.achieved_by)
              << (r.achieved_by == SlopeAchiever::ThetaNull ? "   " : "     ")
              << (r.minimizer_rigid ? "yes" : "no ");
    if (r.is_upper_bound_only) std::cout << "   upper bound only";
    if (r.n0_prime_slope)
      std::cout << "; divisorial bound " << rat_str(*r.n0_prime_slope);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificate pipeline for compactified universal families"};
  app.set_version_flag("--version", std::string("kugacert ") + kToolVersion);
  GlobalOpts go;
  app.add_flag("--json", go.json, "emit machine-readable JSON");
  app.add_option("--seed", go.seed, "seed for randomized verifiers");
  app.add_option("--tol", go.tol, "numeric tolerance")->default_val(1e-9);
  app.require_subcommand(1);

  // kodaira
  int ko_g = -1, ko_n = -1;
  std::vector<int> ko_table;
  CLI::App* ko = app.add_subcommand("kodaira", "Kodaira dimension verdicts");
  ko->add_option("--g", ko_g, "fibre dimension g");
  ko->add_option("--n", ko_n, "number of factors n");
  ko->add_option("--table", ko_table, "g_max n_max: full verdict table")
      ->expected(2);

  // certify
  int ce_g = 0, ce_n = 0, ce_window = 0;
  std::string ce_out;
  CLI::App* ce = app.add_subcommand(
      "certify", "stabilizer scan plus fan checks, JSON certificate");
  ce->add_option("--g", ce_g, "fibre dimension g")->required();
  ce->add_option("--n", ce_n, "number of factors n")->required();
  ce->add_option("--fan-window", ce_window,
                 "entry bound for fan slices (0 = per-slice default)");
  ce->add_option("--out", ce_out, "certificate output file");

  // fan
  int fa_gdd = 1, fa_n = 1, fa_window = 0;
  std::string fa_in, fa_out;
  CLI::App* fa = app.add_subcommand("fan", "lifted fans over the rank-g'' base");
  CLI::App* fa_build = fa->add_subcommand("build", "construct a lifted fan");
  CLI::App* fa_check = fa->add_subcommand("check", "run the fan condition checkers");
  CLI::App* fa_refine =
      fa->add_subcommand("refine", "subdivide to smooth cones, re-check");
  fa->require_subcommand(1);
  for (CLI::App* sub : {fa_build, fa_check, fa_refine}) {
    sub->add_option("--gdd", fa_gdd, "base rank g'' (1 or 2)");
    sub->add_option("--n", fa_n, "number of covector slots");
    sub->add_option("--window", fa_window, "entry bound (0 = default)");
    sub->add_option("--in", fa_in, "fan JSON file to load instead of building");
    sub->add_option("--out", fa_out, "write the fan JSON here");
  }

  // verify
  int ve_g = 2, ve_trials = 1000;
  CLI::App* ve = app.add_subcommand("verify", "floating-point lemma verifiers");
  CLI::App* ve_co = ve->add_subcommand("cocycle", "automorphy cocycle residual");
  CLI::App* ve_fp =
      ve->add_subcommand("fixed-point", "finite-order fixed-point eigenvalues");
  ve->require_subcommand(1);
  for (CLI::App* sub : {ve_co, ve_fp}) {
    sub->add_option("--g", ve_g, "genus of the symplectic group");
    sub->add_option("--trials", ve_trials, "number of random trials");
  }

  // slope
  std::string sl_which = "theta", sl_support;
  int sl_g = 1, sl_weight = 0;
  CLI::App* sl = app.add_subcommand("slope", "divisor classes and slopes");
  CLI::App* sl_class = sl->add_subcommand("class", "named divisor class and slope");
  CLI::App* sl_form = sl->add_subcommand("form", "slope of a cusp form from its support");
  CLI::App* sl_table = sl->add_subcommand("table", "s_min table for g = 1..6");
  sl->require_subcommand(1);
  sl_class->add_option("--which", sl_which, "theta | N0prime");
  sl_class->add_option("--g", sl_g, "genus")->required();
  sl_form->add_option("--weight", sl_weight, "weight of the form")->required();
  sl_form->add_option("--support", sl_support, "Fourier support JSON file");
  (void)sl_table;

  // global --json/--seed/--tol may appear after the subcommand
  for (CLI::App* sub : {ko, ce, fa, fa_build, fa_check, fa_refine, ve, ve_co,
                        ve_fp, sl, sl_class, sl_form, sl_table})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ko->parsed()) return run_kodaira(go, ko_g, ko_n, ko_table);
    if (ce->parsed()) return run_certify(go, ce_g, ce_n, ce_window, ce_out);
    if (fa->parsed()) {
      std::string mode = fa_build->parsed() ? "build"
                         : fa_check->parsed() ? "check"
                                              : "refine";
      return run_fan(go, mode, fa_gdd, fa_n, fa_window, fa_in, fa_out);
    }
    if (ve->parsed()) {
      if (ve_co->parsed()) return run_verify_cocycle(go, ve_g, ve_trials);
      return run_verify_fixed_point(go, ve_g);
    }
    if (sl->parsed()) {
      if (sl_class->parsed()) return run_slope_class(go, sl_which, sl_g);
      if (sl_form->parsed()) return run_slope_form(go, sl_weight, sl_support);
      return run_slope_table(go);
    }
    throw std::invalid_argument("no subcommand");
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "fail: " << e.what() << "\n";
    return 1;
  }
}
