#pragma once

// JSON wire formats.  One convention throughout: rationals are "p/q"
// strings (plain "p" for integers), integer matrices are arrays of rows
// of decimal integer strings, and emitted objects rely on the JSON
// library's key sorting so output bytes are stable across runs.  The
// one schema exception is Fourier supports, whose matrices carry plain
// integer entries (accepted as numbers or strings on input).

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "cones.hpp"
#include "matrix.hpp"
#include "rational.hpp"
#include "reid_tai.hpp"
#include "slope.hpp"
#include "version.hpp"

namespace kuga {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices
// ---------------------------------------------------------------------------

inline Json ivec_to_json(const IVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_str(x));
  return a;
}

inline Json imat_to_json(const IMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(int_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json profile_to_json(const EigenProfile& p) {
  Json a = Json::array();
  for (const auto& e : p) a.push_back(rat_str(e));
  return a;
}

namespace detail {

inline Int json_to_int(const Json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad integer literal");
    }
  }
  throw std::invalid_argument(std::string(what) + ": expected integer");
}

inline IVec json_to_ivec(const Json& j, const char* what) {
  if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected array");
  IVec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(json_to_int(e, what));
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fans: { "ambient_rank": N, "cones": [[ [v...], ... ]], "projection": rows? }
// ---------------------------------------------------------------------------

inline Json fan_to_json(const Fan& f) {
  Json j;
  j["ambient_rank"] = f.ambient_rank;
  Json cones = Json::array();
  for (const auto& c : f.cones) {
    Json gens = Json::array();
    for (const auto& g : c.gens()) gens.push_back(ivec_to_json(g));
    cones.push_back(std::move(gens));
  }
  j["cones"] = std::move(cones);
  if (f.base_projection) j["projection"] = imat_to_json(*f.base_projection);
  return j;
}

inline Fan fan_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_rank") || !j.contains("cones"))
    throw std::invalid_argument("fan json: need ambient_rank and cones");
  if (!j["ambient_rank"].is_number_integer())
    throw std::invalid_argument("fan json: ambient_rank must be an integer");
  int rank = j["ambient_rank"].get<int>();
  if (rank < 1) throw std::invalid_argument("fan json: ambient_rank must be >= 1");
  if (!j["cones"].is_array())
    throw std::invalid_argument("fan json: cones must be an array");
  Fan f;
  f.ambient_rank = rank;
  for (const auto& cj : j["cones"]) {
    if (!cj.is_array() || cj.empty())
      throw std::invalid_argument("fan json: each cone is a nonempty array of generators");
    std::vector<IVec> gens;
    for (const auto& gj : cj) {
      IVec v = detail::json_to_ivec(gj, "fan json generator");
      if (static_cast<int>(v.size()) != rank)
        throw std::invalid_argument("fan json: generator length != ambient_rank");
      gens.push_back(std::move(v));
    }
    f.cones.push_back(Cone(rank, gens));
  }
  if (j.contains("projection")) {
    const Json& pj = j["projection"];
    if (!pj.is_array() || pj.empty())
      throw std::invalid_argument("fan json: projection must be a matrix");
    std::vector<IVec> rows;
    for (const auto& rj : pj) rows.push_back(detail::json_to_ivec(rj, "fan json projection"));
    IMat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows; ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols)
        throw std::invalid_argument("fan json: ragged projection matrix");
      for (int jj = 0; jj < m.cols; ++jj) m.at(i, jj) = rows[i][jj];
    }
    f.base_projection = std::move(m);
  }
  f.canonicalize();
  return f;
}

// ---------------------------------------------------------------------------
// Fourier supports: { "g": N, "matrices": [[...]] } with integer entries
// ---------------------------------------------------------------------------

inline Json support_to_json(const FourierSupport& s) {
  Json j;
  j["g"] = s.g;
  Json mats = Json::array();
  for (const auto& q : s.matrices) {
    Json rows = Json::array();
    for (int i = 0; i < q.dim(); ++i) {
      Json row = Json::array();
      for (int c = 0; c < q.dim(); ++c) {
        // entries stay machine-size; the schema uses plain integers
        row.push_back(static_cast<long long>(q.m.at(i, c)));
      }
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  j["matrices"] = std::move(mats);
  return j;
}

inline FourierSupport support_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("matrices"))
    throw std::invalid_argument("support json: need g and matrices");
  if (!j["g"].is_number_integer())
    throw std::invalid_argument("support json: g must be an integer");
  FourierSupport s;
  s.g = j["g"].get<int>();
  if (!j["matrices"].is_array())
    throw std::invalid_argument("support json: matrices must be an array");
  for (const auto& mj : j["matrices"]) {
    if (!mj.is_array() || mj.empty())
      throw std::invalid_argument("support json: each matrix is a nonempty array of rows");
    IMat m(static_cast<int>(mj.size()), static_cast<int>(mj.front().size()));
    for (int i = 0; i < m.rows; ++i) {
      IVec row = detail::json_to_ivec(mj[i], "support json matrix row");
      if (static_cast<int>(row.size()) != m.cols)
        throw std::invalid_argument("support json: ragged matrix");
      for (int c = 0; c < m.cols; ++c) m.at(i, c) = row[c];
    }
    if (m.rows != m.cols)
      throw std::invalid_argument("support json: matrices must be square");
    s.matrices.emplace_back(m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Stabilizer profiles and scan reports
// ---------------------------------------------------------------------------

inline std::string to_string(GammaKind k) {
  switch (k) {
    case GammaKind::Identity: return "identity";
    case GammaKind::MinusIdentity: return "minus_identity";
    case GammaKind::Elliptic: return "elliptic";
  }
  throw std::logic_error("to_string: bad GammaKind");
}

inline std::string to_string(UKind k) {
  switch (k) {
    case UKind::EpsilonPlus: return "+1";
    case UKind::EpsilonMinus: return "-1";
    case UKind::General: return "general";
  }
  throw std::logic_error("to_string: bad UKind");
}

inline Json profile_record_to_json(const StabilizerProfile& p) {
  Json j;
  j["g_prime"] = p.g_prime;
  j["g_dd"] = p.g_dd;
  j["n"] = p.n;
  j["gamma"] = to_string(p.gamma_kind);
  if (p.gamma_kind == GammaKind::Elliptic)
    j["gamma_profile"] = profile_to_json(p.gamma_profile);
  j["u"] = to_string(p.u_kind);
  if (p.u_kind == UKind::General) j["u_profile"] = profile_to_json(p.u_profile);
  return j;
}

// Scan rows serialize as {profile, min_age "p/q", quasireflection, choice};
// proof-bound witnesses are appended as {profile, order, bound} objects.
// The emitted array is capped: the first rows in enumeration order plus
// every violation row, so a certificate never hides its witnesses.
inline Json scan_to_json(const ScanReport& r, std::size_t max_rows = 1000) {
  Json arr = Json::array();
  std::vector<char> keep(r.rows.size(), 0);
  std::size_t kept = 0;
  for (std::size_t idx : r.age_violation_idx)
    if (!keep[idx]) { keep[idx] = 1; ++kept; }
  for (std::size_t i = 0; i < r.rows.size() && kept < max_rows; ++i)
    if (!keep[i]) { keep[i] = 1; ++kept; }
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (!keep[i]) continue;
    const ScanRow& row = r.rows[i];
    Json rj;
    rj["index"] = static_cast<long long>(i);
    rj["profile"] = profile_record_to_json(row.profile);
    rj["min_age"] = rat_str(row.min_age);
    rj["quasireflection"] = row.quasireflection;
    Json choice = Json::array();
    for (int b : row.lambda_choice) choice.push_back(b);
    rj["choice"] = std::move(choice);
    rj["z_sign"] = row.z_sign;
    arr.push_back(std::move(rj));
  }
  for (const auto& w : r.bound_witnesses) {
    Json wj;
    wj["profile"] = profile_record_to_json(w.profile);
    wj["order"] = int_str(w.d);
    wj["bound"] = rat_str(w.bound);
    arr.push_back(std::move(wj));
  }
  return arr;
}

inline Json certificate_to_json(const Certificate& c, const Json& params) {
  Json j;
  j["g"] = c.g;
  j["n"] = c.n;
  j["pass"] = c.pass;
  j["interior"] = (c.interior == InteriorVerdict::CanonicalNoQuasireflections)
                      ? "canonical_no_quasireflections"
                      : "exception";
  j["scan"] = scan_to_json(c.scan);
  Json fc = Json::array();
  for (const auto& f : c.fan_checks) {
    Json fj;
    fj["name"] = f.name;
    fj["ok"] = f.ok;
    fc.push_back(std::move(fj));
  }
  j["fan_checks"] = std::move(fc);
  j["version"] = kToolVersion;
  j["params"] = params;
  return j;
}

// ---------------------------------------------------------------------------
// Divisor classes, slope records, Kodaira verdicts
// ---------------------------------------------------------------------------

inline Json class_to_json(const DivisorClass& d) {
  Json j;
  j["lambda"] = rat_str(d.lambda_coeff);
  j["delta"] = rat_str(d.delta_coeff);
  return j;
}

inline Json slope_record_to_json(const SlopeRecord& r) {
  Json j;
  j["g"] = r.g;
  j["value"] = rat_str(r.value);
  j["is_upper_bound_only"] = r.is_upper_bound_only;
  j["achieved_by"] = to_string(r.achieved_by);
  j["minimizer_rigid"] = r.minimizer_rigid;
  if (r.n0_prime_slope) j["n0_prime_slope"] = rat_str(*r.n0_prime_slope);
  return j;
}

inline Json verdict_to_json(const KodairaVerdict& v) {
  Json j;
  j["g"] = v.g;
  j["n"] = v.n;
  j["kind"] = to_string(v.kind);
  if (v.kind == KodairaKind::GeneralType) j["dimension"] = v.dimension;
  if (v.informational) j["informational"] = true;
  j["justification"] = v.justification;
  return j;
}

inline Json table_to_json(const KdimTable& t) {
  Json j;
  j["g_max"] = t.g_max;
  j["n_max"] = t.n_max;
  Json rows = Json::array();
  for (const auto& row : t.verdicts) {
    Json rj = Json::array();
    for (const auto& v : row) rj.push_back(verdict_to_json(v));
    rows.push_back(std::move(rj));
  }
  j["verdicts"] = std::move(rows);
  return j;
}

}  // namespace kuga
