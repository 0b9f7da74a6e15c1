#pragma once
// Tangent-space eigenvalue spectra of boundary stabilizer elements, Reid-Tai
// ages, quasireflection detection, and the profile-space scans certifying
// canonical singularities.  Profiles over-approximate realizable conjugacy
// classes: a pass on the larger set implies a pass on realizable elements.

#include "kuga/eigen_profile.hpp"
#include "kuga/perfect_cone.hpp"
#include "kuga/toric.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuga {

enum class GammaKind { Identity, MinusIdentity, Elliptic };
enum class UKind { EpsilonPlus, EpsilonMinus, General };

// Eigenvalue data of a stabilizer element: gamma' acts on the g'-dim abelian
// part, u (or the scalar epsilon) on the g''-dim torus-rank part, n counts
// the covector slots.
struct StabilizerProfile {
  int g_prime = 0;
  int g_dd = 1;
  int n = 0;
  GammaKind gamma_kind = GammaKind::Identity;
  EigenProfile gamma_profile;  // Elliptic only: 2 g' entries, conjugation-closed
  UKind u_kind = UKind::EpsilonPlus;
  EigenProfile u_profile;      // General only: g'' entries, conjugation-closed
};

struct TangentSpectrum {
  EigenProfile h_factor;      // symmetric square of the abelian part
  EigenProfile omega_factor;  // abelian x torus block
  EigenProfile z_factor;      // abelian x covector block
  EigenProfile toric_factor;  // Sym^2 of the torus part plus n copies of it,
                              // eigenvalue-1 entries dropped
};

struct AgeReport {
  Rat age;
  bool is_quasireflection = false;
  std::array<Rat, 4> per_factor_ages{};  // h, omega, z, toric
  std::vector<int> lambda_choice;        // one bit per conjugate pair
  int z_sign = 1;
};

namespace detail {

// Decomposition of a conjugation-closed 2g'-profile into g' conjugate pairs
// {e, -e mod 1}; the representative is the entry in [0, 1/2].
struct PairDecomp {
  std::vector<Rat> reps;
  std::vector<bool> self_conjugate;  // reps 0 and 1/2 pair with themselves
};

inline PairDecomp conjugate_pairs(const EigenProfile& p) {
  EigenProfile s = normalize_profile(p);
  PairDecomp d;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    size_t mult = j - i;
    if (s[i] == Rat(0) || s[i] == Rat(1, 2)) {
      if (mult % 2 != 0)
        throw std::invalid_argument(
            "profile has no conjugate-pair decomposition: odd multiplicity of "
            "a self-conjugate eigenvalue");
      for (size_t t = 0; t < mult / 2; ++t) {
        d.reps.push_back(s[i]);
        d.self_conjugate.push_back(true);
      }
    } else if (s[i] < Rat(1, 2)) {
      // conjugation closure guarantees the matching block of 1 - e
      for (size_t t = 0; t < mult; ++t) {
        d.reps.push_back(s[i]);
        d.self_conjugate.push_back(false);
      }
    }
    i = j;
  }
  return d;
}

}  // namespace detail

inline void validate(const StabilizerProfile& p) {
  if (p.g_prime < 0) throw std::invalid_argument("stabilizer profile: g' must be >= 0");
  if (p.g_dd < 1) throw std::invalid_argument("stabilizer profile: g'' must be >= 1");
  if (p.n < 0) throw std::invalid_argument("stabilizer profile: n must be >= 0");
  if (p.gamma_kind == GammaKind::Elliptic) {
    if (static_cast<int>(p.gamma_profile.size()) != 2 * p.g_prime)
      throw std::invalid_argument("stabilizer profile: elliptic profile must have 2g' entries");
    if (!is_conjugation_closed(p.gamma_profile))
      throw std::invalid_argument("stabilizer profile: elliptic profile not conjugation-closed");
    bool all_one = true, all_minus = true;
    for (const auto& e : p.gamma_profile) {
      if (e != Rat(0)) all_one = false;
      if (e != Rat(1, 2)) all_minus = false;
    }
    if (all_one || all_minus)
      throw std::invalid_argument(
          "stabilizer profile: scalar elliptic profile; use the Identity or "
          "MinusIdentity kind");
    detail::conjugate_pairs(p.gamma_profile);  // throws if unpairable
  } else if (!p.gamma_profile.empty()) {
    throw std::invalid_argument("stabilizer profile: non-elliptic kinds carry no profile");
  }
  if (p.u_kind == UKind::General) {
    if (static_cast<int>(p.u_profile.size()) != p.g_dd)
      throw std::invalid_argument("stabilizer profile: u profile must have g'' entries");
    if (!is_conjugation_closed(p.u_profile))
      throw std::invalid_argument("stabilizer profile: u profile not conjugation-closed");
  } else if (!p.u_profile.empty()) {
    throw std::invalid_argument("stabilizer profile: epsilon kinds carry no u profile");
  }
}

// Tangent-space spectrum of the stabilizer element described by the profile,
// for one choice of eigenvalue representatives.  With lambda_i the chosen
// representative per conjugate pair and epsilon the torus scalar:
//   h     = { conj(lambda_i) conj(lambda_j) : i <= j }
//   omega = { epsilon lambda_i }        each g'' times
//   z     = { lambda_i^{z_sign} }       each n times
//   toric = { mu_i mu_j : i <= j } and n copies of each mu_i,
//           eigenvalue-1 entries dropped
// The spectrum formula needs the eigenvalue exponents of u itself, which
// only the scalar kinds provide; nontrivial u is covered by the toric-only
// lower bound u_nontrivial_bound_check.
inline TangentSpectrum assemble_spectrum(const StabilizerProfile& p,
                                         const std::vector<int>& lambda_choice, int z_sign) {
  validate(p);
  if (p.u_kind == UKind::General)
    throw std::invalid_argument(
        "assemble_spectrum: spectrum of a non-scalar u is not assembled; use "
        "u_nontrivial_bound_check");
  if (static_cast<int>(lambda_choice.size()) != p.g_prime)
    throw std::invalid_argument("assemble_spectrum: need one choice bit per conjugate pair");
  if (z_sign != 1 && z_sign != -1)
    throw std::invalid_argument("assemble_spectrum: z_sign must be +1 or -1");

  std::vector<Rat> y(p.g_prime, Rat(0));
  if (p.gamma_kind == GammaKind::MinusIdentity) {
    for (auto& v : y) v = Rat(1, 2);
  } else if (p.gamma_kind == GammaKind::Elliptic) {
    auto d = detail::conjugate_pairs(p.gamma_profile);
    for (int i = 0; i < p.g_prime; ++i)
      y[i] = lambda_choice[i] ? frac1(-d.reps[i]) : d.reps[i];
  }
  Rat eps = p.u_kind == UKind::EpsilonMinus ? Rat(1, 2) : Rat(0);

  TangentSpectrum s;
  for (int i = 0; i < p.g_prime; ++i)
    for (int j = i; j < p.g_prime; ++j) s.h_factor.push_back(frac1(-y[i] - y[j]));
  for (int i = 0; i < p.g_prime; ++i)
    for (int c = 0; c < p.g_dd; ++c) s.omega_factor.push_back(frac1(eps + y[i]));
  for (int i = 0; i < p.g_prime; ++i)
    for (int c = 0; c < p.n; ++c)
      s.z_factor.push_back(z_sign > 0 ? y[i] : frac1(-y[i]));
  std::vector<Rat> mu(p.g_dd, eps);
  for (int i = 0; i < p.g_dd; ++i)
    for (int j = i; j < p.g_dd; ++j) {
      Rat e = frac1(mu[i] + mu[j]);
      if (e != Rat(0)) s.toric_factor.push_back(e);
    }
  for (int c = 0; c < p.n; ++c)
    for (int i = 0; i < p.g_dd; ++i)
      if (mu[i] != Rat(0)) s.toric_factor.push_back(mu[i]);
  s.h_factor = normalize_profile(s.h_factor);
  s.omega_factor = normalize_profile(s.omega_factor);
  s.z_factor = normalize_profile(s.z_factor);
  s.toric_factor = normalize_profile(s.toric_factor);
  return s;
}

// True iff exactly one eigenvalue across all four factors differs from 1.
inline bool is_quasireflection(const TangentSpectrum& s) {
  int nontrivial = 0;
  for (const auto* f : {&s.h_factor, &s.omega_factor, &s.z_factor, &s.toric_factor})
    for (const auto& e : *f)
      if (e != Rat(0)) ++nontrivial;
  return nontrivial == 1;
}

// Minimum age over all representative choices and both z exponent signs.
// The first minimizer in enumeration order (choice bits as an ascending
// binary counter, z_sign +1 before -1) is reported, so the result is
// deterministic.
inline AgeReport min_age(const StabilizerProfile& p) {
  validate(p);
  if (p.u_kind == UKind::General)
    throw std::invalid_argument(
        "min_age: spectrum of a non-scalar u is not assembled; use "
        "u_nontrivial_bound_check");
  std::vector<int> free_bits;
  if (p.gamma_kind == GammaKind::Elliptic) {
    auto d = detail::conjugate_pairs(p.gamma_profile);
    for (int i = 0; i < p.g_prime; ++i)
      if (!d.self_conjugate[i]) free_bits.push_back(i);
  }
  std::optional<AgeReport> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << free_bits.size()); ++mask) {
    std::vector<int> choice(p.g_prime, 0);
    for (size_t b = 0; b < free_bits.size(); ++b)
      if (mask & (std::uint64_t(1) << b)) choice[free_bits[b]] = 1;
    for (int z_sign : {1, -1}) {
      TangentSpectrum s = assemble_spectrum(p, choice, z_sign);
      AgeReport r;
      r.per_factor_ages = {age(s.h_factor), age(s.omega_factor), age(s.z_factor),
                           age(s.toric_factor)};
      r.age = r.per_factor_ages[0] + r.per_factor_ages[1] + r.per_factor_ages[2] +
              r.per_factor_ages[3];
      r.is_quasireflection = is_quasireflection(s);
      r.lambda_choice = choice;
      r.z_sign = z_sign;
      if (!best || r.age < best->age) best = std::move(r);
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Scans

struct UCheckRow {
  EigenProfile u;
  Rat toric_age;
};

// Toric-factor lower bound for non-scalar u: every conjugation-closed
// u-profile (orders <= 12, u != +-1) must have toric age >= 1 on its own.
// The scalar branch u = -1 is the known exception at (g'', n) = (1, 1).
struct UCheckReport {
  int g_dd = 0;
  int n = 0;
  bool pass = true;  // all non-scalar rows have age >= 1
  std::vector<UCheckRow> rows;
  Rat minus_one_age;               // n g'' / 2
  bool minus_one_exception = false;  // (g'', n) == (1, 1)
};

namespace detail {

inline Rat toric_only_age(const EigenProfile& mu, int n) {
  Rat s(0);
  for (size_t i = 0; i < mu.size(); ++i)
    for (size_t j = i; j < mu.size(); ++j) s += frac1(mu[i] + mu[j]);
  for (const auto& m : mu) s += Rat(n) * m;
  return s;
}

// Conjugation-closed multisets of the given size with entry orders <= 12,
// enumerated in canonical (lexicographic) order; atoms are the fixed points
// 0 and 1/2 (one slot) and the conjugate pairs {a/k, 1 - a/k} (two slots).
inline void enumerate_closed_multisets(int size, int first_atom,
                                       const std::vector<std::pair<Rat, int>>& atoms,
                                       EigenProfile& acc,
                                       const std::function<void(const EigenProfile&)>& emit) {
  if (size == 0) {
    emit(acc);
    return;
  }
  for (int a = first_atom; a < static_cast<int>(atoms.size()); ++a) {
    const auto& [rat, slots] = atoms[a];
    if (slots > size) continue;
    acc.push_back(rat);
    if (slots == 2) acc.push_back(frac1(-rat));
    enumerate_closed_multisets(size - slots, a, atoms, acc, emit);
    acc.pop_back();
    if (slots == 2) acc.pop_back();
  }
}

inline std::vector<std::pair<Rat, int>> closed_multiset_atoms(int d_max) {
  std::vector<std::pair<Rat, int>> atoms{{Rat(0), 1}, {Rat(1, 2), 1}};
  for (int k = 3; k <= d_max; ++k)
    for (int a = 1; 2 * a < k; ++a)
      if (std::gcd(a, k) == 1) atoms.emplace_back(Rat(a, k), 2);
  return atoms;
}

}  // namespace detail

inline UCheckReport u_nontrivial_bound_check(int g_dd, int n) {
  if (g_dd < 1) throw std::invalid_argument("u_nontrivial_bound_check: need g'' >= 1");
  if (n < 0) throw std::invalid_argument("u_nontrivial_bound_check: need n >= 0");
  UCheckReport rep;
  rep.g_dd = g_dd;
  rep.n = n;
  rep.minus_one_age = Rat(n * g_dd, 2);
  rep.minus_one_exception = (g_dd == 1 && n == 1);
  auto atoms = detail::closed_multiset_atoms(12);
  EigenProfile acc;
  detail::enumerate_closed_multisets(
      g_dd, 0, atoms, acc, [&](const EigenProfile& mu) {
        bool all_one = true, all_minus = true;
        for (const auto& e : mu) {
          if (e != Rat(0)) all_one = false;
          if (e != Rat(1, 2)) all_minus = false;
        }
        if (all_one || all_minus) return;  // scalar u handled separately
        UCheckRow row{normalize_profile(mu), detail::toric_only_age(mu, n)};
        if (row.toric_age < Rat(1)) rep.pass = false;
        rep.rows.push_back(std::move(row));
      });
  return rep;
}

struct ScanRow {
  StabilizerProfile profile;
  Rat min_age;
  bool quasireflection = false;
  std::vector<int> lambda_choice;
  int z_sign = 1;
};

// Tai-admissibility bound: for an element of order d <= 6, the age is at
// least (g' + g'' + n)/d; a bound below 1 certifies that the classical
// argument cannot rule the profile out.
struct BoundWitness {
  StabilizerProfile profile;
  Int d;
  Rat bound;
};

struct ScanReport {
  int g = 0, n = 0, d_max = 12;
  bool pass = false;
  std::vector<ScanRow> rows;                   // canonical enumeration order
  std::vector<size_t> age_violation_idx;       // min age < 1, not a quasireflection
  std::vector<size_t> quasireflection_idx;     // min age < 1, quasireflection
  std::vector<BoundWitness> bound_witnesses;   // Tai-admissible, bound < 1
  std::vector<UCheckReport> u_checks;          // one per split g''
};

namespace detail {

struct PairAtom {
  std::int64_t rep;  // numerator over the common denominator
  int order;
  Rat rat;
};

inline std::vector<PairAtom> pair_atoms(int d_max, std::int64_t den) {
  std::vector<PairAtom> v{{0, 1, Rat(0)}, {den / 2, 2, Rat(1, 2)}};
  for (int k = 3; k <= d_max; ++k)
    for (int a = 1; 2 * a < k; ++a)
      if (std::gcd(a, k) == 1) v.push_back({den / k * a, k, Rat(a, k)});
  return v;
}

// Exact minimum age over choice bits and z_sign, on the fixed common
// denominator.  Mirrors assemble_spectrum entry by entry.
struct FastMin {
  std::int64_t num = 0;  // min age numerator
  std::uint32_t mask = 0;
  int z_sign = 1;
  bool quasireflection = false;
};

inline FastMin fast_min_age(const std::vector<std::int64_t>& reps,
                            const std::vector<bool>& self, int g_dd, int n, bool eps_minus,
                            std::int64_t den) {
  int gp = static_cast<int>(reps.size());
  std::vector<int> free_bits;
  for (int i = 0; i < gp; ++i)
    if (!self[i]) free_bits.push_back(i);
  std::int64_t eps = eps_minus ? den / 2 : 0;
  // toric part: Sym^2 entries are 2 eps = 0 mod 1 for scalar u; V part is
  // n g'' copies of eps
  std::int64_t toric = eps ? std::int64_t(n) * g_dd * eps : 0;
  int toric_nontrivial = eps ? n * g_dd : 0;
  FastMin best;
  bool have = false;
  std::vector<std::int64_t> y(gp);
  for (std::uint32_t mask = 0; mask < (1u << free_bits.size()); ++mask) {
    for (int i = 0; i < gp; ++i) y[i] = reps[i];
    for (size_t b = 0; b < free_bits.size(); ++b)
      if (mask & (1u << b)) y[free_bits[b]] = (den - reps[free_bits[b]]) % den;
    std::int64_t h = 0, omega = 0;
    int h_nt = 0, omega_nt = 0;
    for (int i = 0; i < gp; ++i) {
      for (int j = i; j < gp; ++j) {
        std::int64_t e = (2 * den - y[i] - y[j]) % den;
        h += e;
        if (e) ++h_nt;
      }
      std::int64_t w = (eps + y[i]) % den;
      omega += std::int64_t(g_dd) * w;
      if (w) omega_nt += g_dd;
    }
    for (int z_sign : {1, -1}) {
      std::int64_t z = 0;
      int z_nt = 0;
      for (int i = 0; i < gp; ++i) {
        std::int64_t e = z_sign > 0 ? y[i] : (den - y[i]) % den;
        z += std::int64_t(n) * e;
        if (e) z_nt += n;
      }
      std::int64_t total = h + omega + z + toric;
      if (!have || total < best.num) {
        have = true;
        best.num = total;
        best.mask = mask;
        best.z_sign = z_sign;
        best.quasireflection = (h_nt + omega_nt + z_nt + toric_nontrivial) == 1;
      }
    }
  }
  return best;
}

}  // namespace detail

// Profile-space scan over all splits g = g' + g'' (g'' >= 1): elliptic
// gamma'-profiles with entry orders <= d_max plus the scalar kinds, both
// torus scalars (gamma' = Identity with u = Identity excluded as acting
// trivially at the boundary), non-scalar u via the toric-only bound check.
// Pass means: every exact minimum age is >= 1 (quasireflections recorded
// separately), no Tai-admissible profile has its order bound below 1, and
// all u-checks pass.
inline ScanReport rt_scan(int g, int n, int d_max = 12) {
  if (g < 2) throw std::invalid_argument("rt_scan: need g >= 2");
  if (g > 6) throw std::domain_error("rt_scan: g > 6 exceeds the supported profile-space size");
  if (n < 0) throw std::invalid_argument("rt_scan: need n >= 0");
  if (d_max < 1 || d_max > 24) throw std::invalid_argument("rt_scan: d_max must be in [1, 24]");
  std::int64_t den = 1;
  for (int k = 2; k <= d_max; ++k) den = std::lcm(den, std::int64_t(k));
  if (den % 2 != 0) den *= 2;  // epsilon needs a half
  ScanReport rep;
  rep.g = g;
  rep.n = n;
  rep.d_max = d_max;
  auto atoms = detail::pair_atoms(d_max, den);

  auto emit = [&](int g_prime, GammaKind kind, const std::vector<int>& atom_idx, bool eps_minus) {
    int g_dd = g - g_prime;
    std::vector<std::int64_t> reps;
    std::vector<bool> self;
    Int d = eps_minus ? 2 : 1;
    if (kind == GammaKind::MinusIdentity) {
      reps.assign(g_prime, den / 2);
      self.assign(g_prime, true);
      d = int_lcm(d, 2);
    } else if (kind == GammaKind::Identity) {
      reps.assign(g_prime, 0);
      self.assign(g_prime, true);
    } else {
      for (int a : atom_idx) {
        reps.push_back(atoms[a].rep);
        self.push_back(atoms[a].order <= 2);
        d = int_lcm(d, atoms[a].order);
      }
    }
    auto fm = detail::fast_min_age(reps, self, g_dd, n, eps_minus, den);

    ScanRow row;
    row.profile.g_prime = g_prime;
    row.profile.g_dd = g_dd;
    row.profile.n = n;
    row.profile.gamma_kind = kind;
    if (kind == GammaKind::Elliptic) {
      EigenProfile ep;
      for (int a : atom_idx) {
        ep.push_back(atoms[a].rat);
        ep.push_back(frac1(-atoms[a].rat));
      }
      row.profile.gamma_profile = normalize_profile(ep);
    }
    row.profile.u_kind = eps_minus ? UKind::EpsilonMinus : UKind::EpsilonPlus;
    row.min_age = Rat(Int(fm.num), Int(den));
    row.quasireflection = fm.quasireflection;
    row.lambda_choice.assign(g_prime, 0);
    {
      std::vector<int> free_bits;
      for (int i = 0; i < g_prime; ++i)
        if (!self[i]) free_bits.push_back(i);
      for (size_t b = 0; b < free_bits.size(); ++b)
        if (fm.mask & (1u << b)) row.lambda_choice[free_bits[b]] = 1;
    }
    row.z_sign = fm.z_sign;
    size_t idx = rep.rows.size();
    if (row.min_age < Rat(1)) {
      if (row.quasireflection)
        rep.quasireflection_idx.push_back(idx);
      else
        rep.age_violation_idx.push_back(idx);
    }
    if (d <= 6 && Rat(Int(g + n), d) < Rat(1))
      rep.bound_witnesses.push_back({row.profile, d, Rat(Int(g + n), d)});
    rep.rows.push_back(std::move(row));
  };

  for (int g_prime = 0; g_prime + 1 <= g; ++g_prime) {
    // scalar gamma' kinds first, then elliptic multisets in canonical order
    emit(g_prime, GammaKind::Identity, {}, /*eps_minus=*/true);  // +1 branch excluded
    if (g_prime >= 1) {
      emit(g_prime, GammaKind::MinusIdentity, {}, false);
      emit(g_prime, GammaKind::MinusIdentity, {}, true);
      std::vector<int> idx;
      auto rec = [&](auto&& rec_ref, int remaining, int first) -> void {
        if (remaining == 0) {
          bool all_one = true, all_minus = true;
          for (int a : idx) {
            if (atoms[a].rep != 0) all_one = false;
            if (atoms[a].order != 2) all_minus = false;
          }
          if (!all_one && !all_minus) {
            emit(g_prime, GammaKind::Elliptic, idx, false);
            emit(g_prime, GammaKind::Elliptic, idx, true);
          }
          return;
        }
        for (int a = first; a < static_cast<int>(atoms.size()); ++a) {
          idx.push_back(a);
          rec_ref(rec_ref, remaining - 1, a);
          idx.pop_back();
        }
      };
      rec(rec, g_prime, 0);
    }
    rep.u_checks.push_back(u_nontrivial_bound_check(g - g_prime, n));
  }
  bool u_ok = true;
  for (const auto& uc : rep.u_checks)
    if (!uc.pass) u_ok = false;
  rep.pass = rep.age_violation_idx.empty() && rep.bound_witnesses.empty() && u_ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Interior verdicts and the certificate

enum class InteriorVerdict { CanonicalNoQuasireflections, Exception };

// Interior singular locus of the moduli space itself: canonical with no
// quasireflections except at the three classical small cases.
inline InteriorVerdict interior_singularity_table(int g, int n) {
  if (g < 2) throw std::invalid_argument("interior_singularity_table: need g >= 2");
  if (n < 0) throw std::invalid_argument("interior_singularity_table: need n >= 0");
  if (n >= 1 && ((g == 2 && n <= 2) || (g == 3 && n == 1)))
    return InteriorVerdict::Exception;
  return InteriorVerdict::CanonicalNoQuasireflections;
}

struct FanCheck {
  std::string name;
  bool ok = false;
};

struct Certificate {
  int g = 0, n = 0;
  bool pass = false;
  InteriorVerdict interior = InteriorVerdict::CanonicalNoQuasireflections;
  ScanReport scan;
  std::vector<FanCheck> fan_checks;
};

namespace detail {

inline void check_fan_slice(std::vector<FanCheck>& out, const std::string& prefix, int gdd,
                            int n_eff, int window) {
  Fan base = perfect_cone_fan(gdd, window);
  Fan lf = lifted_fan(gdd, n_eff, window);
  out.push_back({prefix + "_fan_valid", fan_validity_offenders(lf).empty()});
  out.push_back({prefix + "_equidim_codim1", is_equidim_codim1(lf, base).ok});
  out.push_back({prefix + "_no_interior_rays", no_interior_rays(lf, gdd, n_eff).ok});
  out.push_back({prefix + "_base_cones", base_cone_inclusion(lf, base, gdd, n_eff).ok});
  bool canonical = true;
  for (const auto& c : lf.cones) {
    auto rep = toric_is_canonical(c);
    if (rep.verdict != ToricVerdict::Smooth && rep.verdict != ToricVerdict::Canonical)
      canonical = false;
  }
  out.push_back({prefix + "_toric_canonical", canonical});
}

}  // namespace detail

// Aggregate certificate: interior verdict, full profile scan, and the
// desk-scale lifted-fan condition checks on the g'' = 1 and g'' = 2 slices.
// Pass mirrors the existence statement: it holds exactly when g + n >= 6.
inline Certificate certify(int g, int n, int fan_window = 0) {
  if (g < 2) throw std::invalid_argument("certify: need g >= 2");
  if (n < 1) throw std::invalid_argument("certify: need n >= 1");
  if (fan_window != 0 && fan_window < 2)
    throw std::invalid_argument("certify: fan window must be >= 2");
  Certificate c;
  c.g = g;
  c.n = n;
  c.interior = interior_singularity_table(g, n);
  c.scan = rt_scan(g, n);
  detail::check_fan_slice(c.fan_checks, "g1", 1, std::min(n, 2), fan_window ? fan_window : 3);
  detail::check_fan_slice(c.fan_checks, "g2", 2, 1, fan_window ? fan_window : 2);
  bool fans_ok = true;
  for (const auto& f : c.fan_checks)
    if (!f.ok) fans_ok = false;
  c.pass = c.interior == InteriorVerdict::CanonicalNoQuasireflections && c.scan.pass && fans_ok;
  return c;
}

}  // namespace kuga
