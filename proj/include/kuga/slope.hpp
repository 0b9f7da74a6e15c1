#pragma once

// Divisor classes on the perfect-cone compactification of A_g, slope
// bounds, Fourier-support vanishing orders, and the Kodaira-dimension
// rule engine for the compactified universal families.
//
// Divisor classes live in the rank-2 lattice spanned by the Hodge class
// lambda and the boundary class delta; a class is stored as the exact
// pair (a, b) of coefficients of a*lambda - b*delta.  The slope of an
// effective class with a, b > 0 is a/b, and s_min(g) is the infimum of
// slopes of effective divisors, known exactly for g <= 5 and bounded
// for g = 6.  The Kodaira engine compares s_min(g) against g + n + 1
// and reports a verdict together with the instantiated inequalities
// that justify it.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadform.hpp"
#include "rational.hpp"

namespace kuga {

// ---------------------------------------------------------------------------
// Divisor classes a*lambda - b*delta
// ---------------------------------------------------------------------------

struct DivisorClass {
  Rat lambda_coeff;  // a
  Rat delta_coeff;   // b, so the class is a*lambda - b*delta

  bool operator==(const DivisorClass& o) const {
    return lambda_coeff == o.lambda_coeff && delta_coeff == o.delta_coeff;
  }
};

namespace detail {

// 2^e as an exact rational, e possibly negative.
inline Rat pow2(int e) {
  if (e >= 0) return Rat(Int(1) << e);
  return Rat(Int(1), Int(1) << (-e));
}

inline Int factorial(int n) {
  Int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

// Class of the theta-null divisor: 2^{g-2}(2^g + 1) lambda - 2^{2g-5} delta.
// Exact rationals throughout; for small g the powers of two are fractional.
inline DivisorClass theta_null_class(int g) {
  if (g < 1) throw std::invalid_argument("theta_null_class: g must be >= 1");
  Rat a = detail::pow2(g - 2) * Rat((Int(1) << g) + 1);
  Rat b = detail::pow2(2 * g - 5);
  return DivisorClass{a, b};
}

// Class of the closure N'_0 of the locus of products with a point of
// order dividing 2:
//   ((g+1)!/4 + g!/2 - 2^{g-3}(2^g + 1)) lambda - ((g+1)!/24 - 2^{2g-6}) delta.
// Only computed for g >= 4; below that the locus is not a divisor.
inline DivisorClass n0_prime_class(int g) {
  if (g < 4)
    throw std::domain_error("n0_prime_class: only defined for g >= 4");
  Rat a = Rat(detail::factorial(g + 1), 4) + Rat(detail::factorial(g), 2) -
          detail::pow2(g - 3) * Rat((Int(1) << g) + 1);
  Rat b = Rat(detail::factorial(g + 1), 24) - detail::pow2(2 * g - 6);
  return DivisorClass{a, b};
}

// Slope a/b of an effective class a*lambda - b*delta.  Requires both
// coefficients strictly positive; anything else is not in the effective
// cone region where the slope is meaningful.
inline Rat slope(const DivisorClass& d) {
  if (d.lambda_coeff <= 0 || d.delta_coeff <= 0)
    throw std::invalid_argument(
        "slope: class is not effective with positive lambda and delta "
        "coefficients");
  return d.lambda_coeff / d.delta_coeff;
}

// ---------------------------------------------------------------------------
// Minimal slopes s_min(g)
// ---------------------------------------------------------------------------

enum class SlopeAchiever { ThetaNull, N0Prime, External };

inline std::string to_string(SlopeAchiever a) {
  switch (a) {
    case SlopeAchiever::ThetaNull: return "theta_null";
    case SlopeAchiever::N0Prime: return "n0_prime";
    case SlopeAchiever::External: return "external";
  }
  throw std::logic_error("to_string: bad SlopeAchiever");
}

struct SlopeRecord {
  int g = 0;
  Rat value;                       // s_min(g), or an upper bound for it
  bool is_upper_bound_only = false;
  SlopeAchiever achieved_by = SlopeAchiever::ThetaNull;
  bool minimizer_rigid = false;    // minimizing divisor rigid (unique effective
                                   // representative of its class)
  std::optional<Rat> n0_prime_slope;  // g = 6 only: the divisorial bound
                                      // 550/73 used by the verdict engine
};

// Minimal slope data for 1 <= g <= 6.  Exact for g <= 5 (value attained
// by a rigid divisor); for g = 6 only the upper bound 7 is known, the
// minimizer is not known to be rigid, and the N'_0 slope 550/73 is kept
// alongside as the divisorial bound the verdict engine works with.
inline SlopeRecord s_min_record(int g) {
  if (g < 1) throw std::invalid_argument("s_min_record: g must be >= 1");
  if (g > 6)
    throw std::domain_error("s_min_record: s_min unknown for g >= 7");
  SlopeRecord r;
  r.g = g;
  switch (g) {
    case 1:
      r.value = Rat(12);
      r.achieved_by = SlopeAchiever::ThetaNull;
      r.minimizer_rigid = true;
      break;
    case 2:
      r.value = Rat(10);
      r.achieved_by = SlopeAchiever::ThetaNull;
      r.minimizer_rigid = true;
      break;
    case 3:
      r.value = Rat(9);
      r.achieved_by = SlopeAchiever::ThetaNull;
      r.minimizer_rigid = true;
      break;
    case 4:
      r.value = Rat(8);
      r.achieved_by = SlopeAchiever::N0Prime;
      r.minimizer_rigid = true;
      break;
    case 5:
      r.value = Rat(54, 7);
      r.achieved_by = SlopeAchiever::N0Prime;
      r.minimizer_rigid = true;
      break;
    case 6:
      r.value = Rat(7);
      r.is_upper_bound_only = true;
      r.achieved_by = SlopeAchiever::External;
      r.minimizer_rigid = false;
      r.n0_prime_slope = Rat(550, 73);
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fourier supports and vanishing orders of cusp forms
// ---------------------------------------------------------------------------

// Support of a Fourier expansion: a nonempty set of even integral
// symmetric g x g matrices (even diagonal), all positive semidefinite.
struct FourierSupport {
  int g = 0;
  std::vector<QuadForm> matrices;
};

namespace detail {

inline void validate_support(const FourierSupport& s) {
  if (s.g < 1)
    throw std::invalid_argument("fourier support: g must be >= 1");
  if (s.matrices.empty())
    throw std::invalid_argument("fourier support: empty support");
  for (const auto& q : s.matrices) {
    if (q.dim() != s.g)
      throw std::invalid_argument("fourier support: matrix dimension != g");
    for (int i = 0; i < q.dim(); ++i)
      if (q.m.at(i, i) % 2 != 0)
        throw std::invalid_argument(
            "fourier support: matrix is not even (odd diagonal entry)");
    if (!is_psd(q))
      throw std::invalid_argument(
          "fourier support: matrix is not positive semidefinite");
  }
}

}  // namespace detail

// Vanishing order along the boundary of a form with the given support:
//   (1/2) * min over T in the support of min_{x != 0} x^t T x.
// Zero exactly when some support matrix is degenerate; strictly positive
// iff every support matrix is positive definite.
inline Rat vanishing_order(const FourierSupport& s) {
  detail::validate_support(s);
  Int best = quad_min(s.matrices.front()).value;
  for (std::size_t i = 1; i < s.matrices.size(); ++i) {
    Int v = quad_min(s.matrices[i]).value;
    if (v < best) best = v;
    if (best == 0) break;
  }
  return Rat(best, 2);
}

// Slope weight / vanishing_order of a weight-k form with the given
// support.  Vanishing order zero means the form is not a cusp form and
// has no slope.
inline Rat cusp_form_slope(int weight, const FourierSupport& s) {
  if (weight < 1)
    throw std::invalid_argument("cusp_form_slope: weight must be >= 1");
  Rat b = vanishing_order(s);
  if (b == 0)
    throw std::runtime_error(
        "cusp_form_slope: vanishing order 0, not a cusp form");
  return Rat(weight) / b;
}

// ---------------------------------------------------------------------------
// Kodaira dimension of the compactified universal families
// ---------------------------------------------------------------------------

enum class KodairaKind { GeneralType, Zero, MinusInfinity };

inline std::string to_string(KodairaKind k) {
  switch (k) {
    case KodairaKind::GeneralType: return "general_type";
    case KodairaKind::Zero: return "zero";
    case KodairaKind::MinusInfinity: return "minus_infinity";
  }
  throw std::logic_error("to_string: bad KodairaKind");
}

struct KodairaVerdict {
  int g = 0;
  int n = 0;
  KodairaKind kind = KodairaKind::MinusInfinity;
  int dimension = -1;  // g(g+1)/2 for general type, else -1
  bool informational = false;  // n = 0 verdicts describe A_g itself
  std::vector<std::string> justification;  // ordered rule tags, each with the
                                           // instantiated exact inequality
};

// Rule chain:
//   R1  g = 1: the fibres are rational, kappa = -infinity for every n.
//   R2  g >= 7: A_g is of general type, and so is every family over it;
//       dimension g(g+1)/2.
//   R3  2 <= g <= 6: compare s = s_min(g) with the threshold g + n + 1
//       (for g = 6 the divisorial bound 550/73 stands in for s, never the
//       sharper non-divisorial bound 7):
//         s <  g+n+1 and g+n >= 6  ->  general type, dimension g(g+1)/2
//         s == g+n+1 and the minimizer is rigid  ->  kappa = 0
//         s >  g+n+1  ->  kappa = -infinity
//       Any remaining configuration cannot be decided by this chain and
//       raises an explicit undecidable error instead of guessing.
// For n = 0 the same comparison against g + 1 reports the classical facts
// about A_g itself; those verdicts are marked informational.
inline KodairaVerdict kodaira_dimension(int g, int n) {
  if (g < 1) throw std::invalid_argument("kodaira_dimension: g must be >= 1");
  if (n < 0) throw std::invalid_argument("kodaira_dimension: n must be >= 0");
  KodairaVerdict v;
  v.g = g;
  v.n = n;
  v.informational = (n == 0);

  if (g == 1) {
    v.kind = KodairaKind::MinusInfinity;
    v.justification.push_back(
        "R1: g = 1, the fibres are rational, kappa = -infinity");
    return v;
  }
  if (g >= 7) {
    v.kind = KodairaKind::GeneralType;
    v.dimension = g * (g + 1) / 2;
    v.justification.push_back("R2: g = " + std::to_string(g) +
                              " >= 7, general type of dimension " +
                              std::to_string(v.dimension));
    return v;
  }

  SlopeRecord rec = s_min_record(g);
  Rat s = rec.n0_prime_slope ? *rec.n0_prime_slope : rec.value;
  std::string s_name =
      rec.n0_prime_slope
          ? "divisorial slope bound for g = " + std::to_string(g)
          : "s_min(" + std::to_string(g) + ")";
  Rat threshold = Rat(g + n + 1);
  std::string thr_name =
      (n == 0) ? "g + 1 = " + rat_str(threshold)
               : "g + n + 1 = " + rat_str(threshold);

  if (s < threshold) {
    v.justification.push_back("R3: " + s_name + " = " + rat_str(s) + " < " +
                              thr_name);
    if (n == 0 || g + n >= 6) {
      v.kind = KodairaKind::GeneralType;
      v.dimension = g * (g + 1) / 2;
      if (n > 0)
        v.justification.push_back(
            "R3-lt: canonical model exists (g + n = " + std::to_string(g + n) +
            " >= 6), general type of dimension " + std::to_string(v.dimension));
      else
        v.justification.push_back("R3-lt: general type of dimension " +
                                  std::to_string(v.dimension));
      return v;
    }
    throw std::domain_error(
        "kodaira_dimension: undecidable, slope comparison favours general "
        "type but g + n = " +
        std::to_string(g + n) + " < 6");
  }
  if (s == threshold) {
    v.justification.push_back("R3: " + s_name + " = " + rat_str(s) + " = " +
                              thr_name);
    if (rec.minimizer_rigid && !rec.is_upper_bound_only && n > 0) {
      v.kind = KodairaKind::Zero;
      v.dimension = -1;
      v.justification.push_back(
          "R3-eq: slope attained by a rigid divisor, kappa = 0");
      return v;
    }
    throw std::domain_error(
        "kodaira_dimension: undecidable, slope equality without a rigid "
        "minimizer");
  }
  v.justification.push_back("R3: " + s_name + " = " + rat_str(s) + " > " +
                            thr_name);
  if (n == 0)
    throw std::domain_error(
        "kodaira_dimension: undecidable for A_" + std::to_string(g) +
        " itself, slope bound " + rat_str(s) + " exceeds g + 1");
  v.kind = KodairaKind::MinusInfinity;
  v.dimension = -1;
  v.justification.push_back("R3-gt: kappa = -infinity");
  return v;
}

// Table of verdicts for 1 <= g <= g_max, 1 <= n <= n_max, indexed
// [g-1][n-1].  Kept small: the engine's data only covers this window.
struct KdimTable {
  int g_max = 0;
  int n_max = 0;
  std::vector<std::vector<KodairaVerdict>> verdicts;
};

inline KdimTable kdim_table(int g_max, int n_max) {
  if (g_max < 1 || g_max > 9)
    throw std::invalid_argument("kdim_table: g_max must be in [1, 9]");
  if (n_max < 1 || n_max > 20)
    throw std::invalid_argument("kdim_table: n_max must be in [1, 20]");
  KdimTable t;
  t.g_max = g_max;
  t.n_max = n_max;
  t.verdicts.resize(g_max);
  for (int g = 1; g <= g_max; ++g) {
    t.verdicts[g - 1].reserve(n_max);
    for (int n = 1; n <= n_max; ++n)
      t.verdicts[g - 1].push_back(kodaira_dimension(g, n));
  }
  return t;
}

}  // namespace kuga
