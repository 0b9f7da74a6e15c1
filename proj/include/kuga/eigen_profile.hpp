#pragma once
// Eigenvalue profiles of finite-order integer matrices as exact roots of
// unity: entry a/k (reduced, in [0,1)) denotes e^{2 pi i a/k}.

#include "kuga/matrix.hpp"
#include "kuga/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace kuga {

// Sorted multiset of reduced rationals in [0, 1).
using EigenProfile = std::vector<Rat>;

inline EigenProfile normalize_profile(EigenProfile p) {
  for (auto& e : p) e = frac1(e);
  std::sort(p.begin(), p.end());
  return p;
}

inline EigenProfile profile_conjugate(const EigenProfile& p) {
  EigenProfile q;
  q.reserve(p.size());
  for (const auto& e : p) q.push_back(frac1(-e));
  return normalize_profile(q);
}

// Closed under complex conjugation a -> -a mod 1 (real matrices only ever
// produce such profiles).
inline bool is_conjugation_closed(const EigenProfile& p) {
  return normalize_profile(p) == profile_conjugate(p);
}

// Reid-Tai sum: total of the exponents a_i/k_i.
inline Rat age(const EigenProfile& p) {
  Rat s(0);
  for (const auto& e : p) s += frac1(e);
  return s;
}

// lcm of the orders of the entries = order of the diagonal torsion element.
inline Int profile_order(const EigenProfile& p) {
  Int l = 1;
  for (const auto& e : p) l = int_lcm(l, root_order(e));
  return l;
}

// Multiplicative order by direct powering.  The bound 60 covers every
// torsion order realizable in GL_d(Z) for d <= 12 with a wide margin.
inline constexpr int kMaxTorsionOrder = 60;

inline std::optional<int> matrix_order(const IMat& m, int bound = kMaxTorsionOrder) {
  if (m.rows != m.cols) throw std::invalid_argument("matrix_order of non-square matrix");
  IMat id = IMat::identity(m.rows);
  IMat p = m;
  for (int k = 1; k <= bound; ++k) {
    if (p == id) return k;
    p = mat_mul(p, m);
  }
  return std::nullopt;
}

// Exact eigenvalue multiset of a finite-order integer matrix, through the
// cyclotomic factorization of its characteristic polynomial.
inline EigenProfile eigen_profile(const IMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("eigen_profile of non-square matrix");
  auto ord = matrix_order(m);
  if (!ord)
    throw std::domain_error("matrix is not of finite order (no order <= " +
                            std::to_string(kMaxTorsionOrder) + ")");
  auto fac = cyclotomic_factor(char_poly(m));
  if (fac.remainder.degree() > 0)
    throw std::logic_error("finite-order matrix with non-cyclotomic factor");
  EigenProfile p;
  for (const auto& [d, mult] : fac.factors)
    for (int a = 0; a < d; ++a) {
      if (std::gcd(a, d) != 1 && d > 1) continue;
      if (d == 1 && a != 0) continue;
      for (int t = 0; t < mult; ++t) p.emplace_back(a, d);
    }
  return normalize_profile(p);
}

}  // namespace kuga
