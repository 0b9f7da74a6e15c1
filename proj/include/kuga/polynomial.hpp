#pragma once
// Integer polynomials, characteristic polynomials of integer matrices, and
// factorization into cyclotomic polynomials (the only factorization the
// finite-order machinery needs).

#include "kuga/matrix.hpp"
#include "kuga/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace kuga {

// Coefficient list, lowest degree first; invariant: no trailing zeros.
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  const Int& lead() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  bool operator==(const IntPoly& o) const { return c == o.c; }
};

inline IntPoly poly_mul(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero() || q.is_zero()) return IntPoly{};
  std::vector<Int> r(p.c.size() + q.c.size() - 1, Int(0));
  for (size_t i = 0; i < p.c.size(); ++i)
    for (size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
  return IntPoly(std::move(r));
}

// Exact division by a monic divisor; nullopt when the remainder is nonzero.
inline std::optional<IntPoly> poly_divide_exact(const IntPoly& p, const IntPoly& d) {
  if (d.is_zero() || !d.is_monic()) throw std::invalid_argument("divisor must be monic");
  if (p.is_zero()) return IntPoly{};
  if (p.degree() < d.degree()) return std::nullopt;
  std::vector<Int> rem = p.c;
  std::vector<Int> quo(p.degree() - d.degree() + 1, Int(0));
  for (int k = p.degree() - d.degree(); k >= 0; --k) {
    Int f = rem[k + d.degree()];
    if (f == 0) continue;
    quo[k] = f;
    for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= f * d.c[j];
  }
  for (const auto& x : rem)
    if (x != 0) return std::nullopt;
  return IntPoly(std::move(quo));
}

// x^n - 1
inline IntPoly power_minus_one(int n) {
  std::vector<Int> c(n + 1, Int(0));
  c[0] = -1;
  c[n] = 1;
  return IntPoly(std::move(c));
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// Cyclotomic polynomial via Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
inline const IntPoly& cyclotomic(int d) {
  static std::map<int, IntPoly> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d < 1) throw std::invalid_argument("cyclotomic index must be positive");
  IntPoly p = power_minus_one(d);
  for (int e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto q = poly_divide_exact(p, cyclotomic(e));
    if (!q) throw std::logic_error("cyclotomic recursion failed");
    p = *q;
  }
  return cache.emplace(d, std::move(p)).first->second;
}

// Greedy factorization into cyclotomics: repeated exact trial division over
// all d with phi(d) <= deg.  The non-cyclotomic part (if any) is returned as
// the remainder cofactor.
struct CyclotomicFactorization {
  std::vector<std::pair<int, int>> factors;  // (d, multiplicity), d ascending
  IntPoly remainder;                         // monic; degree 0 iff fully split
};

inline CyclotomicFactorization cyclotomic_factor(const IntPoly& p0) {
  if (p0.is_zero() || !p0.is_monic())
    throw std::invalid_argument("cyclotomic_factor expects a monic polynomial");
  CyclotomicFactorization out;
  IntPoly p = p0;
  int deg = p.degree();
  // phi(d) >= sqrt(d/2), so phi(d) <= deg forces d <= 2 deg^2 (+ small slack)
  int dmax = 2 * deg * deg + 2;
  for (int d = 1; d <= dmax && p.degree() > 0; ++d) {
    if (euler_phi(d) > p.degree()) continue;
    int mult = 0;
    while (true) {
      auto q = poly_divide_exact(p, cyclotomic(d));
      if (!q) break;
      p = *q;
      ++mult;
    }
    if (mult > 0) out.factors.emplace_back(d, mult);
  }
  out.remainder = p;
  return out;
}

// Characteristic polynomial det(x I - A) by the Faddeev-LeVerrier recurrence;
// all divisions are exact over the integers.
inline IntPoly char_poly(const IMat& a) {
  if (a.rows != a.cols) throw std::invalid_argument("char_poly of non-square matrix");
  int n = a.rows;
  std::vector<Int> c(n + 1, Int(0));
  c[n] = 1;
  IMat m(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    IMat am = mat_mul(a, m);
    for (int i = 0; i < n; ++i) am.at(i, i) += c[n - k + 1];
    m = std::move(am);
    IMat prod = mat_mul(a, m);
    Int tr = 0;
    for (int i = 0; i < n; ++i) tr += prod.at(i, i);
    if (tr % k != 0) throw std::logic_error("Faddeev-LeVerrier division not exact");
    c[n - k] = -tr / k;
  }
  return IntPoly(std::move(c));
}

}  // namespace kuga
