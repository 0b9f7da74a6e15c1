#pragma once
// Integer symplectic matrices: the standard skew form, block access, diagonal
// SL(2,Z) embeddings, seeded random elements, and the two double-precision
// verifiers (automorphy-factor cocycle residual, fixed-point eigenvalue
// matching).  Everything exact lives upstream; this header is the only one
// that touches floating point, via Eigen.

#include "kuga/eigen_profile.hpp"
#include "kuga/matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kuga {

inline IMat j_matrix(int g) {
  IMat j(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    j.at(i, g + i) = -1;
    j.at(g + i, i) = 1;
  }
  return j;
}

inline bool is_symplectic(const IMat& m, int g) {
  if (m.rows != 2 * g || m.cols != 2 * g)
    throw std::invalid_argument("is_symplectic: matrix is not 2g x 2g");
  IMat j = j_matrix(g);
  return mat_mul(mat_mul(mat_transpose(m), j), m) == j;
}

// Block A (i.e. top-left), B, C, D of a 2g x 2g matrix.
inline IMat block_of(const IMat& m, int g, int br, int bc) {
  IMat b(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) b.at(i, j) = m.at(br * g + i, bc * g + j);
  return b;
}

// Diagonal embedding of an SL(2,Z) element into Sp(2g,Z): each block is the
// corresponding scalar times the identity.
inline IMat embed_sl2_diag(const Int& a, const Int& b, const Int& c, const Int& d, int g) {
  if (a * d - b * c != 1) throw std::invalid_argument("embed_sl2_diag: determinant must be 1");
  IMat m(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) {
    m.at(i, i) = a;
    m.at(i, g + i) = b;
    m.at(g + i, i) = c;
    m.at(g + i, g + i) = d;
  }
  return m;
}

using CMat = Eigen::MatrixXcd;

inline CMat scalar_tau(std::complex<double> t, int g) {
  CMat m = CMat::Zero(g, g);
  for (int i = 0; i < g; ++i) m(i, i) = t;
  return m;
}

// Seeded random Siegel point: X symmetric with quarter-integer entries,
// Y = I + A A^t / 4 (positive definite by construction).
inline CMat random_tau(int g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(-2, 2);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(g, g);
  Eigen::MatrixXd a(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) a(i, j) = small(rng) / 2.0;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      double v = small(rng) / 4.0;
      x(i, j) = v;
      x(j, i) = v;
    }
  Eigen::MatrixXd y =
      Eigen::MatrixXd::Identity(g, g) + 0.25 * (a * a.transpose());
  CMat tau(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) tau(i, j) = std::complex<double>(x(i, j), y(i, j));
  return tau;
}

// Finite-order SL(2,Z) elements with an explicit Siegel fixed point of the
// diagonal embedding (tau = tau0 * identity).
struct Sl2TorsionEntry {
  int order;
  Int a, b, c, d;
  std::complex<double> tau0;
};

inline std::vector<Sl2TorsionEntry> sl2_torsion_catalog() {
  const double h = std::sqrt(3.0) / 2.0;
  return {
      {2, Int(-1), Int(0), Int(0), Int(-1), {0.0, 1.0}},
      {3, Int(0), Int(-1), Int(1), Int(-1), {0.5, h}},
      {4, Int(0), Int(-1), Int(1), Int(0), {0.0, 1.0}},
      {6, Int(1), Int(-1), Int(1), Int(0), {0.5, h}},
  };
}

// Seeded random symplectic element: a short word in J, unipotent
// translations [[I,B],[0,I]] with B symmetric, and GL(g,Z) block
// embeddings [[U,0],[0,U^-t]] built from elementary operations.
inline IMat random_symplectic(int g, std::mt19937_64& rng, int max_word = 5) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> len(1, max_word);
  std::uniform_int_distribution<int> idx(0, g - 1);
  IMat m = IMat::identity(2 * g);
  int L = len(rng);
  for (int w = 0; w < L; ++w) {
    IMat f;
    switch (kind(rng)) {
      case 0:
        f = j_matrix(g);
        break;
      case 1: {
        f = IMat::identity(2 * g);
        IMat b(g, g);
        for (int i = 0; i < g; ++i)
          for (int j = i; j < g; ++j) {
            Int v = small(rng);
            b.at(i, j) = v;
            b.at(j, i) = v;
          }
        for (int i = 0; i < g; ++i)
          for (int j = 0; j < g; ++j) f.at(i, g + j) = b.at(i, j);
        break;
      }
      default: {
        // U = short product of elementary GL(g,Z) operations, with the exact
        // inverse tracked factor by factor
        IMat u = IMat::identity(g), uinv = IMat::identity(g);
        for (int o = 0; o < 2; ++o) {
          int which = kind(rng);
          if (which == 0 && g > 1) {
            int i = idx(rng), j = idx(rng);
            if (i == j) j = (j + 1) % g;
            IMat s = IMat::identity(g);
            s.at(i, i) = 0; s.at(j, j) = 0;
            s.at(i, j) = 1; s.at(j, i) = 1;
            u = mat_mul(u, s);
            uinv = mat_mul(s, uinv);
          } else if (which == 1 || g == 1) {
            int i = idx(rng);
            IMat s = IMat::identity(g);
            s.at(i, i) = -1;
            u = mat_mul(u, s);
            uinv = mat_mul(s, uinv);
          } else {
            int i = idx(rng), j = idx(rng);
            if (i == j) j = (j + 1) % g;
            Int v = small(rng);
            IMat s = IMat::identity(g), si = IMat::identity(g);
            s.at(i, j) = v;
            si.at(i, j) = -v;
            u = mat_mul(u, s);
            uinv = mat_mul(si, uinv);
          }
        }
        IMat uit = mat_transpose(uinv);
        f = IMat(2 * g, 2 * g);
        for (int i = 0; i < g; ++i)
          for (int j = 0; j < g; ++j) {
            f.at(i, j) = u.at(i, j);
            f.at(g + i, g + j) = uit.at(i, j);
          }
        break;
      }
    }
    m = mat_mul(m, f);
  }
  return m;
}

inline CMat to_complex(const IMat& m) {
  CMat c(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) c(i, j) = static_cast<double>(m.at(i, j));
  return c;
}

// J(gamma, tau) = C tau + D.
inline CMat automorphy_factor(const IMat& gamma, const CMat& tau) {
  int g = tau.rows();
  CMat c = to_complex(block_of(gamma, g, 1, 0));
  CMat d = to_complex(block_of(gamma, g, 1, 1));
  return c * tau + d;
}

// gamma . tau = (A tau + B)(C tau + D)^{-1}; throws when C tau + D is
// numerically singular.
inline CMat siegel_action(const IMat& gamma, const CMat& tau) {
  int g = tau.rows();
  CMat a = to_complex(block_of(gamma, g, 0, 0));
  CMat b = to_complex(block_of(gamma, g, 0, 1));
  CMat jf = automorphy_factor(gamma, tau);
  Eigen::FullPivLU<CMat> lu(jf);
  if (!lu.isInvertible())
    throw std::runtime_error("degenerate input: C tau + D is numerically singular");
  return (a * tau + b) * lu.inverse();
}

struct CocycleReport {
  bool pass = false;
  double residual = 0.0;
};

// Residual of J(b1 b2, tau) = J(b1, b2 tau) J(b2, tau) in the max norm.
inline CocycleReport cocycle_check(const IMat& b1, const IMat& b2, const CMat& tau, double tol) {
  CMat lhs = automorphy_factor(mat_mul(b1, b2), tau);
  CMat rhs = automorphy_factor(b1, siegel_action(b2, tau)) * automorphy_factor(b2, tau);
  double r = (lhs - rhs).cwiseAbs().maxCoeff();
  return {r <= tol, r};
}

struct FixedPointReport {
  bool matched = false;
  std::string splitting;        // "Lambda", "LambdaBar" or "mixed"
  bool has_nontrivial = false;  // some eigenvalue of C tau + D differs from 1
  double fixed_residual = 0.0;
  std::vector<std::complex<double>> j_eigenvalues;
};

namespace detail {

inline bool multiset_match(std::vector<std::complex<double>> got,
                           std::vector<std::complex<double>> want, double tol) {
  if (got.size() != want.size()) return false;
  std::vector<bool> used(want.size(), false);
  // greedy nearest matching; adequate for the well-separated catalog values
  for (const auto& v : got) {
    int best = -1;
    double bd = 0;
    for (size_t i = 0; i < want.size(); ++i) {
      if (used[i]) continue;
      double d = std::abs(v - want[i]);
      if (best < 0 || d < bd) { best = static_cast<int>(i); bd = d; }
    }
    if (best < 0 || bd > tol) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace detail

// Numeric check that the eigenvalues of C tau + D at a fixed point tau of a
// finite-order gamma agree with a conjugation-splitting of eigen_profile(gamma).
inline FixedPointReport fixed_point_eigen_check(const IMat& gamma, const CMat& tau, double tol) {
  int g = tau.rows();
  if (gamma.rows != 2 * g) throw std::invalid_argument("fixed_point_eigen_check: dimension mismatch");
  FixedPointReport rep;
  rep.fixed_residual = (siegel_action(gamma, tau) - tau).cwiseAbs().maxCoeff();
  if (rep.fixed_residual > tol)
    throw std::invalid_argument("fixed_point_eigen_check: tau is not fixed by gamma");

  EigenProfile prof = eigen_profile(gamma);  // throws when not finite order
  // conjugate-pair representatives: entries e <= 1/2, self-conjugate entries
  // split half and half (even multiplicity is automatic for symplectic gamma)
  std::vector<Rat> reps;
  {
    EigenProfile rest = prof;
    while (!rest.empty()) {
      Rat e = rest.front();
      rest.erase(rest.begin());
      Rat conj = frac1(-e);
      auto it = std::find(rest.begin(), rest.end(), conj);
      if (it == rest.end()) throw std::logic_error("profile not conjugation-closed");
      rest.erase(it);
      reps.push_back(e <= conj ? e : conj);
    }
  }
  if (static_cast<int>(reps.size()) != g) throw std::logic_error("splitting size mismatch");

  Eigen::ComplexEigenSolver<CMat> es(automorphy_factor(gamma, tau));
  std::vector<std::complex<double>> got;
  for (int i = 0; i < g; ++i) got.push_back(es.eigenvalues()(i));
  rep.j_eigenvalues = got;
  for (const auto& v : got)
    if (std::abs(v - std::complex<double>(1.0, 0.0)) > tol) rep.has_nontrivial = true;

  const double pi2 = 8.0 * std::atan(1.0);
  auto value = [&](const Rat& e, bool conj) {
    double th = pi2 * rat_double(e);
    return std::complex<double>(std::cos(th), conj ? -std::sin(th) : std::sin(th));
  };
  int npairs = static_cast<int>(reps.size());
  for (int mask = 0; mask < (1 << npairs); ++mask) {
    std::vector<std::complex<double>> want;
    for (int i = 0; i < npairs; ++i) want.push_back(value(reps[i], (mask >> i) & 1));
    if (detail::multiset_match(got, want, tol)) {
      rep.matched = true;
      rep.splitting = (mask == 0) ? "Lambda" : (mask == (1 << npairs) - 1 ? "LambdaBar" : "mixed");
      break;
    }
  }
  return rep;
}

}  // namespace kuga
