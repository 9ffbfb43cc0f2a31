#pragma once

// Generators shared by the unit tests and the acceptance binary.

#include <optional>
#include <vector>

#include "gaussforge/gaussforge.hpp"

namespace gftest {

using namespace gaussforge;

inline Scalar random_scalar(const FieldCtx& F, Rng& rng) {
  return F.from_ordinal_scalar(static_cast<std::uint32_t>(rng.below(F.order())));
}

inline Scalar random_nonzero(const FieldCtx& F, Rng& rng) {
  return F.from_ordinal_scalar(static_cast<std::uint32_t>(1 + rng.below(F.order() - 1)));
}

inline Vector random_vector(const FieldCtx& F, std::size_t n, Rng& rng) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(F, rng));
  return v;
}

inline Vector random_nonzero_vector(const FieldCtx& F, std::size_t n, Rng& rng) {
  while (true) {
    Vector v = random_vector(F, n, rng);
    for (const auto& s : v)
      if (!s.is_zero()) return v;
  }
}

inline Exponents random_monomial(std::size_t n, unsigned d, Rng& rng) {
  Exponents e(n, 0);
  for (unsigned i = 0; i < d; ++i) ++e[rng.below(n)];
  return e;
}

/// Random homogeneous polynomial of degree d with up to `terms` monomials.
/// When `pth_power_var` is set, that variable only occurs with exponents
/// divisible by p (so it is a strange direction).
inline MultiPoly random_form(const FieldCtx& F, std::size_t n, unsigned d, std::size_t terms, Rng& rng,
                             std::optional<std::size_t> pth_power_var = std::nullopt) {
  MultiPoly f(F, n);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e = random_monomial(n, d, rng);
    if (pth_power_var) {
      const std::size_t v = *pth_power_var;
      const unsigned keep = e[v] - e[v] % F.p();
      const unsigned moved = e[v] - keep;
      e[v] = keep;
      e[(v + 1) % n] += moved;
    }
    f.add_term(e, random_nonzero(F, rng));
  }
  return f;
}

/// Random invertible (n x n) matrix.
inline Matrix random_invertible(const FieldCtx& F, std::size_t n, Rng& rng) {
  while (true) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(random_vector(F, n, rng));
    Matrix m = Matrix::from_rows(F, n, rows);
    if (!m.determinant().is_zero()) return m;
  }
}

/// f(A Z) for square A, as a substitution map.
inline MultiPoly change_coordinates(const MultiPoly& f, const Matrix& a) {
  std::vector<Vector> map;
  for (std::size_t i = 0; i < a.rows(); ++i) map.push_back(a.row(i));
  return f.substitute_linear(map);
}

/// Solves A u = b for invertible A.
inline Vector solve(const Matrix& a, const Vector& b) {
  const std::size_t n = a.rows();
  const FieldCtx& F = a.field();
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vector r = a.row(i);
    r.push_back(b[i]);
    rows.push_back(r);
  }
  const Matrix k = Matrix::from_rows(F, n + 1, rows).kernel();
  for (const auto& v : k.row_vectors()) {
    if (v[n].is_zero()) continue;
    const Scalar s = -v[n].inv();
    Vector u;
    for (std::size_t i = 0; i < n; ++i) u.push_back(v[i] * s);
    return u;
  }
  throw Error("singular system");
}

/// Adjusts f by a multiple of Z_j^d so that it vanishes at x, using the
/// first j < limit with x_j != 0.  Returns nullopt when there is none.
inline std::optional<MultiPoly> through_point(MultiPoly f, const Vector& x, std::size_t limit) {
  std::size_t j = 0;
  while (j < limit && x[j].is_zero()) ++j;
  if (j == limit) return std::nullopt;
  Exponents e(f.num_vars(), 0);
  e[j] = static_cast<unsigned>(f.degree());
  const Scalar val = f.evaluate(x);
  f.add_term(e, -(val / x[j].pow(f.degree())));
  return f;
}

struct Case {
  MultiPoly f;
  ProjPoint x;
  std::optional<ProjPoint> special;  // strange point (Strange) or cone vertex (Cone)
};

enum class Family { Generic, Strange, Cone };

/// A random hypersurface through a chosen smooth point.  Strange and Cone
/// families build g with Z_last only in p-th powers (resp. absent), then hide
/// the special direction by f(Z) = g(A Z), whose special point is A^{-1} e_last.
inline Case random_case(const FieldCtx& F, std::size_t n, unsigned d, Family family, Rng& rng) {
  const std::size_t last = n - 1;
  while (true) {
    MultiPoly g(F, n);
    if (family == Family::Cone)
      g = random_form(F, n - 1, d, 2 + rng.below(5), rng).with_num_vars(n);
    else if (family == Family::Strange)
      g = random_form(F, n, d, 2 + rng.below(5), rng, last);
    else
      g = random_form(F, n, d, 2 + rng.below(6), rng);
    if (g.is_zero() || g.degree() != static_cast<int>(d)) continue;
    const Vector y = random_nonzero_vector(F, n, rng);
    auto adjusted = through_point(g, y, family == Family::Generic ? n : last);
    if (!adjusted || adjusted->is_zero() || !adjusted->is_homogeneous()) continue;
    const Matrix a = random_invertible(F, n, rng);
    const MultiPoly f = change_coordinates(*adjusted, a);
    const ProjPoint x(solve(a, y));
    const GaussMap gm(f);
    if (!gm.on_variety(x) || !gm.is_smooth(x)) continue;
    std::optional<ProjPoint> special;
    if (family != Family::Generic) {
      Vector e(n, F.zero());
      e[last] = F.one();
      special = ProjPoint(solve(a, e));
    }
    return Case{f, x, special};
  }
}

}  // namespace gftest
