#pragma once

// Per-point Gauss map of a hypersurface X = V(f) in P^N.
//
// All quantities live on the affine cone.  With g = grad f(x) and H the
// Hessian at x, the tangent cone is T = ker(g . ), the differential of the
// Gauss map is induced by u -> H u modulo <g>, and the degeneracy plane is the
// projectivization of W = { u in T : H u in <g> }.  Euler's identity
// H x = (d-1) g keeps all of this independent of the representative of x.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaussforge/error.hpp"
#include "gaussforge/gf.hpp"
#include "gaussforge/linproj.hpp"
#include "gaussforge/poly.hpp"
#include "gaussforge/random.hpp"

namespace gaussforge {

struct Differential {
  Matrix hessian;        // (N+1) x (N+1)
  Matrix tangent_basis;  // N rows spanning the tangent cone
  Matrix matrix;         // (N+1) x N, column i = H * tangent_basis[i]
  int rank;              // dim((H T + <g>) / <g>)
  LinearSubspace image;  // H T + <g>, a subspace of the dual space
};

struct GaussPointData {
  ProjPoint x;
  ProjPoint gamma;
  LinearSubspace tangent;
  Matrix hessian;
  Matrix differential;
  int rank;
  LinearSubspace image_space;
  LinearSubspace kappa_plane;
  bool generic;
};

class GaussMap {
 public:
  explicit GaussMap(MultiPoly f) : f_(std::move(f)) {
    if (!f_.is_homogeneous()) throw Error("the Gauss map needs a homogeneous polynomial");
    if (f_.degree() < 1) throw Error("the Gauss map needs a polynomial of positive degree");
    if (f_.num_vars() < 2) throw DimensionError("need at least two variables");
    const std::size_t n = f_.num_vars();
    for (std::size_t i = 0; i < n; ++i) grad_.push_back(f_.partial_derivative(i));
    second_.assign(n, std::vector<MultiPoly>());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        second_[i].push_back(j < i ? second_[j][i] : grad_[i].partial_derivative(j));
    compiled_f_ = CompiledPoly(f_);
    for (const auto& g : grad_) compiled_grad_.emplace_back(g);
  }

  const MultiPoly& polynomial() const noexcept { return f_; }
  const FieldCtx& field() const noexcept { return f_.field(); }
  std::size_t num_vars() const noexcept { return f_.num_vars(); }
  std::size_t ambient_dim() const noexcept { return f_.num_vars() - 1; }
  /// dim X = N - 1.
  int variety_dim() const noexcept { return static_cast<int>(f_.num_vars()) - 2; }
  const std::vector<MultiPoly>& gradient_polys() const noexcept { return grad_; }
  const CompiledPoly& compiled_f() const noexcept { return compiled_f_; }
  const std::vector<CompiledPoly>& compiled_gradient() const noexcept { return compiled_grad_; }

  Vector gradient(std::span<const Scalar> x) const {
    Vector g;
    g.reserve(grad_.size());
    for (const auto& p : grad_) g.push_back(p.evaluate(x));
    return g;
  }

  Matrix hessian(std::span<const Scalar> x) const {
    const std::size_t n = num_vars();
    Matrix h(field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) h(i, j) = h(j, i) = second_[i][j].evaluate(x);
    return h;
  }

  bool on_variety(const ProjPoint& x) const {
    check_field(x);
    return f_.evaluate(x.coords()).is_zero();
  }

  bool is_smooth(const ProjPoint& x) const {
    const Vector g = gradient(x.coords());
    return std::any_of(g.begin(), g.end(), [](const Scalar& s) { return !s.is_zero(); });
  }

  /// Gradient at x after checking that x is a smooth point of X.
  Vector checked_gradient(const ProjPoint& x) const {
    check_field(x);
    if (!f_.evaluate(x.coords()).is_zero())
      throw PointError(PointError::Kind::NotOnVariety, "point " + x.to_string() + " is not on the hypersurface");
    Vector g = gradient(x.coords());
    if (std::all_of(g.begin(), g.end(), [](const Scalar& s) { return s.is_zero(); }))
      throw PointError(PointError::Kind::Singular, "singular point " + x.to_string() + ": the gradient vanishes");
    return g;
  }

  ProjPoint gauss_image(const ProjPoint& x) const { return ProjPoint(checked_gradient(x)); }

  LinearSubspace tangent_space(const ProjPoint& x) const { return LinearSubspace::hyperplane(checked_gradient(x)); }

  Differential differential(const ProjPoint& x) const {
    const Vector g = checked_gradient(x);
    return differential_from(x, g);
  }

  int rank(const ProjPoint& x) const { return differential(x).rank; }

  LinearSubspace kappa(const ProjPoint& x) const {
    const Vector g = checked_gradient(x);
    return kappa_from(differential_from(x, g), g);
  }

  /// Full per-point bundle.  `generic_rank`, when known, sets the generic flag.
  GaussPointData analyze(const ProjPoint& x, std::optional<int> generic_rank = std::nullopt) const {
    const Vector g = checked_gradient(x);
    Differential d = differential_from(x, g);
    LinearSubspace kp = kappa_from(d, g);
    const int r = d.rank;
    return GaussPointData{x,
                          ProjPoint(g),
                          LinearSubspace::hyperplane(g),
                          std::move(d.hessian),
                          std::move(d.matrix),
                          r,
                          std::move(d.image),
                          std::move(kp),
                          !generic_rank || *generic_rank == r};
  }

 private:
  void check_field(const ProjPoint& x) const {
    if (x.size() != num_vars())
      throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(num_vars()));
    if (&x.field() != &field()) throw FieldError("point and polynomial live over different fields");
  }

  Differential differential_from(const ProjPoint& x, const Vector& g) const {
    const std::size_t n = num_vars();
    Matrix h = hessian(x.coords());
    Matrix tangent = Matrix::from_rows(field(), n, {g}).kernel();  // N rows
    Matrix d = h * tangent.transpose();
    std::vector<Vector> cols = d.transpose().row_vectors();
    cols.push_back(g);
    LinearSubspace image = LinearSubspace::span(field(), n - 1, cols);
    const int r = static_cast<int>(image.affine_dim()) - 1;
    return Differential{std::move(h), std::move(tangent), std::move(d), r, std::move(image)};
  }

  LinearSubspace kappa_from(const Differential& d, const Vector& g) const {
    const std::size_t n = num_vars();
    const std::size_t t = d.tangent_basis.rows();
    // [H T | g] (c, lambda) = 0  <=>  H (sum c_i t_i) = -lambda g
    Matrix a(field(), n, t + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < t; ++j) a(i, j) = d.matrix(i, j);
      a(i, t) = g[i];
    }
    const Matrix ker = a.kernel();
    std::vector<Vector> w;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
      Vector u(n, field().zero());
      for (std::size_t j = 0; j < t; ++j) {
        const Scalar c = ker(r, j);
        if (c.is_zero()) continue;
        for (std::size_t i = 0; i < n; ++i) u[i] += c * d.tangent_basis(j, i);
      }
      w.push_back(std::move(u));
    }
    return LinearSubspace::span(field(), n - 1, w);
  }

  MultiPoly f_;
  std::vector<MultiPoly> grad_;
  std::vector<std::vector<MultiPoly>> second_;
  CompiledPoly compiled_f_;
  std::vector<CompiledPoly> compiled_grad_;
};

// Free-function forms.
inline ProjPoint gauss_image(const MultiPoly& f, const ProjPoint& x) { return GaussMap(f).gauss_image(x); }
inline LinearSubspace tangent_space(const MultiPoly& f, const ProjPoint& x) { return GaussMap(f).tangent_space(x); }
inline Differential gauss_differential(const MultiPoly& f, const ProjPoint& x) { return GaussMap(f).differential(x); }
inline LinearSubspace kappa(const MultiPoly& f, const ProjPoint& x) { return GaussMap(f).kappa(x); }

// ---- extension towers ----

/// f with coefficients moved to GF(p^(k*m)).
inline MultiPoly extend_scalars(const MultiPoly& f, unsigned m) {
  const FieldCtx& base = f.field();
  const FieldCtx& big = FieldCtx::get(base.p(), base.k() * m);
  if (&big == &base) return f;
  return f.embed(FieldEmbedding(base, big));
}

inline ProjPoint extend_scalars(const ProjPoint& x, const FieldCtx& big) {
  if (&x.field() == &big) return x;
  FieldEmbedding emb(x.field(), big);
  Vector v;
  for (const auto& c : x.coords()) v.push_back(emb(c));
  return ProjPoint(std::move(v));
}

/// Whether GF(p^(k*m)) is within the supported field sizes.
inline bool extension_supported(const FieldCtx& base, unsigned m) {
  const unsigned k = base.k() * m;
  if (k > FieldCtx::kMaxDegree) return false;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) q *= base.p();
  return q <= FieldCtx::kMaxOrder;
}

// ---- sampling ----

/// Uniform point of P^(n-1)(F): uniform nonzero vector, then normalized.
inline std::vector<Scalar::Rep> random_point_reps(const FieldCtx& F, std::size_t n, Rng& rng) {
  std::vector<Scalar::Rep> v(n);
  while (true) {
    bool nonzero = false;
    for (auto& c : v) {
      c = F.from_ordinal(static_cast<std::uint32_t>(rng.below(F.order())));
      nonzero |= c != 0;
    }
    if (nonzero) return v;
  }
}

inline ProjPoint to_point(const FieldCtx& F, std::span<const Scalar::Rep> reps) {
  Vector v;
  v.reserve(reps.size());
  for (auto r : reps) v.emplace_back(F, r);
  return ProjPoint(std::move(v));
}

/// Rejection-samples up to `count` smooth points of X over the field of `gm`.
inline std::vector<ProjPoint> sample_smooth_points(const GaussMap& gm, std::size_t count, Rng& rng, std::uint64_t max_attempts) {
  std::vector<ProjPoint> out;
  const FieldCtx& F = gm.field();
  const std::size_t n = gm.num_vars();
  for (std::uint64_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    const auto v = random_point_reps(F, n, rng);
    if (gm.compiled_f()(v.data()) != 0) continue;
    bool smooth = false;
    for (const auto& g : gm.compiled_gradient())
      if (g(v.data()) != 0) {
        smooth = true;
        break;
      }
    if (smooth) out.push_back(to_point(F, v));
  }
  return out;
}

struct RankLevel {
  unsigned ext;  // extension multiplier m, field GF(p^(k*m))
  std::uint32_t order;
  std::size_t smooth_samples;
  int max_rank;  // -1 when no smooth point was found
};

struct GenericRankReport {
  int rank = -1;
  std::vector<RankLevel> levels;
  std::size_t total_samples = 0;
  /// Sampled smooth points with their extension multiplier.
  std::vector<std::pair<unsigned, ProjPoint>> samples;
};

/// Maximum of rk d_x(gamma) over sampled smooth points of X(GF(p^(k*m))),
/// m = 1..extension_bound (unsupported levels are skipped).
inline GenericRankReport generic_rank(const MultiPoly& f, std::size_t trials, unsigned extension_bound, std::uint64_t seed) {
  GenericRankReport rep;
  Rng rng(seed);
  for (unsigned m = 1; m <= extension_bound; ++m) {
    if (!extension_supported(f.field(), m)) break;
    GaussMap gm(extend_scalars(f, m));
    const std::uint64_t budget = std::max<std::uint64_t>(4096, 64ull * gm.field().order()) * std::max<std::size_t>(trials, 1);
    auto pts = sample_smooth_points(gm, trials, rng, budget);
    RankLevel level{m, gm.field().order(), pts.size(), -1};
    for (auto& x : pts) {
      level.max_rank = std::max(level.max_rank, gm.rank(x));
      rep.samples.emplace_back(m, std::move(x));
    }
    rep.rank = std::max(rep.rank, level.max_rank);
    rep.total_samples += level.smooth_samples;
    rep.levels.push_back(level);
  }
  if (rep.total_samples == 0) throw Error("no smooth point found within the sampling budget");
  return rep;
}

}  // namespace gaussforge
