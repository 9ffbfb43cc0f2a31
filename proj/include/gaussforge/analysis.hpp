#pragma once

// Whole-hypersurface analyses: strange locus, cone vertices, point and image
// counting over extension towers, separability, fibers grouped by the
// degeneracy plane, and the theorem checks built on top of them.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gaussforge/enumerate.hpp"
#include "gaussforge/error.hpp"
#include "gaussforge/gaussmap.hpp"
#include "gaussforge/gf.hpp"
#include "gaussforge/linproj.hpp"
#include "gaussforge/poly.hpp"
#include "gaussforge/random.hpp"

namespace gaussforge {

// ---- strange locus and cones ----

/// { v : sum_i v_i df/dZ_i == 0 as a polynomial }.  For an integral X this is
/// exactly the set of points lying in every embedded tangent space.
inline LinearSubspace strange_locus(const MultiPoly& f) {
  if (!f.is_homogeneous() || f.is_zero()) throw Error("strange locus needs a nonzero homogeneous polynomial");
  if (f.degree() < 2) throw Error("strange locus needs degree at least 2");
  const std::size_t n = f.num_vars();
  std::vector<MultiPoly> grad;
  std::map<Exponents, std::size_t, GradedLexGreater> monomials;
  for (std::size_t i = 0; i < n; ++i) {
    grad.push_back(f.partial_derivative(i));
    for (const auto& [e, c] : grad.back().terms()) monomials.emplace(e, 0);
  }
  std::size_t row = 0;
  for (auto& [e, idx] : monomials) idx = row++;
  Matrix m(f.field(), monomials.size(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [e, c] : grad[i].terms()) m(monomials.at(e), i) = c;
  return LinearSubspace::span(f.field(), n - 1, m.kernel().row_vectors());
}

/// Whether V(f) is a cone with vertex v, i.e. f(Z + t v) == f(Z).
inline bool cone_vertex_check(const MultiPoly& f, const ProjPoint& v) {
  if (v.size() != f.num_vars()) throw DimensionError("vertex has the wrong number of coordinates");
  if (!f.evaluate(v.coords()).is_zero()) return false;
  const std::size_t n = f.num_vars();
  const FieldCtx& F = f.field();
  std::vector<Vector> map(n, Vector(n + 1, F.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    map[i][i] = F.one();
    map[i][n] = v[i];
  }
  return f.substitute_linear(map) == f.with_num_vars(n + 1);
}

// ---- enumeration ----

/// Points of X over GF(p^(k*m)), chart by chart.
inline std::vector<ProjPoint> enumerate_points(const MultiPoly& f, unsigned m, const EnumerationOptions& opts = {}) {
  const MultiPoly g = extend_scalars(f, m);
  const CompiledPoly cf(g);
  const FieldCtx& F = g.field();
  const std::size_t n = g.num_vars();
  using Acc = std::vector<PointKey>;
  auto parts = enumerate_tasks<Acc>(F, n, opts, [] { return Acc{}; }, [&](Acc& acc, const Scalar::Rep* x) {
    if (cf(x) == 0) {
      PointKey k{};
      std::copy(x, x + n, k.begin());
      acc.push_back(k);
    }
  });
  std::vector<ProjPoint> out;
  for (const auto& part : parts)
    for (const auto& k : part) out.push_back(to_point(F, std::span<const Scalar::Rep>(k.data(), n)));
  return out;
}

inline std::uint64_t count_points(const MultiPoly& f, unsigned m, const EnumerationOptions& opts = {}) {
  const MultiPoly g = extend_scalars(f, m);
  const CompiledPoly cf(g);
  auto parts = enumerate_tasks<std::uint64_t>(g.field(), g.num_vars(), opts, [] { return std::uint64_t{0}; },
                                              [&](std::uint64_t& acc, const Scalar::Rep* x) { acc += cf(x) == 0; });
  std::uint64_t total = 0;
  for (auto c : parts) total += c;
  return total;
}

struct ImageLevel {
  unsigned ext;
  std::uint32_t order;
  std::uint64_t points;         // |X(F)|
  std::uint64_t smooth_points;  // gradient nonzero
  std::uint64_t image_size;     // |gamma(X(F))|
};

/// |gamma(X(F))| for one level, plus point counts.
inline ImageLevel image_level(const MultiPoly& f, unsigned m, const EnumerationOptions& opts) {
  const GaussMap gm(extend_scalars(f, m));
  const FieldCtx& F = gm.field();
  const std::size_t n = gm.num_vars();
  struct Acc {
    std::uint64_t points = 0, smooth = 0;
    std::unordered_set<PointKey, PointKeyHash> image;
  };
  const auto& cf = gm.compiled_f();
  const auto& cg = gm.compiled_gradient();
  auto parts = enumerate_tasks<Acc>(F, n, opts, [] { return Acc{}; }, [&](Acc& acc, const Scalar::Rep* x) {
    if (cf(x) != 0) return;
    ++acc.points;
    PointKey g{};
    for (std::size_t i = 0; i < n; ++i) g[i] = cg[i](x);
    if (!normalize_reps(F, g.data(), n)) return;
    ++acc.smooth;
    acc.image.insert(g);
  });
  ImageLevel level{m, F.order(), 0, 0, 0};
  std::unordered_set<PointKey, PointKeyHash> image;
  for (auto& part : parts) {
    level.points += part.points;
    level.smooth_points += part.smooth;
    image.insert(part.image.begin(), part.image.end());
  }
  level.image_size = image.size();
  return level;
}

struct ImageDimension {
  int estimate = -1;
  double slope = 0;  // unrounded log_q(c_top / c_prev)
  bool inconclusive = true;
  std::vector<ImageLevel> levels;
};

/// Cumulative enumeration cost of levels 1..m.
inline double image_cost(const MultiPoly& f, unsigned m) {
  double cost = 0;
  std::uint64_t q = f.field().order();
  std::uint64_t qm = 1;
  for (unsigned j = 1; j <= m; ++j) {
    qm *= q;
    cost += projective_point_count(qm, f.num_vars());
  }
  return cost;
}

/// Largest affordable tower height (0 if fewer than two levels fit).
inline unsigned auto_image_levels(const MultiPoly& f, double budget) {
  unsigned best = 0;
  for (unsigned m = 1; extension_supported(f.field(), m); ++m) {
    if (image_cost(f, m) > budget) break;
    best = m;
  }
  return best >= 2 ? best : 0;
}

/// Slope of log_q |gamma(X(F_{q^m}))| between the two top levels, rounded;
/// inconclusive when the unrounded slope is more than 0.25 from an integer.
inline ImageDimension image_dimension_estimate(const MultiPoly& f, unsigned m_max, const EnumerationOptions& opts = {}) {
  if (m_max < 2) throw Error("image dimension estimate needs at least two tower levels");
  for (unsigned m = 1; m <= m_max; ++m)
    if (!extension_supported(f.field(), m))
      throw Error("tower level " + std::to_string(m) + " exceeds the supported field sizes");
  check_budget(image_cost(f, m_max), opts.budget);
  ImageDimension out;
  for (unsigned m = 1; m <= m_max; ++m) out.levels.push_back(image_level(f, m, opts));
  const auto& top = out.levels[m_max - 1];
  const auto& prev = out.levels[m_max - 2];
  if (top.image_size == 0 || prev.image_size == 0) return out;
  out.slope = std::log(static_cast<double>(top.image_size) / static_cast<double>(prev.image_size)) /
              std::log(static_cast<double>(f.field().order()));
  out.estimate = static_cast<int>(std::lround(out.slope));
  out.inconclusive = std::abs(out.slope - out.estimate) > 0.25;
  return out;
}

// ---- separability ----

enum class Separability { Separable, Inseparable, Inconclusive };

inline const char* to_string(Separability s) {
  switch (s) {
    case Separability::Separable:
      return "separable";
    case Separability::Inseparable:
      return "inseparable";
    default:
      return "inconclusive";
  }
}

struct AnalysisConfig {
  std::size_t trials = 32;
  unsigned ext_bound = 4;
  unsigned m_max = 0;      // 0: tallest affordable tower
  unsigned fiber_ext = 0;  // 0: smallest m with p^(k m) >= 9
  std::size_t fiber_samples = 3;
  std::size_t strange_samples = 4;
  std::uint64_t seed = 1;
  double budget = 2e8;
  unsigned threads = 1;

  EnumerationOptions enumeration() const { return {threads, budget}; }
};

struct ConeCheck {
  ProjPoint vertex;
  bool is_cone;
};

struct VarietyReport {
  MultiPoly f;
  std::size_t ambient_dim;
  int n;
  GenericRankReport generic_rank;
  ImageDimension image;
  Separability separability;
  LinearSubspace strange_locus;
  std::vector<ConeCheck> cone_vertices;
  /// Strange for a point that is not a cone vertex, yet not found inseparable.
  bool strange_consistency_failure;
  unsigned m_max;
};

/// Basis points of a strange locus plus a few seeded random points of it.
inline std::vector<ProjPoint> strange_sample(const LinearSubspace& locus, std::size_t extra, Rng& rng) {
  std::set<ProjPoint> pts;
  const auto basis = locus.basis_vectors();
  for (const auto& b : basis) pts.insert(ProjPoint(b));
  if (basis.size() > 1) {
    const FieldCtx& F = locus.field();
    for (std::size_t s = 0; s < extra; ++s) {
      Vector v(locus.ambient_dim() + 1, F.zero());
      bool nonzero = false;
      for (const auto& b : basis) {
        const Scalar c = F.from_ordinal_scalar(static_cast<std::uint32_t>(rng.below(F.order())));
        if (c.is_zero()) continue;
        nonzero = true;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
      }
      if (nonzero) pts.insert(ProjPoint(v));
    }
  }
  return {pts.begin(), pts.end()};
}

inline VarietyReport separability_verdict(const MultiPoly& f, const AnalysisConfig& cfg) {
  if (!f.is_homogeneous() || f.degree() < 2) throw Error("analysis needs a homogeneous polynomial of degree at least 2");
  Rng rng(cfg.seed ^ 0x5bd1e995u);
  GenericRankReport rank = generic_rank(f, cfg.trials, cfg.ext_bound, cfg.seed);
  const unsigned m_max = cfg.m_max ? cfg.m_max : auto_image_levels(f, cfg.budget);
  if (m_max == 0) throw BudgetExceeded(image_cost(f, 2), cfg.budget);
  ImageDimension image = image_dimension_estimate(f, m_max, cfg.enumeration());
  LinearSubspace locus = strange_locus(f);
  std::vector<ConeCheck> cones;
  for (auto& v : strange_sample(locus, cfg.strange_samples, rng)) cones.push_back({v, cone_vertex_check(f, v)});

  Separability verdict = Separability::Inconclusive;
  if (!image.inconclusive && rank.rank >= 0) {
    if (rank.rank == image.estimate)
      verdict = Separability::Separable;
    else if (rank.rank < image.estimate)
      verdict = Separability::Inseparable;
  }
  const bool strange_non_cone = std::any_of(cones.begin(), cones.end(), [](const ConeCheck& c) { return !c.is_cone; });
  const bool failure = strange_non_cone && verdict == Separability::Separable;
  const auto N = f.num_vars() - 1;
  return VarietyReport{f,      N,     static_cast<int>(N) - 1, std::move(rank), std::move(image), verdict, std::move(locus),
                       std::move(cones), failure, m_max};
}

// ---- fibers ----

struct FiberGroup {
  LinearSubspace kappa_plane;
  std::vector<ProjPoint> points;
  bool all_on_plane;
  bool generic;        // every member has generic rank
  bool plane_dim_ok;   // dim = n - rank for generic members
  bool image_space_constant;
};

struct FiberReport {
  ProjPoint base;
  ProjPoint gamma;
  unsigned ext;
  const FieldCtx* field;
  std::vector<ProjPoint> fiber_points;     // smooth points with the same Gauss image
  std::vector<ProjPoint> singular_points;  // singular points of X inside the span of a group
  std::vector<FiberGroup> groups;
  std::optional<int> generic_rank;

  std::size_t closure_size() const { return fiber_points.size() + singular_points.size(); }
  std::vector<ProjPoint> closure_points() const {
    std::vector<ProjPoint> all = fiber_points;
    all.insert(all.end(), singular_points.begin(), singular_points.end());
    std::sort(all.begin(), all.end());
    return all;
  }
  bool groups_contained() const {
    return std::all_of(groups.begin(), groups.end(), [](const FiberGroup& g) { return g.all_on_plane; });
  }
};

/// Groups one fiber's smooth points by degeneracy plane and collects the
/// singular points of X lying in the span of each group.
inline FiberReport build_fiber_report(const GaussMap& gm, const ProjPoint& base, std::vector<ProjPoint> pts, unsigned ext,
                                      std::optional<int> generic, double budget) {
  std::sort(pts.begin(), pts.end());
  FiberReport rep{base, gm.gauss_image(base), ext, &gm.field(), std::move(pts), {}, {}, generic};
  std::map<LinearSubspace, std::vector<GaussPointData>> by_plane;
  for (const auto& x : rep.fiber_points) {
    GaussPointData d = gm.analyze(x, generic);
    auto key = d.kappa_plane;
    by_plane[key].push_back(std::move(d));
  }
  const int n = gm.variety_dim();
  std::set<ProjPoint> singular;
  for (auto& [plane, members] : by_plane) {
    FiberGroup g{plane, {}, true, true, true, true};
    for (const auto& d : members) {
      g.points.push_back(d.x);
      g.all_on_plane = g.all_on_plane && plane.contains(d.x);
      g.generic = g.generic && d.generic;
      if (d.generic) g.plane_dim_ok = g.plane_dim_ok && plane.dim() == n - d.rank;
      g.image_space_constant = g.image_space_constant && d.image_space == members.front().image_space;
    }
    const LinearSubspace hull = LinearSubspace::span(g.points);
    if (hull.affine_dim() > 1 && projective_point_count(gm.field().order(), hull.affine_dim()) <= budget) {
      for (const auto& y : hull.points())
        if (gm.on_variety(y) && !gm.is_smooth(y)) singular.insert(y);
    }
    rep.groups.push_back(std::move(g));
  }
  std::sort(rep.groups.begin(), rep.groups.end(), [](const FiberGroup& a, const FiberGroup& b) { return a.points.front() < b.points.front(); });
  rep.singular_points.assign(singular.begin(), singular.end());
  return rep;
}

/// Fibers over several base points (all on the same field as `gm`) in one
/// enumeration pass.
inline std::vector<FiberReport> fibers(const GaussMap& gm, const std::vector<ProjPoint>& bases, unsigned ext,
                                       std::optional<int> generic, const EnumerationOptions& opts) {
  const FieldCtx& F = gm.field();
  const std::size_t n = gm.num_vars();
  std::unordered_map<PointKey, std::vector<std::size_t>, PointKeyHash> targets;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const ProjPoint g = gm.gauss_image(bases[i]);
    PointKey k{};
    for (std::size_t j = 0; j < n; ++j) k[j] = g[j].rep();
    targets[k].push_back(i);
  }
  const auto& cf = gm.compiled_f();
  const auto& cg = gm.compiled_gradient();
  using Acc = std::vector<std::pair<PointKey, PointKey>>;  // (gamma, point)
  auto parts = enumerate_tasks<Acc>(F, n, opts, [] { return Acc{}; }, [&](Acc& acc, const Scalar::Rep* x) {
    if (cf(x) != 0) return;
    PointKey g{};
    for (std::size_t i = 0; i < n; ++i) g[i] = cg[i](x);
    if (!normalize_reps(F, g.data(), n)) return;
    if (targets.find(g) == targets.end()) return;
    PointKey p{};
    std::copy(x, x + n, p.begin());
    acc.emplace_back(g, p);
  });
  std::vector<std::vector<ProjPoint>> found(bases.size());
  for (const auto& part : parts)
    for (const auto& [g, p] : part)
      for (auto i : targets.at(g)) found[i].push_back(to_point(F, std::span<const Scalar::Rep>(p.data(), n)));
  std::vector<FiberReport> out;
  for (std::size_t i = 0; i < bases.size(); ++i)
    out.push_back(build_fiber_report(gm, bases[i], std::move(found[i]), ext, generic, opts.budget));
  return out;
}

/// Fiber of the Gauss map through x, over GF(p^(k*m)).  x may live on any
/// subfield of that field.
inline FiberReport fiber(const MultiPoly& f, const ProjPoint& x, unsigned m, const EnumerationOptions& opts = {},
                         std::optional<int> generic = std::nullopt) {
  const GaussMap gm(extend_scalars(f, m));
  const ProjPoint base = extend_scalars(x, gm.field());
  gm.checked_gradient(base);
  return std::move(fibers(gm, {base}, m, generic, opts).front());
}

/// All nonempty fibers of gamma on X(GF(p^(k*m))), keyed by Gauss image.
inline std::map<ProjPoint, std::vector<ProjPoint>> gauss_fibers(const MultiPoly& f, unsigned m, const EnumerationOptions& opts = {}) {
  const GaussMap gm(extend_scalars(f, m));
  const FieldCtx& F = gm.field();
  const std::size_t n = gm.num_vars();
  const auto& cf = gm.compiled_f();
  const auto& cg = gm.compiled_gradient();
  using Acc = std::vector<std::pair<PointKey, PointKey>>;
  auto parts = enumerate_tasks<Acc>(F, n, opts, [] { return Acc{}; }, [&](Acc& acc, const Scalar::Rep* x) {
    if (cf(x) != 0) return;
    PointKey g{};
    for (std::size_t i = 0; i < n; ++i) g[i] = cg[i](x);
    if (!normalize_reps(F, g.data(), n)) return;
    PointKey p{};
    std::copy(x, x + n, p.begin());
    acc.emplace_back(g, p);
  });
  std::map<ProjPoint, std::vector<ProjPoint>> out;
  for (const auto& part : parts)
    for (const auto& [g, p] : part)
      out[to_point(F, std::span<const Scalar::Rep>(g.data(), n))].push_back(to_point(F, std::span<const Scalar::Rep>(p.data(), n)));
  for (auto& [g, pts] : out) std::sort(pts.begin(), pts.end());
  return out;
}

/// Closed-form fiber of Z0^5 + Z1^5 - Z2^3 Z3^2 in characteristic 3 through
/// x = (1:a:b:c): for each 4th root of unity z,
///   c' = (z (b^3 c^2 - 1) + 1) / (b^3 c),  b'^3 = b^6 c^2 / (z (b^3 c^2 - 1) + 1),
/// and the fiber point is (1 : a z : b' : c').
inline std::vector<ProjPoint> closed_form_fiber_ex32(const MultiPoly& f, const ProjPoint& x) {
  const FieldCtx& F = x.field();
  if (F.p() != 3) throw Error("closed-form fiber is specific to characteristic 3");
  if (&f.field() != &F || !(f == parse_poly("Z0^5 + Z1^5 - Z2^3*Z3^2", F, 4)))
    throw Error("closed-form fiber applies only to Z0^5 + Z1^5 - Z2^3*Z3^2 over the point's field");
  if (!f.evaluate(x.coords()).is_zero()) throw PointError(PointError::Kind::NotOnVariety, "point is not on the surface");
  if (!x[0].is_one()) throw Error("closed-form fiber needs Z0 != 0");
  const Scalar a = x[1], b = x[2], c = x[3];
  if (a.is_zero() || b.is_zero() || c.is_zero()) throw Error("closed-form fiber needs a, b, c nonzero");
  const auto roots = nth_roots(F.one(), 4);
  if (roots.size() != 4) throw Error("the field " + F.name() + " lacks the 4th roots of unity");
  const Scalar b3 = b.pow(3);
  const Scalar s = b3 * c * c - F.one();
  std::vector<ProjPoint> out;
  for (const auto& z : roots) {
    const Scalar den = z * s + F.one();
    if (den.is_zero()) throw Error("zero denominator: base point is not general");
    const Scalar c1 = den / (b3 * c);
    const Scalar b1cube = b3 * b3 * c * c / den;
    const auto b1 = nth_roots(b1cube, 3);
    out.emplace_back(Vector{F.one(), a * z, b1.front(), c1});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- theorem checks ----

enum class CheckStatus { Pass, Fail, NotApplicable };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    default:
      return "n/a";
  }
}

struct TheoremCheck {
  std::string id;
  std::string description;
  CheckStatus status;
  std::string detail;
  std::vector<std::string> witnesses;
};

struct TheoremReport {
  VarietyReport variety;
  unsigned fiber_ext;
  std::vector<FiberReport> fibers;
  std::vector<TheoremCheck> checks;

  bool all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.status == CheckStatus::Fail; });
  }
};

inline unsigned auto_fiber_ext(const FieldCtx& F) {
  for (unsigned m = 1; extension_supported(F, m); ++m) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < F.k() * m; ++i) q *= F.p();
    if (q >= 9) return m;
  }
  return 1;
}

inline TheoremReport verify_theorems(const MultiPoly& f, const AnalysisConfig& cfg) {
  VarietyReport variety = separability_verdict(f, cfg);
  const int rank = variety.generic_rank.rank;
  std::vector<TheoremCheck> checks;

  // T2a: the strange locus lies in kappa(x) at every sampled generic point.
  {
    TheoremCheck c{"T2a", "strange locus contained in kappa(x) at sampled smooth points", CheckStatus::NotApplicable, "", {}};
    if (!variety.strange_locus.empty()) {
      std::size_t checked = 0;
      for (const auto& [m, x] : variety.generic_rank.samples) {
        const GaussMap gm(extend_scalars(f, m));
        const GaussPointData d = gm.analyze(x, rank);
        if (!d.generic) continue;
        const FieldEmbedding emb(f.field(), gm.field());
        ++checked;
        for (const auto& v : variety.strange_locus.basis_vectors()) {
          Vector lifted;
          for (const auto& s : v) lifted.push_back(emb(s));
          if (!d.kappa_plane.contains(lifted))
            c.witnesses.push_back("x=" + x.to_string() + " v=" + ProjPoint(lifted).to_string());
        }
      }
      c.status = c.witnesses.empty() ? CheckStatus::Pass : CheckStatus::Fail;
      c.detail = std::to_string(checked) + " generic points checked";
    }
    checks.push_back(std::move(c));
  }

  // T2b: strange for a non-vertex point forces inseparability.
  {
    TheoremCheck c{"T2b", "strange for a non-vertex point implies inseparable", CheckStatus::NotApplicable, "", {}};
    for (const auto& cv : variety.cone_vertices)
      if (!cv.is_cone) c.witnesses.push_back("v=" + cv.vertex.to_string() + " is not a cone vertex");
    if (!c.witnesses.empty()) {
      c.status = variety.separability == Separability::Inseparable ? CheckStatus::Pass : CheckStatus::Fail;
      c.detail = std::string("verdict ") + to_string(variety.separability);
      if (c.status == CheckStatus::Pass) c.witnesses.clear();
    }
    checks.push_back(std::move(c));
  }

  // Fibers through sampled generic points.
  const unsigned fext = cfg.fiber_ext ? cfg.fiber_ext : auto_fiber_ext(f.field());
  const GaussMap gm(extend_scalars(f, fext));
  Rng rng(cfg.seed + 0x9e3779b9u);
  std::vector<ProjPoint> bases;
  {
    const std::uint64_t attempts = std::max<std::uint64_t>(4096, 64ull * gm.field().order()) * std::max<std::size_t>(cfg.fiber_samples, 1);
    std::set<ProjPoint> seen;
    for (std::size_t round = 0; round < 16 && bases.size() < cfg.fiber_samples; ++round) {
      for (auto& x : sample_smooth_points(gm, cfg.fiber_samples, rng, attempts)) {
        if (bases.size() >= cfg.fiber_samples) break;
        if (gm.rank(x) != rank || !seen.insert(x).second) continue;
        // off the coordinate hyperplanes when the field allows it
        const bool on_hyperplane = std::any_of(x.coords().begin(), x.coords().end(), [](const Scalar& s) { return s.is_zero(); });
        if (on_hyperplane && round < 8) continue;
        bases.push_back(std::move(x));
      }
    }
  }
  std::vector<FiberReport> fibs = fibers(gm, bases, fext, rank, cfg.enumeration());

  // T1: each smooth fiber point lies on its group's kappa plane, of dimension n - rank.
  {
    TheoremCheck c{"T1", "fiber points grouped by kappa lie on the group plane", CheckStatus::NotApplicable, "", {}};
    if (!fibs.empty()) {
      std::string sizes;
      for (const auto& fr : fibs) {
        if (!sizes.empty()) sizes += ',';
        sizes += std::to_string(fr.groups.size());
        for (const auto& g : fr.groups)
          if (!g.all_on_plane || !g.plane_dim_ok)
            c.witnesses.push_back("base " + fr.base.to_string() + " group at " + g.points.front().to_string());
      }
      c.status = c.witnesses.empty() ? CheckStatus::Pass : CheckStatus::Fail;
      c.detail = std::to_string(fibs.size()) + " fibers, kappa groups per fiber: " + sizes;
    }
    checks.push_back(std::move(c));
  }

  // S: separable maps have fibers inside the single plane kappa(x).
  {
    TheoremCheck c{"S", "separable: fiber contained in kappa of the base point", CheckStatus::NotApplicable, "", {}};
    if (variety.separability == Separability::Separable) {
      for (const auto& fr : fibs) {
        const LinearSubspace k = gm.kappa(fr.base);
        for (const auto& y : fr.fiber_points)
          if (!k.contains(y)) c.witnesses.push_back("base " + fr.base.to_string() + " point " + y.to_string());
      }
      c.status = c.witnesses.empty() ? CheckStatus::Pass : CheckStatus::Fail;
      c.detail = std::to_string(fibs.size()) + " fibers checked";
    }
    checks.push_back(std::move(c));
  }

  return TheoremReport{std::move(variety), fext, std::move(fibs), std::move(checks)};
}

}  // namespace gaussforge
