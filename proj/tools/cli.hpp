#pragma once

// Command-line front end: analyze | fiber | kappa | strange | verify.
//
// Exit codes: 0 success, 1 a requested check failed, 2 operational error
// (bad input, singular point, budget exceeded, ...).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gaussforge/gaussforge.hpp"
#include "gaussforge/report.hpp"

namespace gaussforge::cli {

struct RunConfig {
  unsigned p = 3;
  unsigned k = 1;
  std::size_t N = 0;
  std::string poly;
  std::string poly_file;
  std::string point;
  unsigned ext = 0;
  std::size_t trials = 32;
  unsigned ext_bound = 4;
  unsigned fiber_ext = 0;
  std::size_t fiber_samples = 3;
  std::uint64_t seed = 1;
  std::optional<double> budget;
  unsigned threads = 1;
  std::string format = "text";
  std::string output;
};

inline constexpr double kDefaultBudget = 2e8;

inline double resolve_budget(const RunConfig& rc) {
  if (rc.budget) return *rc.budget;
  if (const char* env = std::getenv("GAUSSFORGE_BUDGET")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw Error(std::string("GAUSSFORGE_BUDGET is not a number: ") + env);
    }
  }
  return kDefaultBudget;
}

inline AnalysisConfig analysis_config(const RunConfig& rc) {
  AnalysisConfig c;
  c.trials = rc.trials;
  c.ext_bound = rc.ext_bound;
  c.m_max = rc.ext;
  c.fiber_ext = rc.fiber_ext;
  c.fiber_samples = rc.fiber_samples;
  c.seed = rc.seed;
  c.budget = resolve_budget(rc);
  c.threads = rc.threads;
  return c;
}

inline MultiPoly load_poly(const RunConfig& rc, const FieldCtx& F) {
  if (rc.N == 0) throw Error("the ambient dimension -N is required");
  if (rc.N + 1 > kMaxVars) throw Error("ambient dimension " + std::to_string(rc.N) + " exceeds " + std::to_string(kMaxVars - 1));
  std::string text = rc.poly;
  if (!rc.poly_file.empty()) {
    std::ifstream in(rc.poly_file);
    if (!in) throw Error("cannot read polynomial file " + rc.poly_file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty()) throw Error("no polynomial given (use -f or --poly-file)");
  return parse_poly(text, F, rc.N + 1, true);
}

inline ProjPoint load_point(const RunConfig& rc, const FieldCtx& F) {
  if (rc.point.empty()) throw Error("--point is required");
  auto coords = parse_scalar_list(rc.point, F);
  if (coords.size() != rc.N + 1)
    throw Error("point has " + std::to_string(coords.size()) + " coordinates, expected " + std::to_string(rc.N + 1));
  return ProjPoint(std::move(coords));
}

// ---- text renderings ----

inline void text_variety(std::ostream& os, const VarietyReport& v) {
  os << "polynomial:      " << v.f.to_string() << "  over " << v.f.field().name() << "\n";
  os << "dimension:       n = " << v.n << " in P^" << v.ambient_dim << "\n";
  os << "generic rank:    " << v.generic_rank.rank << " (" << v.generic_rank.total_samples << " smooth samples)\n";
  os << "image dimension: " << v.image.estimate << " (slope " << v.image.slope << (v.image.inconclusive ? ", inconclusive" : "")
     << "; counts";
  for (const auto& l : v.image.levels) os << " q=" << l.order << ":" << l.image_size;
  os << ")\n";
  os << "separability:    " << to_string(v.separability) << "\n";
  os << "strange locus:   ";
  if (v.strange_locus.empty()) {
    os << "empty\n";
  } else {
    os << "dim " << v.strange_locus.dim() << ", spanned by";
    for (const auto& b : v.strange_locus.basis_vectors()) os << " " << ProjPoint(b).to_string();
    os << "\n";
  }
  for (const auto& c : v.cone_vertices)
    os << "  vertex test " << c.vertex.to_string() << ": " << (c.is_cone ? "cone" : "not a cone") << "\n";
  if (v.strange_consistency_failure) os << "FAILURE: strange for a non-vertex point but not found inseparable\n";
}

inline void text_fiber(std::ostream& os, const FiberReport& r) {
  os << "base point " << r.base.to_string() << ", gamma " << r.gamma.to_string() << " over " << r.field->name() << "\n";
  os << "fiber: " << r.closure_size() << " points (" << r.fiber_points.size() << " smooth, " << r.singular_points.size()
     << " singular), " << r.groups.size() << " kappa-group" << (r.groups.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < r.groups.size(); ++i) {
    const auto& g = r.groups[i];
    os << "  group " << i << ": " << g.points.size() << " point(s), kappa plane dim " << g.kappa_plane.dim()
       << (g.all_on_plane ? ", all on plane" : ", NOT all on plane") << "\n";
    for (const auto& x : g.points) os << "    " << x.to_string() << "\n";
  }
  for (const auto& s : r.singular_points) os << "  singular " << s.to_string() << "\n";
}

inline void text_point(std::ostream& os, const GaussPointData& d) {
  os << "x:       " << d.x.to_string() << "\n";
  os << "gamma:   " << d.gamma.to_string() << "\n";
  os << "rank:    " << d.rank << (d.generic ? " (generic)" : " (non-generic)") << "\n";
  os << "kappa:   dim " << d.kappa_plane.dim() << ", spanned by";
  for (const auto& b : d.kappa_plane.basis_vectors()) os << " " << ProjPoint(b).to_string();
  os << "\n";
}

// ---- commands ----

inline int emit(const RunConfig& rc, std::ostream& out, const report::Json& j, const std::string& text) {
  const std::string body = rc.format == "json" ? j.dump(2) + "\n" : text;
  if (!rc.output.empty()) {
    std::ofstream f(rc.output);
    if (!f) throw Error("cannot write " + rc.output);
    f << body;
  } else {
    out << body;
  }
  return 0;
}

inline int cmd_analyze(const RunConfig& rc, std::ostream& out) {
  const FieldCtx& F = field_create(rc.p, rc.k);
  const MultiPoly f = load_poly(rc, F);
  const AnalysisConfig cfg = analysis_config(rc);
  const VarietyReport v = separability_verdict(f, cfg);
  std::ostringstream txt;
  text_variety(txt, v);
  emit(rc, out, report::variety_json(v, cfg), txt.str());
  return v.strange_consistency_failure ? 1 : 0;
}

inline int cmd_fiber(const RunConfig& rc, std::ostream& out) {
  const FieldCtx& F = field_create(rc.p, rc.k);
  const MultiPoly f = load_poly(rc, F);
  const ProjPoint x = load_point(rc, F);
  const AnalysisConfig cfg = analysis_config(rc);
  const unsigned m = rc.ext ? rc.ext : 1;
  const int rank = generic_rank(f, cfg.trials, cfg.ext_bound, cfg.seed).rank;
  const FiberReport r = fiber(f, x, m, cfg.enumeration(), rank);
  std::ostringstream txt;
  text_fiber(txt, r);
  return emit(rc, out, report::fiber_json(r), txt.str());
}

inline int cmd_kappa(const RunConfig& rc, std::ostream& out) {
  const FieldCtx& F = field_create(rc.p, rc.k);
  const MultiPoly f = load_poly(rc, F);
  const ProjPoint x = load_point(rc, F);
  const AnalysisConfig cfg = analysis_config(rc);
  const GaussMap gm(f);
  gm.checked_gradient(x);
  const int rank = generic_rank(f, cfg.trials, cfg.ext_bound, cfg.seed).rank;
  const GaussPointData d = gm.analyze(x, rank);
  std::ostringstream txt;
  text_point(txt, d);
  return emit(rc, out, report::point_report(d), txt.str());
}

inline int cmd_strange(const RunConfig& rc, std::ostream& out) {
  const FieldCtx& F = field_create(rc.p, rc.k);
  const MultiPoly f = load_poly(rc, F);
  const LinearSubspace locus = strange_locus(f);
  Rng rng(rc.seed ^ 0x5bd1e995u);
  report::Json cones = report::Json::array();
  std::ostringstream txt;
  txt << "strange locus: " << (locus.empty() ? "empty" : "dim " + std::to_string(locus.dim())) << "\n";
  for (const auto& v : strange_sample(locus, 4, rng)) {
    const bool cone = cone_vertex_check(f, v);
    cones.push_back(report::Json{{"v", report::to_json(v)}, {"is_cone", cone}});
    txt << "  " << v.to_string() << ": " << (cone ? "cone vertex" : "not a cone vertex") << "\n";
  }
  report::Json j{{"schema", report::kSchema}, {"f", f.to_string()}, {"strange_locus", report::to_json(locus)}, {"cone_vertices", cones}};
  return emit(rc, out, j, txt.str());
}

inline int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const FieldCtx& F = field_create(rc.p, rc.k);
  const MultiPoly f = load_poly(rc, F);
  const AnalysisConfig cfg = analysis_config(rc);
  const TheoremReport t = verify_theorems(f, cfg);
  std::ostringstream txt;
  text_variety(txt, t.variety);
  for (const auto& fr : t.fibers) text_fiber(txt, fr);
  for (const auto& c : t.checks) {
    txt << "[" << to_string(c.status) << "] " << c.id << ": " << c.description;
    if (!c.detail.empty()) txt << " (" << c.detail << ")";
    txt << "\n";
    for (const auto& w : c.witnesses) txt << "    witness: " << w << "\n";
  }
  emit(rc, out, report::theorem_json(t, cfg), txt.str());
  return t.all_passed() ? 0 : 1;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss maps of hypersurfaces over finite fields", "gaussforge"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&](CLI::App* sub, bool needs_point) {
    sub->add_option("-p", rc.p, "characteristic (odd prime)")->default_val(3);
    sub->add_option("-k", rc.k, "extension degree of the base field")->default_val(1);
    sub->add_option("-N", rc.N, "ambient projective dimension")->required();
    auto* inline_poly = sub->add_option("-f,--poly", rc.poly, "homogeneous polynomial in Z0..ZN");
    auto* file_poly = sub->add_option("--poly-file", rc.poly_file, "file holding the polynomial");
    inline_poly->excludes(file_poly);
    auto* pt = sub->add_option("--point", rc.point, "comma-separated coordinates, e.g. 1,1,1,1,1 or [0,1],1,...");
    if (needs_point) pt->required();
    sub->add_option("-m,--ext", rc.ext, "fiber: extension multiplier; analyze/verify: tower height for image counts");
    sub->add_option("--trials", rc.trials, "smooth samples per tower level")->default_val(32);
    sub->add_option("--ext-bound", rc.ext_bound, "tower levels sampled for the generic rank")->default_val(4);
    sub->add_option("--fiber-ext", rc.fiber_ext, "verify: extension multiplier for fibers (0 = auto)")->default_val(0);
    sub->add_option("--fiber-samples", rc.fiber_samples, "verify: number of fibers")->default_val(3);
    sub->add_option("--seed", rc.seed, "RNG seed")->default_val(1);
    sub->add_option("--budget", rc.budget, "work cap in polynomial evaluations (default 2e8 or $GAUSSFORGE_BUDGET)");
    sub->add_option("--threads", rc.threads, "enumeration worker threads (0 = hardware)")->default_val(1);
    sub->add_option("--format", rc.format, "output format")->check(CLI::IsMember({"text", "json"}))->default_val("text");
    sub->add_option("-o", rc.output, "write the report to a file");
  };

  auto* analyze = app.add_subcommand("analyze", "rank, image dimension, strange locus and separability");
  auto* fib = app.add_subcommand("fiber", "Gauss fiber through a point, grouped by kappa plane");
  auto* kap = app.add_subcommand("kappa", "per-point report: gamma, tangent, rank, kappa");
  auto* str = app.add_subcommand("strange", "strange locus and cone-vertex tests");
  auto* ver = app.add_subcommand("verify", "theorem checks on sampled points and fibers");
  add_common(analyze, false);
  add_common(fib, true);
  add_common(kap, true);
  add_common(str, false);
  add_common(ver, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(rc, out);
    if (*fib) return cmd_fiber(rc, out);
    if (*kap) return cmd_kappa(rc, out);
    if (*str) return cmd_strange(rc, out);
    if (*ver) return cmd_verify(rc, out);
  } catch (const PointError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace gaussforge::cli
