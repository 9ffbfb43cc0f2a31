#pragma once

// JSON encodings of points, subspaces and reports ("schema": "v1").

#include <string>

#include "json.hpp"

#include "gaussforge/analysis.hpp"
#include "gaussforge/gaussmap.hpp"
#include "gaussforge/linproj.hpp"

namespace gaussforge::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "v1";
inline constexpr const char* kPluckerOrder = "maximal minors of the basis, column subsets in lexicographic order";

inline Json to_json(const Scalar& s) { return gaussforge::to_string(s); }

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

inline Json to_json(const ProjPoint& x) { return to_json(x.coords()); }

inline Json to_json(const LinearSubspace& s) {
  Json basis = Json::array();
  for (const auto& row : s.basis_vectors()) basis.push_back(to_json(row));
  return Json{{"dim", s.dim()}, {"basis", basis}};
}

inline Json plucker_json(const LinearSubspace& s) {
  return Json{{"order", kPluckerOrder}, {"coords", to_json(s.plucker())}};
}

inline Json field_json(const FieldCtx& F) {
  return Json{{"p", F.p()}, {"k", F.k()}, {"order", F.order()}, {"modulus", F.modulus()}};
}

inline Json points_json(const std::vector<ProjPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

inline Json point_report(const GaussPointData& d) {
  return Json{{"schema", kSchema},
              {"x", to_json(d.x)},
              {"gamma", to_json(d.gamma)},
              {"tangent", to_json(d.tangent)},
              {"rank", d.rank},
              {"kappa", to_json(d.kappa_plane)},
              {"kappa_plucker", plucker_json(d.kappa_plane)},
              {"generic", d.generic}};
}

inline Json variety_json(const VarietyReport& v, const AnalysisConfig& cfg) {
  Json levels = Json::array();
  for (const auto& l : v.generic_rank.levels)
    levels.push_back(Json{{"ext", l.ext}, {"order", l.order}, {"smooth_samples", l.smooth_samples}, {"max_rank", l.max_rank}});
  Json counts = Json::array();
  for (const auto& l : v.image.levels)
    counts.push_back(Json{{"ext", l.ext},
                          {"order", l.order},
                          {"points", l.points},
                          {"smooth_points", l.smooth_points},
                          {"image_size", l.image_size}});
  Json cones = Json::array();
  for (const auto& c : v.cone_vertices) cones.push_back(Json{{"v", to_json(c.vertex)}, {"is_cone", c.is_cone}});
  return Json{{"schema", kSchema},
              {"f", v.f.to_string()},
              {"field", field_json(v.f.field())},
              {"ambient_dim", v.ambient_dim},
              {"n", v.n},
              {"degree", v.f.degree()},
              {"generic_rank", v.generic_rank.rank},
              {"image_dim_estimate", v.image.estimate},
              {"image",
               Json{{"slope", v.image.slope}, {"inconclusive", v.image.inconclusive}, {"m_max", v.m_max}, {"counts", counts}}},
              {"separability", to_string(v.separability)},
              {"strange_locus", to_json(v.strange_locus)},
              {"cone_vertices", cones},
              {"strange_consistency", v.strange_consistency_failure ? "fail" : "pass"},
              {"evidence",
               Json{{"seed", cfg.seed},
                    {"trials", cfg.trials},
                    {"ext_bound", cfg.ext_bound},
                    {"budget", cfg.budget},
                    {"rank_levels", levels},
                    {"rank_samples", v.generic_rank.total_samples}}}};
}

inline Json fiber_json(const FiberReport& r) {
  Json groups = Json::array();
  for (const auto& g : r.groups)
    groups.push_back(Json{{"kappa_plane", to_json(g.kappa_plane)},
                          {"points", points_json(g.points)},
                          {"all_on_plane", g.all_on_plane},
                          {"generic", g.generic},
                          {"plane_dim_ok", g.plane_dim_ok},
                          {"image_space_constant", g.image_space_constant}});
  Json j{{"schema", kSchema},
         {"base_point", to_json(r.base)},
         {"gamma_value", to_json(r.gamma)},
         {"extension", r.ext},
         {"field", field_json(*r.field)},
         {"fiber_points", points_json(r.fiber_points)},
         {"singular_points", points_json(r.singular_points)},
         {"closure_size", r.closure_size()},
         {"groups", groups},
         {"grouping", "smooth fiber points keyed by kappa plane; components are not computed"}};
  if (r.generic_rank) j["generic_rank"] = *r.generic_rank;
  return j;
}

inline Json theorem_json(const TheoremReport& t, const AnalysisConfig& cfg) {
  Json checks = Json::array();
  for (const auto& c : t.checks)
    checks.push_back(Json{{"id", c.id},
                          {"description", c.description},
                          {"status", to_string(c.status)},
                          {"detail", c.detail},
                          {"witnesses", c.witnesses}});
  Json fibs = Json::array();
  for (const auto& f : t.fibers) fibs.push_back(fiber_json(f));
  return Json{{"schema", kSchema},
              {"variety", variety_json(t.variety, cfg)},
              {"fiber_ext", t.fiber_ext},
              {"fibers", fibs},
              {"checks", checks},
              {"all_passed", t.all_passed()}};
}

}  // namespace gaussforge::report
