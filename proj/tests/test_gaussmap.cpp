#include <gtest/gtest.h>

#include "gaussforge/gaussmap.hpp"
#include "support.hpp"

using namespace gaussforge;

namespace {

ProjPoint pt(const FieldCtx& F, std::initializer_list<int> c) {
  Vector v;
  for (int x : c) v.push_back(F.scalar(x));
  return ProjPoint(v);
}

}  // namespace

TEST(GaussMap, SexticAtAllOnes) {
  const FieldCtx& F = field_create(3, 1);
  const GaussMap gm(parse_poly("Z1^6+Z2^6+Z3*Z4*Z0^4", F, 5));
  const ProjPoint a = pt(F, {1, 1, 1, 1, 1});
  EXPECT_EQ(gm.gauss_image(a), pt(F, {1, 0, 0, 1, 1}));
  EXPECT_EQ(gm.rank(a), 1);
  const LinearSubspace k = gm.kappa(a);
  EXPECT_EQ(k, span({a, pt(F, {0, 1, 0, 0, 0}), pt(F, {0, 0, 1, 0, 0})}));
  EXPECT_EQ(k.dim(), 2);
}

TEST(GaussMap, QuadricHasFullRank) {
  const FieldCtx& F = field_create(7, 1);
  const GaussMap gm(parse_poly("Z0^2+Z1^2+Z2^2+Z3^2", F, 4));
  // 1 + 4 + 9 = 14 = 0 in F7
  const ProjPoint x = pt(F, {1, 2, 3, 0});
  ASSERT_TRUE(gm.on_variety(x));
  EXPECT_EQ(gm.rank(x), 2);
  EXPECT_EQ(gm.kappa(x), LinearSubspace::point(x));
  EXPECT_EQ(gm.gauss_image(x), x);  // gradient 2x
}

TEST(GaussMap, QuinticKappaThroughStrangePoint) {
  const FieldCtx& F = field_create(3, 2);
  const GaussMap gm(parse_poly("Z0^5+Z1^5-Z2^3*Z3^2", F, 4));
  const ProjPoint v = pt(F, {0, 0, 1, 0});
  Rng rng(5);
  const auto pts = sample_smooth_points(gm, 20, rng, 100000);
  ASSERT_FALSE(pts.empty());
  for (const auto& x : pts) {
    EXPECT_LE(gm.rank(x), 1);
    EXPECT_TRUE(gm.kappa(x).contains(v));
  }
}

TEST(GaussMap, PointErrors) {
  const FieldCtx& F = field_create(3, 1);
  const GaussMap gm(parse_poly("Z1^6+Z2^6+Z3*Z4*Z0^4", F, 5));
  try {
    gm.kappa(pt(F, {1, 0, 0, 0, 0}));  // every partial vanishes at e0
    FAIL();
  } catch (const PointError& e) {
    EXPECT_EQ(e.kind(), PointError::Kind::Singular);
    EXPECT_NE(std::string(e.what()).find("singular point"), std::string::npos);
  }
  EXPECT_THROW(gm.gauss_image(pt(F, {1, 1, 0, 0, 0})), PointError);    // f = 1
  EXPECT_THROW(gm.gauss_image(pt(F, {1, 1, 1})), DimensionError);
}

TEST(GaussMapProperty, CaseInvariants) {
  Rng rng(31);
  int strange_cases = 0, cone_cases = 0;
  for (unsigned p : {3u, 5u, 7u})
    for (int t = 0; t < 60; ++t) {
      const FieldCtx& F = field_create(p, 1 + static_cast<unsigned>(rng.below(2)));
      const std::size_t n = 3 + rng.below(3);
      const unsigned d = 2 + static_cast<unsigned>(rng.below(5));
      const auto family = static_cast<gftest::Family>(rng.below(3));
      const gftest::Case c = gftest::random_case(F, n, d, family, rng);
      const GaussMap gm(c.f);
      const GaussPointData data = gm.analyze(c.x);
      const int deg = c.f.degree();

      // H x = (d-1) grad f
      const Vector hx = data.hessian.apply(c.x.coords());
      const Vector g = gm.gradient(c.x.coords());
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(hx[i], g[i] * F.scalar(deg - 1));

      // x in kappa(x) in T_x X, and the dimension law
      EXPECT_TRUE(data.kappa_plane.contains(c.x));
      EXPECT_TRUE(data.tangent.contains(data.kappa_plane));
      EXPECT_EQ(data.kappa_plane.dim(), gm.variety_dim() - data.rank);
      EXPECT_TRUE(data.image_space.contains(g));

      // independence of the representative
      const Scalar lambda = gftest::random_nonzero(F, rng);
      Vector scaled;
      for (const auto& s : c.x.coords()) scaled.push_back(s * lambda);
      const Vector gs = gm.gradient(scaled);
      EXPECT_EQ(ProjPoint(gs), data.gamma);
      EXPECT_EQ(gm.rank(ProjPoint(scaled)), data.rank);

      if (family == gftest::Family::Strange) {
        ++strange_cases;
        ASSERT_TRUE(c.special);
        EXPECT_TRUE(data.tangent.contains(*c.special));
        EXPECT_TRUE(data.kappa_plane.contains(*c.special));
      }
      if (family == gftest::Family::Cone) {
        ++cone_cases;
        EXPECT_TRUE(data.kappa_plane.contains(*c.special));
      }
    }
  EXPECT_GT(strange_cases, 20);
  EXPECT_GT(cone_cases, 20);
}

TEST(GaussMapProperty, SexticFiberSharesKappaAndImage) {
  const FieldCtx& F = field_create(3, 2);
  const GaussMap gm(parse_poly("Z1^6+Z2^6+Z3*Z4*Z0^4", F, 5));
  // gamma(1:a:b:c:e) = (c e : 0 : 0 : e : c); points of a fixed fiber share c, e
  Rng rng(32);
  for (int t = 0; t < 20; ++t) {
    const Scalar c = gftest::random_nonzero(F, rng), e = gftest::random_nonzero(F, rng);
    std::vector<GaussPointData> members;
    for (const auto& a : F.elements())
      for (const auto& b : F.elements()) {
        const Vector x{F.one(), a, b, c, e};
        if (!gm.polynomial().evaluate(x).is_zero()) continue;
        members.push_back(gm.analyze(ProjPoint(x)));
      }
    ASSERT_FALSE(members.empty());
    for (const auto& m : members) {
      EXPECT_EQ(m.kappa_plane, members.front().kappa_plane);
      EXPECT_EQ(m.image_space, members.front().image_space);
      EXPECT_EQ(m.gamma, members.front().gamma);
    }
  }
}

TEST(GenericRank, Examples) {
  EXPECT_EQ(generic_rank(parse_poly("Z1^6+Z2^6+Z3*Z4*Z0^4", field_create(3, 1), 5), 16, 3, 1).rank, 1);
  EXPECT_EQ(generic_rank(parse_poly("Z0^5+Z1^5-Z2^3*Z3^2", field_create(3, 1), 4), 16, 3, 1).rank, 1);
  EXPECT_EQ(generic_rank(parse_poly("Z0^2+Z1^2+Z2^2+Z3^2", field_create(7, 1), 4), 16, 2, 1).rank, 2);
}

TEST(GenericRank, SeedDeterminesSamples) {
  const MultiPoly f = parse_poly("Z0^5+Z1^5-Z2^3*Z3^2", field_create(3, 1), 4);
  const auto a = generic_rank(f, 8, 2, 9), b = generic_rank(f, 8, 2, 9);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) EXPECT_EQ(a.samples[i].second, b.samples[i].second);
}
