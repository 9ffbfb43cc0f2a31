#include <gtest/gtest.h>

#include "gaussforge/poly.hpp"
#include "support.hpp"

using namespace gaussforge;

namespace {

const char* kSextic = "Z1^6+Z2^6+Z3*Z4*Z0^4";
const char* kQuintic = "Z0^5+Z1^5-Z2^3*Z3^2";

}  // namespace

TEST(Poly, ParseCancellation) {
  const FieldCtx& F = field_create(3, 1);
  EXPECT_TRUE(parse_poly("Z0 - Z0", F, 2).is_zero());
  EXPECT_TRUE(parse_poly("3*Z0^2", F, 2).is_zero());
  EXPECT_EQ(parse_poly("Z0 - Z0", F, 2).degree(), -1);
}

TEST(Poly, ParseErrorsCarryPosition) {
  const FieldCtx& F = field_create(3, 1);
  try {
    parse_poly("Z0 + * Z1", F, 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(parse_poly("Z5", F, 2), ParseError);
  EXPECT_THROW(parse_poly("Z0^2 + Z1", F, 2, true), Error);
  EXPECT_NO_THROW(parse_poly("(Z0 + Z1)^2 - [1]*Z1^2", F, 2, true));
}

TEST(Poly, CanonicalPrinting) {
  const FieldCtx& F = field_create(3, 1);
  EXPECT_EQ(parse_poly(kSextic, F, 5).to_string(), "Z0^4*Z3*Z4 + Z1^6 + Z2^6");
  EXPECT_EQ(parse_poly("(Z0+Z1)^3", F, 2).to_string(), "Z0^3 + Z1^3");
  EXPECT_EQ(parse_poly("-Z0*Z1", F, 2).to_string(), "2*Z0*Z1");
}

TEST(Poly, EvaluateExamples) {
  const FieldCtx& F = field_create(3, 1);
  const MultiPoly f = parse_poly(kSextic, F, 5);
  EXPECT_TRUE(f.evaluate(Vector(5, F.one())).is_zero());  // 1 + 1 + 1 = 0 in F3
  const FieldCtx& F9 = field_create(3, 2);
  const MultiPoly g = parse_poly(kQuintic, F9, 4);
  for (const auto& b : F9.elements())
    for (const auto& c : F9.elements())
      ASSERT_EQ(g.evaluate(Vector{F9.one(), F9.one(), b, c}), F9.scalar(2) - b.pow(3) * c * c);
}

TEST(Poly, DerivativeExamples) {
  const FieldCtx& F = field_create(3, 1);
  const MultiPoly f = parse_poly(kSextic, F, 5);
  EXPECT_EQ(f.partial_derivative(0), parse_poly("Z0^3*Z3*Z4", F, 5));
  EXPECT_TRUE(f.partial_derivative(1).is_zero());
  EXPECT_TRUE(f.partial_derivative(2).is_zero());
  EXPECT_EQ(f.partial_derivative(3), parse_poly("Z0^4*Z4", F, 5));
  const MultiPoly g = parse_poly(kQuintic, F, 4);
  EXPECT_EQ(g.partial_derivative(0), parse_poly("-Z0^4", F, 4));
  EXPECT_TRUE(g.partial_derivative(2).is_zero());
  EXPECT_EQ(g.partial_derivative(3), parse_poly("Z2^3*Z3", F, 4));
}

TEST(Poly, SubstituteExamples) {
  const FieldCtx& F = field_create(5, 1);
  const MultiPoly f = parse_poly("Z0^2 + Z1^2", F, 2);
  // Z0 -> Z0 + Z1, Z1 -> Z0 - Z1 gives 2 Z0^2 + 2 Z1^2
  std::vector<Vector> map{{F.one(), F.one()}, {F.one(), F.scalar(-1)}};
  EXPECT_EQ(f.substitute_linear(map), parse_poly("2*Z0^2 + 2*Z1^2", F, 2));
  // into three variables
  std::vector<Vector> wide{{F.one(), F.zero(), F.zero()}, {F.zero(), F.zero(), F.one()}};
  EXPECT_EQ(f.substitute_linear(wide), parse_poly("Z0^2 + Z2^2", F, 3));
}

TEST(Poly, EulerExamples) {
  EXPECT_TRUE(euler_identity_check(parse_poly(kSextic, field_create(3, 1), 5)).holds);
  EXPECT_TRUE(euler_identity_check(parse_poly("Z0^2+Z1^2", field_create(7, 1), 2)).holds);
  // degree 5 in characteristic 3: sum Z_i f_i = 2 f, expanded by hand
  const FieldCtx& F = field_create(3, 1);
  const MultiPoly g = parse_poly(kQuintic, F, 4);
  MultiPoly sum(F, 4);
  for (std::size_t i = 0; i < 4; ++i) sum += MultiPoly::variable(F, 4, i) * g.partial_derivative(i);
  EXPECT_EQ(sum, parse_poly("2*Z0^5 + 2*Z1^5 - 2*Z2^3*Z3^2", F, 4));
  EXPECT_TRUE(euler_identity_check(g).holds);
  EXPECT_THROW(euler_identity_check(parse_poly("Z0^2 + Z1", F, 2)), Error);
}

TEST(PolyProperty, RoundTripAndEuler) {
  Rng rng(11);
  for (unsigned p : {3u, 5u, 7u})
    for (unsigned k : {1u, 2u}) {
      const FieldCtx& F = field_create(p, k);
      for (int t = 0; t < 25; ++t) {
        const std::size_t n = 2 + rng.below(4);
        const unsigned d = 2 + static_cast<unsigned>(rng.below(5));
        const MultiPoly f = gftest::random_form(F, n, d, 1 + rng.below(7), rng);
        EXPECT_EQ(parse_poly(f.to_string(), F, n), f) << f.to_string();
        if (!f.is_zero()) EXPECT_TRUE(euler_identity_check(f).holds) << f.to_string();
      }
    }
}

TEST(PolyProperty, DerivativeLinearAndLeibniz) {
  Rng rng(12);
  for (unsigned p : {3u, 5u, 7u}) {
    const FieldCtx& F = field_create(p, 1);
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 2 + rng.below(3);
      const MultiPoly a = gftest::random_form(F, n, 1 + static_cast<unsigned>(rng.below(4)), 1, rng);
      const MultiPoly b = gftest::random_form(F, n, 1 + static_cast<unsigned>(rng.below(4)), 1, rng);
      const Scalar c = gftest::random_scalar(F, rng);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_EQ((a * b).partial_derivative(i), a.partial_derivative(i) * b + a * b.partial_derivative(i));
        EXPECT_EQ((a * c + b).partial_derivative(i), a.partial_derivative(i) * c + b.partial_derivative(i));
      }
    }
  }
}

TEST(PolyProperty, SubstitutionComposes) {
  Rng rng(13);
  const FieldCtx& F = field_create(5, 1);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.below(3);
    const MultiPoly f = gftest::random_form(F, n, 2 + static_cast<unsigned>(rng.below(3)), 3, rng);
    std::vector<Vector> a, b;
    for (std::size_t i = 0; i < n; ++i) a.push_back(gftest::random_vector(F, n, rng));
    for (std::size_t i = 0; i < n; ++i) b.push_back(gftest::random_vector(F, n, rng));
    // f(A Z) then Z -> B Z is f(A B Z)
    const Matrix ab = Matrix::from_rows(F, n, a) * Matrix::from_rows(F, n, b);
    EXPECT_EQ(f.substitute_linear(a).substitute_linear(b), f.substitute_linear(ab.row_vectors()));
    // and agrees pointwise
    const Vector z = gftest::random_vector(F, n, rng);
    EXPECT_EQ(f.substitute_linear(a).evaluate(z), f.evaluate(Matrix::from_rows(F, n, a).apply(z)));
  }
}

TEST(PolyProperty, CompiledEvaluatorAgrees) {
  Rng rng(14);
  const FieldCtx& F = field_create(3, 3);
  for (int t = 0; t < 40; ++t) {
    const MultiPoly f = gftest::random_form(F, 4, 1 + static_cast<unsigned>(rng.below(6)), 5, rng);
    const CompiledPoly cf(f);
    const Vector z = gftest::random_vector(F, 4, rng);
    std::vector<Scalar::Rep> reps;
    for (const auto& s : z) reps.push_back(s.rep());
    EXPECT_EQ(cf(reps.data()), f.evaluate(z).rep());
  }
}
