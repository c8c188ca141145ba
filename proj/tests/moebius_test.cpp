#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sepstab/gallery.hpp"
#include "sepstab/moebius.hpp"
#include "sepstab/representation.hpp"

using namespace sepstab;

namespace {

MoebiusMap random_map(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    MoebiusMap m({n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)});
    if (std::abs(m.det()) > 0.1) return m.normalized();
  }
}

H3Point random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> h(0.2, 3.0);
  return {{n(rng), n(rng)}, h(rng)};
}

// cosh d = 1 + |p - q|_euclid^2 / (2 t s), written independently of dist().
double dist_oracle(const H3Point& p, const H3Point& q) {
  double e2 = std::norm(p.horizontal - q.horizontal) + (p.height - q.height) * (p.height - q.height);
  return std::acosh(1.0 + e2 / (2.0 * p.height * q.height));
}

}  // namespace

TEST(Moebius, ClassifiesByTrace) {
  EXPECT_EQ(classify(MoebiusMap::identity()), MapClass::Identity);
  EXPECT_EQ(classify(MoebiusMap(-1.0, 0.0, 0.0, -1.0)), MapClass::Identity);
  EXPECT_EQ(classify(MoebiusMap(1.0, 1.0, 0.0, 1.0)), MapClass::Parabolic);
  EXPECT_EQ(classify(MoebiusMap::diagonal(std::polar(1.0, 0.3))), MapClass::Elliptic);
  EXPECT_EQ(classify(MoebiusMap::diagonal(2.0)), MapClass::Loxodromic);
  EXPECT_EQ(classify(MoebiusMap::diagonal(std::polar(2.0, 0.3))), MapClass::Loxodromic);
}

TEST(Moebius, TranslationLengthOfDiagonal) {
  for (double k : {1.5, 2.0, 10.0}) {
    EXPECT_NEAR(translation_length(MoebiusMap::diagonal(k)), 2.0 * std::log(k), 1e-12);
    // The axis is the vertical line over 0; displacement there is the translation length.
    EXPECT_NEAR(displacement(MoebiusMap::diagonal(k), {{0.0, 0.0}, 0.7}), 2.0 * std::log(k), 1e-9);
  }
  EXPECT_EQ(translation_length(MoebiusMap(1.0, 1.0, 0.0, 1.0)), 0.0);
}

TEST(Moebius, FixedPointsAreFixedAndAttracting) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    MoebiusMap m = random_map(rng);
    if (classify(m) != MapClass::Loxodromic) continue;
    FixedPoints fp = fixed_points(m);
    ASSERT_EQ(fp.points.size(), 2u);
    ASSERT_TRUE(fp.attracting && fp.repelling);
    for (const RiemannPoint& p : fp.points) EXPECT_TRUE(near(m(p), p, 1e-7));
    RiemannPoint z = RiemannPoint::finite({0.123, -0.456});
    if (near(z, *fp.repelling, 1e-3) || translation_length(m) < 0.05) continue;
    RiemannPoint orbit = z;
    for (int k = 0; k < 2000; ++k) orbit = m(orbit);
    EXPECT_TRUE(near(orbit, *fp.attracting, 1e-6));
  }
  FixedPoints d = fixed_points(MoebiusMap::diagonal(3.0));
  EXPECT_TRUE(d.attracting->infinite);
  EXPECT_TRUE(near(*d.repelling, RiemannPoint::finite(0.0), 1e-15));
  FixedPoints p = fixed_points(MoebiusMap(1.0, 1.0, 0.0, 1.0));
  ASSERT_EQ(p.points.size(), 1u);
  EXPECT_TRUE(p.points[0].infinite);
  EXPECT_THROW(fixed_points(MoebiusMap::identity()), Error);
}

TEST(Moebius, DistanceMatchesOracle) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    H3Point p = random_point(rng), q = random_point(rng);
    EXPECT_NEAR(dist(p, q), dist_oracle(p, q), 1e-9);
  }
  EXPECT_NEAR(dist({{0.0, 0.0}, 1.0}, {{0.0, 0.0}, std::exp(2.0)}), 2.0, 1e-12);
}

TEST(Moebius, PoincareExtensionIsIsometry) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    MoebiusMap m = random_map(rng);
    H3Point p = random_point(rng), q = random_point(rng);
    double d0 = dist(p, q);
    EXPECT_NEAR(dist(apply(m, p), apply(m, q)), d0, 1e-7 * std::max(1.0, d0));
    EXPECT_NEAR(displacement(m, p), dist(p, apply(m, p)), 1e-6);
  }
}

TEST(Moebius, ApplyIsAHomomorphism) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    MoebiusMap m = random_map(rng), n = random_map(rng);
    H3Point p = random_point(rng);
    H3Point a = apply(m * n, p), b = apply(m, apply(n, p));
    EXPECT_LT(dist(a, b), 1e-7);
  }
}

TEST(Moebius, DisplacementSurvivesHugeProducts) {
  MoebiusMap m = MoebiusMap::diagonal(1e100);
  MoebiusMap big = m;
  for (int i = 0; i < 5; ++i) big = big * m;  // entries near 1e600 overflow to inf
  double d = displacement(MoebiusMap::diagonal(1e150), {{0.0, 0.0}, 1.0});
  EXPECT_NEAR(d, 2.0 * 150.0 * std::log(10.0), 1e-6);
  EXPECT_TRUE(std::isinf(displacement(big, {{0.0, 0.0}, 1.0})));
}

TEST(Moebius, RenormalizedLeavesLargeEntriesAlone) {
  MoebiusMap m = MoebiusMap::diagonal(1e6);
  EXPECT_EQ(m.renormalized().a(), m.a());
  MoebiusMap s(2.0, 0.0, 0.0, 2.0);
  EXPECT_NEAR(std::abs(s.renormalized().det() - 1.0), 0.0, 1e-15);
  EXPECT_THROW(MoebiusMap(1.0, 1.0, 1.0, 1.0).normalized(), Error);
}

TEST(Representation, EvaluatesProductsAndChecksArity) {
  GroupSpec g = GroupSpec::free(2);
  MoebiusMap a = MoebiusMap::diagonal(2.0), b = gallery::schottky_b();
  Representation rho(g, {a, b});
  Word w = g.parse_word("a b A B a");
  MoebiusMap expect = a * b * a.inverse() * b.inverse() * a;
  EXPECT_TRUE(rho.evaluate(w).approx_equal(expect, 1e-12));
  EXPECT_TRUE(rho.evaluate(Word{}).is_identity());
  EXPECT_THROW(Representation(g, {a}), Error);
  EXPECT_THROW(rho.image(Letter(5, false)), Error);
}

TEST(Representation, OctagonRelatorResidualIsSmall) {
  RepFile f = gallery::s2_times_z();
  ASSERT_EQ(f.rep.residuals().size(), 1u);
  EXPECT_LT(f.rep.residuals()[0], 1e-8);
  // The images are hyperbolic isometries of the plane: real traces above 2.
  for (const MoebiusMap& m : f.rep.images()) {
    EXPECT_NEAR(m.trace().imag(), 0.0, 1e-9);
    EXPECT_GT(std::abs(m.trace().real()), 2.0);
  }
}

TEST(Representation, ConjugationPreservesTraces) {
  RepFile f = gallery::schottky2();
  MoebiusMap h({1.0, 0.5}, {0.2, 0.0}, {0.0, -0.3}, {1.0, 0.0});
  Representation c = f.rep.conjugated(h);
  GroupSpec g = f.rep.group();
  for (const char* text : {"a", "b", "a b", "a B a b"}) {
    Word w = g.parse_word(text);
    EXPECT_NEAR(std::abs(trace_squared(c.evaluate(w)) - trace_squared(f.rep.evaluate(w))), 0.0,
                1e-8 * std::abs(trace_squared(f.rep.evaluate(w))));
  }
}
