#include <gtest/gtest.h>

#include <set>

#include "pglhyp/correlation.hpp"
#include "pglhyp/enumerate.hpp"

using namespace pglhyp;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Collineation, FrobeniusCommutesWithPolarityAndInvolutions) {
  const Plane plane(Field::build(3, 3));
  const Field& f = plane.field();
  const Collineation tau = frobenius_collineation(f, 1);
  EXPECT_EQ(coll::order(f, tau), 3U);
  const Collineation t3 = coll::compose(f, tau, coll::compose(f, tau, tau));
  EXPECT_EQ(t3, coll::identity(f));
  for (PointId id = 0; id < plane.size(); id += 5) {
    const ProjPoint x = plane.point_at(id);
    const ProjPoint tx = coll::apply(plane, tau, x);
    EXPECT_EQ(coll::apply(plane, tau, plane.polar(x)), plane.polar(tx));
    EXPECT_EQ(plane.on_conic(x), plane.on_conic(tx));
    if (!plane.on_conic(x)) {
      EXPECT_EQ(coll::conjugate(f, tau, involution_from_center(plane, x).map), involution_from_center(plane, tx).map);
    }
  }
}

TEST(Collineation, InvalidPowers) {
  const Field f = Field::build(3, 3);
  EXPECT_EQ(kind_of([&] { frobenius_collineation(f, 0); }), ErrorKind::InvalidPower);
  EXPECT_EQ(kind_of([&] { frobenius_collineation(f, 3); }), ErrorKind::InvalidPower);
  const Plane prime(Field::build(7, 1));
  EXPECT_EQ(kind_of([&] { triality_projectivity_check(prime); }), ErrorKind::InvalidPower);
  const Plane square(Field::build(3, 2));
  EXPECT_EQ(kind_of([&] { triality_projectivity_check(square); }), ErrorKind::InvalidPower);
}

TEST(Triality, ConjugationAgreesWithTauOnH) {
  for (unsigned p : {3U, 5U}) {
    const Plane plane(Field::build(p, 3));
    const TrialityReport r = triality_projectivity_check(plane);
    const std::size_t q = plane.q();
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.matches, 1U);
    EXPECT_EQ(r.checks, r.group_order);
    EXPECT_EQ(r.group_order, p == 3 ? 24U : 60U);
    EXPECT_NE(r.sigma[0], 0U);
    std::set<unsigned> img(r.sigma.begin(), r.sigma.end());
    EXPECT_EQ(img.size(), 3U);
    EXPECT_LT(r.triangle.record.group->stats.order, q * (q * q - 1));
  }
}

TEST(Triality, TauTriangleIsTauInvariant) {
  const Plane plane(Field::build(3, 3));
  const Field& f = plane.field();
  const Collineation tau = frobenius_collineation(f, 1);
  unsigned built = 0;
  for (PointId c : plane.conic_points()) {
    const ProjPoint pc = plane.point_at(c);
    if (coll::apply(plane, tau, pc) == pc) {
      EXPECT_EQ(kind_of([&] { tau_triangle(plane, c, tau); }), ErrorKind::FixedConicPoint);
      continue;
    }
    const TauTriangle t = tau_triangle(plane, c, tau, ClassifyOptions{false, true, false});
    std::set<PointId> pts(t.record.centers.begin(), t.record.centers.end());
    std::set<PointId> moved;
    for (PointId x : pts) moved.insert(plane.id(coll::apply(plane, tau, plane.point_at(x))));
    EXPECT_EQ(pts, moved);
    if (++built == 6) break;
  }
  EXPECT_EQ(built, 6U);
}

// Tangent triangle at q = 7: the three generators are permuted by inner
// automorphisms in every possible way, and each witness is a correlation of
// the coset geometry.
TEST(Correlation, TangentTriangleAdmitsAllPermutations) {
  const Plane plane(Field::build(7, 1));
  const Field& f = plane.field();
  const auto& c = plane.conic_points();
  const TriangleRecord t = construct_tangent_triangle(plane, c[0], c[1], c[2]);
  ASSERT_TRUE(t.hypertope());
  const Generators a = t.generators();
  const ElementSet h = closure(f, {a[0], a[1], a[2]});
  const auto subs = rank2_subgroups(f, a);
  const CosetGeometry geo = build_coset_geometry(f, h, {&subs[0], &subs[1], &subs[2]});
  for (const Sigma& s : kSymmetricGroup) {
    const auto w = correlation_witness(f, h, a, s);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(h[w->index], w->g);
    EXPECT_TRUE(permutes_generators(f, w->g, a, s));
    EXPECT_EQ(count_witnesses(f, h, a, s), 1U);
    EXPECT_TRUE(witness_preserves_incidence(f, h, geo, *w));
  }
}

// Distinct diagram labels leave no room for a non-trivial type permutation.
TEST(Correlation, DistinctLabelsAllowOnlyIdentity) {
  const Plane plane(Field::build(5, 1));
  const Field& f = plane.field();
  bool found = false;
  for (std::uint64_t r = 0; r < 2300 && !found; ++r) {
    const TriangleRecord t = classify_triangle(plane, triple_points(plane, r));
    if (!t.hypertope()) continue;
    const auto& m = t.diagram->labels;
    if (m[0] == m[1] || m[1] == m[2] || m[0] == m[2]) continue;
    found = true;
    const Generators a = t.generators();
    const ElementSet h = closure(f, {a[0], a[1], a[2]});
    for (const Sigma& s : kSymmetricGroup) {
      const bool identity = s == Sigma{0, 1, 2};
      EXPECT_EQ(correlation_witness(f, h, a, s).has_value(), identity);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Correlation, WrongWitnessBreaksIncidenceCheck) {
  const Plane plane(Field::build(7, 1));
  const Field& f = plane.field();
  const auto& c = plane.conic_points();
  const TriangleRecord t = construct_tangent_triangle(plane, c[0], c[1], c[2]);
  const Generators a = t.generators();
  const ElementSet h = closure(f, {a[0], a[1], a[2]});
  const auto subs = rank2_subgroups(f, a);
  const CosetGeometry geo = build_coset_geometry(f, h, {&subs[0], &subs[1], &subs[2]});
  auto w = correlation_witness(f, h, a, Sigma{1, 0, 2});
  ASSERT_TRUE(w.has_value());
  w->sigma = Sigma{0, 2, 1};
  EXPECT_FALSE(witness_preserves_incidence(f, h, geo, *w));
}
