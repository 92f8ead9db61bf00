#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "pglhyp/plane.hpp"

using namespace pglhyp;

namespace {

struct Q {
  unsigned p, n;
};

const std::vector<Q> kSmall{{3, 1}, {5, 1}, {7, 1}, {3, 2}};

// Tangent at a conic point A, found by enumeration: the only line through A
// meeting the conic nowhere else.
ProjLine tangent_by_search(const Plane& plane, const ProjPoint& a) {
  for (const ProjLine& l : plane.lines_through(a)) {
    if (plane.count_conic_points(l) == 1) return l;
  }
  ADD_FAILURE() << "no tangent found";
  return {};
}

}  // namespace

TEST(Plane, IdsRoundTripInCanonicalOrder) {
  const Plane plane(Field::build(5, 1));
  ASSERT_EQ(plane.size(), 31U);
  for (PointId i = 0; i < plane.size(); ++i) {
    EXPECT_EQ(plane.id(plane.point_at(i)), i);
    if (i > 0) {
      const auto& a = plane.point_at(i - 1).x;
      const auto& b = plane.point_at(i).x;
      const unsigned q = plane.q();
      EXPECT_LT(a[0].v * q * q + a[1].v * q + a[2].v, b[0].v * q * q + b[1].v * q + b[2].v);
    }
  }
}

TEST(Plane, IncidenceCounts) {
  for (const auto [p, n] : kSmall) {
    const Plane plane(Field::build(p, n));
    const unsigned q = plane.q();
    EXPECT_EQ(plane.size(), std::size_t{q} * q + q + 1);
    EXPECT_EQ(plane.conic_points().size(), q + 1);
    EXPECT_EQ(plane.off_conic_points().size(), std::size_t{q} * q);
    for (PointId i = 0; i < plane.size(); ++i) {
      const ProjLine l = plane.line_at(i);
      const auto pts = plane.points_on(l);
      ASSERT_EQ(pts.size(), q + 1);
      for (const ProjPoint& x : pts) EXPECT_TRUE(plane.incident(x, l));
      EXPECT_EQ(std::set<ProjPoint>(pts.begin(), pts.end()).size(), q + 1);
    }
  }
}

TEST(Plane, JoinAndMeet) {
  const Plane plane(Field::build(3, 2));
  for (PointId a = 0; a < plane.size(); a += 7) {
    for (PointId b = a + 1; b < plane.size(); b += 5) {
      const ProjPoint pa = plane.point_at(a), pb = plane.point_at(b);
      const ProjLine l = plane.line_through(pa, pb);
      EXPECT_TRUE(plane.incident(pa, l));
      EXPECT_TRUE(plane.incident(pb, l));
      const ProjLine m = plane.line_at(b);
      if (m != l) {
        EXPECT_TRUE(plane.incident(plane.meet(l, m), m));
      }
    }
  }
  EXPECT_THROW(plane.line_through(plane.point_at(3), plane.point_at(3)), Error);
}

TEST(Plane, LineAndPointTypeCounts) {
  for (const auto [p, n] : std::vector<Q>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const Plane plane(Field::build(p, n));
    const unsigned q = plane.q();
    unsigned tangent = 0, secant = 0, exterior = 0, ext_pts = 0, int_pts = 0;
    for (PointId i = 0; i < plane.size(); ++i) {
      const unsigned k = plane.count_conic_points(plane.line_at(i));
      const LineType t = plane.classify_line(plane.line_at(i));
      EXPECT_EQ(t, k == 1 ? LineType::Tangent : k == 2 ? LineType::Secant : LineType::Exterior);
      ASSERT_LE(k, 2U);  // no three conic points are collinear
      tangent += t == LineType::Tangent;
      secant += t == LineType::Secant;
      exterior += t == LineType::Exterior;
      const PointType pt = plane.classify_point(plane.point_at(i));
      ext_pts += pt == PointType::Exterior;
      int_pts += pt == PointType::Interior;
    }
    EXPECT_EQ(tangent, q + 1);
    EXPECT_EQ(secant, q * (q + 1) / 2);
    EXPECT_EQ(exterior, q * (q - 1) / 2);
    EXPECT_EQ(ext_pts, q * (q + 1) / 2);
    EXPECT_EQ(int_pts, q * (q - 1) / 2);
  }
}

TEST(Plane, PolarityIsAnInvolutiveCorrelation) {
  const Plane plane(Field::build(7, 1));
  for (PointId i = 0; i < plane.size(); ++i) {
    const ProjPoint p = plane.point_at(i);
    EXPECT_EQ(plane.pole(plane.polar(p)), p);
    EXPECT_EQ(plane.on_conic(p), plane.incident(p, plane.polar(p)));
    for (PointId j = 0; j < plane.size(); j += 3) {
      const ProjPoint x = plane.point_at(j);
      // x on polar(p) iff p on polar(x).
      EXPECT_EQ(plane.incident(x, plane.polar(p)), plane.incident(p, plane.polar(x)));
    }
  }
}

// polar(P) passes through the pole of every secant through P, and the pole of
// a secant AB is the meet of the tangents at A and B. Tangents come from a
// search, so this check does not use the polar formula at all.
TEST(Plane, PolarMatchesTwoSecantConstruction) {
  for (const auto [p, n] : kSmall) {
    const Plane plane(Field::build(p, n));
    for (PointId id : plane.off_conic_points()) {
      const ProjPoint pt = plane.point_at(id);
      std::vector<ProjPoint> poles;
      for (const ProjLine& l : plane.lines_through(pt)) {
        std::vector<ProjPoint> ab;
        for (const ProjPoint& x : plane.points_on(l)) {
          if (plane.on_conic(x)) ab.push_back(x);
        }
        if (ab.size() != 2) continue;
        poles.push_back(plane.meet(tangent_by_search(plane, ab[0]), tangent_by_search(plane, ab[1])));
        if (poles.size() == 2) break;
      }
      if (poles.size() < 2) {
        // At most one secant through P (q = 3 exterior points): use the
        // tangency points instead, which lie on the polar of an exterior point.
        std::vector<ProjPoint> touch;
        for (PointId c : plane.conic_points()) {
          if (plane.incident(pt, tangent_by_search(plane, plane.point_at(c)))) touch.push_back(plane.point_at(c));
        }
        ASSERT_EQ(touch.size(), 2U);
        EXPECT_EQ(plane.polar(pt), plane.line_through(touch[0], touch[1]));
        continue;
      }
      EXPECT_EQ(plane.polar(pt), plane.line_through(poles[0], poles[1])) << plane.format(pt);
    }
    for (PointId c : plane.conic_points()) {
      EXPECT_EQ(plane.polar(plane.point_at(c)), tangent_by_search(plane, plane.point_at(c)));
    }
  }
}
