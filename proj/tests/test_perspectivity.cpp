#include <gtest/gtest.h>

#include <set>
#include <unordered_set>
#include <vector>

#include "pglhyp/perspectivity.hpp"

using namespace pglhyp;

namespace {

struct Q {
  unsigned p, n;
};

// G and PSL built from 2x2 matrices acting on (s^2, st, t^2), the conic's
// parametrization. A matrix lies in PSL iff its determinant is a square.
struct MatrixOracle {
  std::unordered_set<Projectivity, ProjectivityHash> pgl, psl;
};

MatrixOracle matrix_oracle(const Field& f) {
  std::vector<char> square(f.q(), 0);
  for (unsigned x = 1; x < f.q(); ++x) square[f.mul(f.element(x), f.element(x)).v] = 1;
  const Element two = f.from_int(2);
  MatrixOracle o;
  for (unsigned a = 0; a < f.q(); ++a) {
    for (unsigned b = 0; b < f.q(); ++b) {
      for (unsigned c = 0; c < f.q(); ++c) {
        for (unsigned d = 0; d < f.q(); ++d) {
          const Element ea = f.element(a), eb = f.element(b), ec = f.element(c), ed = f.element(d);
          const Element det = f.sub(f.mul(ea, ed), f.mul(eb, ec));
          if (det.v == 0) continue;
          const RawMatrix m{f.mul(ea, ea), f.mul(two, f.mul(ea, eb)), f.mul(eb, eb),
                            f.mul(ea, ec), f.add(f.mul(ea, ed), f.mul(eb, ec)), f.mul(eb, ed),
                            f.mul(ec, ec), f.mul(two, f.mul(ec, ed)), f.mul(ed, ed)};
          const Projectivity g = proj::canonical(f, m);
          o.pgl.insert(g);
          if (square[det.v]) o.psl.insert(g);
        }
      }
    }
  }
  return o;
}

}  // namespace

TEST(Involution, MatrixOracleHasExpectedOrders) {
  const Field f = Field::build(5, 1);
  const MatrixOracle o = matrix_oracle(f);
  EXPECT_EQ(o.pgl.size(), 120U);
  EXPECT_EQ(o.psl.size(), 60U);
}

TEST(Involution, CountIsQSquaredWithBijectiveCenters) {
  for (const auto [p, n] : std::vector<Q>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const Plane plane(Field::build(p, n));
    const Field& f = plane.field();
    const MatrixOracle o = matrix_oracle(f);
    ASSERT_EQ(o.pgl.size(), std::size_t{f.q()} * (f.q() * f.q() - 1));
    std::set<PointId> centers;
    std::size_t count = 0;
    for (const Projectivity& g : o.pgl) {
      if (!is_involution(f, g)) continue;
      ++count;
      const auto [c, axis] = center_axis(plane, g);
      EXPECT_FALSE(plane.on_conic(c));
      EXPECT_EQ(axis, plane.polar(c));
      EXPECT_EQ(involution_from_center(plane, c).map, g);
      centers.insert(plane.id(c));
    }
    EXPECT_EQ(count, std::size_t{f.q()} * f.q());
    EXPECT_EQ(centers.size(), count);
  }
}

TEST(Involution, IsAPerspectivityPreservingTheConic) {
  const Plane plane(Field::build(7, 1));
  const Field& f = plane.field();
  for (PointId id : plane.off_conic_points()) {
    const Involution a = involution_from_center(plane, plane.point_at(id));
    EXPECT_TRUE(is_involution(f, a.map));
    EXPECT_TRUE(preserves_conic(plane, a.map));
    EXPECT_EQ(proj::apply(plane, a.map, a.center), a.center);
    for (const ProjPoint& x : plane.points_on(a.axis)) EXPECT_EQ(proj::apply(plane, a.map, x), x);
    for (const ProjLine& l : plane.lines_through(a.center)) EXPECT_EQ(proj::apply(plane, a.map, l), l);
  }
}

TEST(Involution, PslMembershipMatchesSquareDeterminants) {
  for (const auto [p, n] : std::vector<Q>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
    const Plane plane(Field::build(p, n));
    const MatrixOracle o = matrix_oracle(plane.field());
    const InvolutionTable table(plane);
    std::size_t in = 0;
    for (PointId id : plane.off_conic_points()) {
      const bool expect = o.psl.count(table.at(id).map) > 0;
      EXPECT_EQ(table.in_psl(id), expect) << plane.format(plane.point_at(id));
      in += expect;
    }
    const std::size_t q = plane.q();
    EXPECT_EQ(in, q % 4 == 1 ? q * (q + 1) / 2 : q * (q - 1) / 2);
  }
}

// PSL involutions fix two conic points when q = 1 mod 4 and none when
// q = 3 mod 4; the others do the opposite.
TEST(Involution, FixedConicPointParity) {
  for (const auto [p, n] : std::vector<Q>{{5, 1}, {7, 1}, {3, 2}, {13, 1}}) {
    const Plane plane(Field::build(p, n));
    const MatrixOracle o = matrix_oracle(plane.field());
    for (PointId id : plane.off_conic_points()) {
      const Involution a = involution_from_center(plane, plane.point_at(id));
      const unsigned fixed = fixed_conic_points(plane, a.map);
      const bool psl = o.psl.count(a.map) > 0;
      EXPECT_EQ(fixed, (psl == (plane.q() % 4 == 1)) ? 2U : 0U);
      // Fixed conic points are the tangency points of tangents through P.
      EXPECT_EQ(fixed, plane.tangents_through(plane.point_at(id)));
    }
  }
}

TEST(Involution, Errors) {
  const Plane plane(Field::build(5, 1));
  const Field& f = plane.field();
  try {
    involution_from_center(plane, plane.point_at(plane.conic_points()[0]));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CenterOnConic);
  }
  EXPECT_THROW(center_axis(plane, proj::identity(f)), Error);
  const InvolutionTable table(plane);
  EXPECT_THROW(table.at(plane.conic_points()[0]), Error);
}
