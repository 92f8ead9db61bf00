#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "pglhyp/group.hpp"
#include "pglhyp/perspectivity.hpp"

using namespace pglhyp;

namespace {

struct Q {
  unsigned p, n;
};

std::vector<Projectivity> all_involutions(const Plane& plane, int psl_filter = -1) {
  std::vector<Projectivity> out;
  for (PointId id : plane.off_conic_points()) {
    const Involution a = involution_from_center(plane, plane.point_at(id));
    if (psl_filter >= 0 && in_psl(plane, a) != (psl_filter == 1)) continue;
    out.push_back(a.map);
  }
  return out;
}

bool is_cyclic(const Field& f, const ElementSet& h) {
  for (const Projectivity& g : h) {
    if (proj::order(f, g, static_cast<unsigned>(h.size())) == h.size()) return true;
  }
  return h.size() == 1;
}

}  // namespace

TEST(Group, InvolutionsGeneratePglAndPslOfTheRightOrder) {
  for (const auto [p, n] : std::vector<Q>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const Plane plane(Field::build(p, n));
    const Field& f = plane.field();
    const std::size_t q = f.q();
    const ElementSet g = closure(f, all_involutions(plane));
    EXPECT_EQ(g.size(), q * (q * q - 1));
    require_closed(f, g);
    for (const Projectivity& x : g) EXPECT_TRUE(preserves_conic(plane, x));
    const GroupId id = identify_group(f, g);
    EXPECT_EQ(id.tag, GroupTag::PGL);
    EXPECT_EQ(id.param, q);
    if (q > 3) {
      const ElementSet s = closure(f, all_involutions(plane, 1));
      EXPECT_EQ(s.size(), q * (q * q - 1) / 2);
      EXPECT_EQ(identify_group(f, s).label(), "PSL(2," + std::to_string(q) + ")");
      // Products of two non-PSL involutions stay in PSL.
      const auto out = all_involutions(plane, 0);
      for (std::size_t i = 0; i + 1 < out.size(); i += 3) EXPECT_TRUE(s.contains(proj::mul(f, out[i], out[i + 1])));
    }
  }
}

TEST(Group, DihedralOrderLaw) {
  for (const auto [p, n] : std::vector<Q>{{7, 1}, {3, 2}, {11, 1}}) {
    const Plane plane(Field::build(p, n));
    const Field& f = plane.field();
    const InvolutionTable inv(plane);
    const auto& off = plane.off_conic_points();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      const PointId a = off[rng() % off.size()], b = off[rng() % off.size()];
      if (a == b) continue;
      const unsigned m = product_order(f, inv.at(a), inv.at(b));
      const ElementSet h = closure(f, {inv.at(a).map, inv.at(b).map});
      EXPECT_EQ(h.size(), 2U * m);
      const GroupId id = identify_group(f, h);
      if (m == 2) {
        EXPECT_EQ(id.tag, GroupTag::Klein4);
      } else {
        EXPECT_EQ(id.label(), "Dihedral(" + std::to_string(m) + ")");
      }
    }
  }
}

TEST(Group, SubfieldGroupIsRecognised) {
  const Plane plane(Field::build(3, 2));
  const Field& f = plane.field();
  // Centers with coordinates in GF(3) give the subfield group PGL(2,3).
  std::vector<Projectivity> gens;
  for (PointId id : plane.off_conic_points()) {
    const ProjPoint x = plane.point_at(id);
    if (x.x[0].v < 3 && x.x[1].v < 3 && x.x[2].v < 3) gens.push_back(involution_from_center(plane, x).map);
  }
  const GroupId id = identify_group(f, closure(f, gens));
  EXPECT_EQ(id.label(), "PGL(2,3)");
  EXPECT_EQ(id.stats.order, 24U);
}

TEST(Group, BudgetAndClosureErrors) {
  const Plane plane(Field::build(7, 1));
  const Field& f = plane.field();
  try {
    closure(f, all_involutions(plane), 100);
    FAIL();
  } catch (const BudgetExceededError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    EXPECT_EQ(e.partial_size(), 100U);
  }
  ElementSet partial;
  partial.insert(proj::identity(f));
  partial.insert(involution_from_center(plane, plane.point_at(plane.off_conic_points()[0])).map);
  partial.insert(involution_from_center(plane, plane.point_at(plane.off_conic_points()[1])).map);
  try {
    require_closed(f, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotClosed);
  }
}

TEST(Group, ProductsAndIntersections) {
  const Plane plane(Field::build(5, 1));
  const Field& f = plane.field();
  const InvolutionTable inv(plane);
  const auto& off = plane.off_conic_points();
  const ElementSet a = closure(f, {inv.at(off[0]).map, inv.at(off[1]).map});
  const ElementSet b = closure(f, {inv.at(off[0]).map, inv.at(off[2]).map});
  const ElementSet m = intersect(a, b);
  EXPECT_TRUE(m.contains(proj::identity(f)));
  EXPECT_TRUE(m.contains(inv.at(off[0]).map));
  const ElementSet ab = set_product(f, a, b);
  EXPECT_EQ(ab.size(), a.size() * b.size() / m.size());
}

// Stabilizers of two distinct lines: the trichotomy by line types and meet point.
TEST(Group, StabilizerIntersections) {
  for (const auto [p, n, pairs] : std::vector<std::array<unsigned, 3>>{{5, 1, 0}, {3, 2, 200}}) {
    const Plane plane(Field::build(p, n));
    const Field& f = plane.field();
    const std::size_t q = f.q();
    const ElementSet g = closure(f, all_involutions(plane));
    std::vector<ElementSet> stab(plane.size());
    for (LineId l = 0; l < plane.size(); ++l) {
      for (const Projectivity& x : g) {
        if (proj::apply(plane, x, plane.line_at(l)) == plane.line_at(l)) stab[l].insert(x);
      }
    }
    std::vector<std::pair<LineId, LineId>> work;
    if (pairs == 0) {
      for (LineId a = 0; a < plane.size(); ++a) {
        for (LineId b = a + 1; b < plane.size(); ++b) work.emplace_back(a, b);
      }
    } else {
      std::mt19937_64 rng(11);
      while (work.size() < pairs) {
        const LineId a = rng() % plane.size(), b = rng() % plane.size();
        if (a != b) work.emplace_back(a, b);
      }
    }
    for (const auto& [a, b] : work) {
      const ProjLine la = plane.line_at(a), lb = plane.line_at(b);
      const ElementSet h = intersect(stab[a], stab[b]);
      const ProjPoint pt = plane.meet(la, lb);
      const bool ta = plane.classify_line(la) == LineType::Tangent;
      const bool tb = plane.classify_line(lb) == LineType::Tangent;
      if (ta && tb) {
        EXPECT_EQ(h.size(), q - 1);
        EXPECT_TRUE(is_cyclic(f, h));
      } else if (ta || tb) {
        EXPECT_EQ(h.size(), plane.on_conic(pt) ? q - 1 : 2);
        EXPECT_TRUE(is_cyclic(f, h));
      } else if (plane.on_conic(pt)) {
        // Two secants through a conic point: no involution has center P, and
        // the intersection fixes three conic points, so it is trivial.
        EXPECT_EQ(h.size(), 1U);
      } else {
        const Involution ap = involution_from_center(plane, pt);
        ASSERT_TRUE(h.size() == 2 || h.size() == 4);
        EXPECT_TRUE(h.contains(ap.map));
        if (h.size() == 4) {
          EXPECT_TRUE(h.contains(involution_from_center(plane, plane.meet(la, ap.axis)).map));
          EXPECT_TRUE(h.contains(involution_from_center(plane, plane.meet(lb, ap.axis)).map));
        }
      }
    }
  }
}
