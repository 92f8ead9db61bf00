#pragma once

// Triples of involutions: geometric classification, the strongly non
// self-polar search, and the tangent / non-linear constructions.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/geometry.hpp"
#include "pglhyp/group.hpp"
#include "pglhyp/perspectivity.hpp"
#include "pglhyp/plane.hpp"

namespace pglhyp {

enum class TriangleClass { Collinear, NonProperPolarizedOK, NonProperViolating, ProperSNSP, ProperNotSNSP, SelfPolar };

constexpr const char* to_string(TriangleClass c) noexcept {
  switch (c) {
    case TriangleClass::Collinear: return "Collinear";
    case TriangleClass::NonProperPolarizedOK: return "NonProperPolarizedOK";
    case TriangleClass::NonProperViolating: return "NonProperViolating";
    case TriangleClass::ProperSNSP: return "ProperSNSP";
    case TriangleClass::ProperNotSNSP: return "ProperNotSNSP";
    case TriangleClass::SelfPolar: return "SelfPolar";
  }
  return "?";
}

inline constexpr std::array<TriangleClass, 6> kAllClasses{
    TriangleClass::Collinear,  TriangleClass::NonProperPolarizedOK, TriangleClass::NonProperViolating,
    TriangleClass::ProperSNSP, TriangleClass::ProperNotSNSP,        TriangleClass::SelfPolar};

/// Classes for which the hypertope verdict is expected to be true.
constexpr bool predicts_hypertope(TriangleClass c) noexcept {
  return c == TriangleClass::ProperSNSP || c == TriangleClass::NonProperPolarizedOK;
}

struct TriangleRecord {
  std::array<PointId, 3> centers{};
  std::array<Involution, 3> involutions;
  /// sides[k]: centers of the involutions of <a_i, a_j>, {i, j, k} = {0, 1, 2}, sorted.
  std::array<std::vector<PointId>, 3> sides;
  std::array<bool, 3> psl{};
  TriangleClass cls = TriangleClass::Collinear;
  bool proper = false;
  bool snsp = false;
  std::optional<std::array<PointId, 3>> witness;
  std::optional<GroupId> group;
  std::optional<CriteriaReport> criteria;
  std::optional<DiagramReport> diagram;

  bool hypertope() const { return criteria && criteria->hypertope(); }
  unsigned psl_count() const { return unsigned(psl[0]) + unsigned(psl[1]) + unsigned(psl[2]); }
  Generators generators() const { return {involutions[0].map, involutions[1].map, involutions[2].map}; }
};

struct ClassifyOptions {
  bool group = true;
  bool criteria = true;
  bool diagram = true;
  std::size_t budget = kDefaultBudget;
};

inline bool collinear(const Plane& plane, PointId a, PointId b, PointId c) {
  const Triple n = plane.cross(plane.point_at(a).x, plane.point_at(b).x);
  return plane.dot(n, plane.point_at(c).x).v == 0;
}

/// Centers of the involutions in an element set, sorted by point id.
inline std::vector<PointId> involution_centers(const Plane& plane, const ElementSet& h) {
  std::vector<PointId> out;
  for (const Projectivity& g : h) {
    if (is_involution(plane.field(), g)) out.push_back(plane.id(center_axis(plane, g).first));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True when the assignment X -> side sx, Y -> side sy, Z -> side sz is
/// V_i -> side j, V_j -> side i, pole(V_i V_j) -> side k for two commuting
/// vertices: that only restates a_i a_j in H_k and is not an obstruction.
inline bool restates_commuting_pair(const Plane& plane, const std::array<PointId, 3>& v,
                                    const std::array<PointId, 3>& on_side) {
  for (unsigned i = 0; i < 3; ++i) {
    for (unsigned j = 0; j < 3; ++j) {
      if (i == j || on_side[j] != v[i] || on_side[i] != v[j]) continue;
      const unsigned k = 3 - i - j;
      const ProjLine l = plane.line_through(plane.point_at(v[i]), plane.point_at(v[j]));
      if (on_side[k] == plane.id(plane.pole(l))) return true;
    }
  }
  return false;
}

/// First self-polar triangle (X, Y, Z) with X, Y, Z on three different
/// sides, scanning X in side 2 and Y in side 0 with Z tested against side 1,
/// then the two rotations of that assignment. Commutation of a_X and a_Y is
/// conjugacy of X and Y, and their product is the involution centered at the
/// pole of XY. Assignments that restate a commuting pair of the triangle's
/// own involutions are skipped.
inline std::optional<std::array<PointId, 3>> self_polar_on_sides(const Plane& plane, const std::array<PointId, 3>& v,
                                                                 const std::array<std::vector<PointId>, 3>& sides) {
  constexpr std::array<std::array<unsigned, 3>, 3> order{{{2, 0, 1}, {0, 1, 2}, {1, 2, 0}}};
  for (const auto& [sx, sy, sz] : order) {
    for (PointId x : sides[sx]) {
      const ProjPoint px = plane.point_at(x);
      for (PointId y : sides[sy]) {
        if (x == y) continue;
        const ProjPoint py = plane.point_at(y);
        if (plane.bilinear(px.x, py.x).v != 0) continue;
        const PointId z = plane.id(plane.pole(plane.line_through(px, py)));
        if (!std::binary_search(sides[sz].begin(), sides[sz].end(), z)) continue;
        std::array<PointId, 3> on_side{};
        on_side[sx] = x;
        on_side[sy] = y;
        on_side[sz] = z;
        if (!restates_commuting_pair(plane, v, on_side)) return std::array<PointId, 3>{x, y, z};
      }
    }
  }
  return std::nullopt;
}

/// A dihedral subgroup <a, b> together with its side (involution centers).
struct RankTwo {
  ElementSet group;
  std::vector<PointId> side;
};

inline RankTwo make_rank_two(const Plane& plane, const Projectivity& a, const Projectivity& b,
                             std::size_t budget = kDefaultBudget) {
  RankTwo r{closure(plane.field(), {a, b}, budget), {}};
  r.side = involution_centers(plane, r.group);
  return r;
}

/// Classification of the triple of involutions centered at P, Q, R, kept in
/// the given order. `pairs`, when given, supplies <a_i, a_j> for k = 0, 1, 2.
inline TriangleRecord classify_triangle(const Plane& plane, const std::array<PointId, 3>& pts,
                                        const ClassifyOptions& opt = {},
                                        const std::array<const RankTwo*, 3>* pairs = nullptr) {
  const Field& f = plane.field();
  for (PointId id : pts) {
    if (id >= plane.size()) throw Error(ErrorKind::DegenerateInput, "point id out of range");
    if (plane.on_conic(id)) throw Error(ErrorKind::DegenerateInput, plane.format(plane.point_at(id)) + " lies on the conic");
  }
  if (pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2]) {
    throw Error(ErrorKind::DegenerateInput, "the three centers must be distinct");
  }
  TriangleRecord t;
  t.centers = pts;
  for (unsigned i = 0; i < 3; ++i) {
    t.involutions[i] = involution_from_center(plane, plane.point_at(pts[i]));
    t.psl[i] = in_psl(plane, t.involutions[i]);
  }
  const Generators gens = t.generators();

  std::array<RankTwo, 3> own;
  std::array<const RankTwo*, 3> rk{};
  if (pairs != nullptr) {
    rk = *pairs;
  } else {
    own = {make_rank_two(plane, gens[1], gens[2], opt.budget), make_rank_two(plane, gens[0], gens[2], opt.budget),
           make_rank_two(plane, gens[0], gens[1], opt.budget)};
    rk = {&own[0], &own[1], &own[2]};
  }
  const std::array<const ElementSet*, 3> h{&rk[0]->group, &rk[1]->group, &rk[2]->group};
  for (unsigned k = 0; k < 3; ++k) t.sides[k] = rk[k]->side;

  const std::array<ProjPoint, 3> p{plane.point_at(pts[0]), plane.point_at(pts[1]), plane.point_at(pts[2])};
  if (collinear(plane, pts[0], pts[1], pts[2])) {
    t.cls = TriangleClass::Collinear;
  } else {
    unsigned polarized = 0;
    for (unsigned k = 0; k < 3; ++k) {
      const unsigned i = (k + 1) % 3, j = (k + 2) % 3;
      if (plane.polar(p[k]) == plane.line_through(p[i], p[j])) ++polarized;
    }
    t.proper = polarized == 0;
    t.witness = self_polar_on_sides(plane, pts, t.sides);
    t.snsp = !t.witness.has_value();
    if (polarized == 3) {
      t.cls = TriangleClass::SelfPolar;
      t.witness = pts;
    } else if (polarized > 0) {
      t.cls = t.snsp ? TriangleClass::NonProperPolarizedOK : TriangleClass::NonProperViolating;
    } else {
      t.cls = t.snsp ? TriangleClass::ProperSNSP : TriangleClass::ProperNotSNSP;
    }
  }

  if (opt.criteria) t.criteria = criteria_from_subgroups(f, gens, h);
  if (opt.diagram) t.diagram = diagram(f, gens);
  if (opt.group) t.group = identify_group(f, closure(f, {gens[0], gens[1], gens[2]}, opt.budget));
  return t;
}

/// Sufficient condition for strong non self-polarity: no involution in PSL.
inline bool not_psl_sufficient(const Plane& plane, const Involution& a, const Involution& b, const Involution& c) {
  if (collinear(plane, plane.id(a.center), plane.id(b.center), plane.id(c.center))) {
    throw Error(ErrorKind::CollinearCenters, "the three centers are collinear");
  }
  return !in_psl(plane, a) && !in_psl(plane, b) && !in_psl(plane, c);
}

/// P = t(A) cap t(B), Q = t(B) cap t(C), R = t(A) cap t(C) for tangents t.
inline std::array<PointId, 3> tangent_triangle_centers(const Plane& plane, PointId a, PointId b, PointId c) {
  for (PointId x : {a, b, c}) {
    if (x >= plane.size() || !plane.on_conic(x)) throw Error(ErrorKind::PointsNotOnConic, "tangent triangle needs conic points");
  }
  if (a == b || a == c || b == c) throw Error(ErrorKind::CoincidentConicPoints, "conic points must be distinct");
  const ProjLine ta = plane.polar(plane.point_at(a));
  const ProjLine tb = plane.polar(plane.point_at(b));
  const ProjLine tc = plane.polar(plane.point_at(c));
  return {plane.id(plane.meet(ta, tb)), plane.id(plane.meet(tb, tc)), plane.id(plane.meet(ta, tc))};
}

inline TriangleRecord construct_tangent_triangle(const Plane& plane, PointId a, PointId b, PointId c,
                                                 const ClassifyOptions& opt = {}) {
  return classify_triangle(plane, tangent_triangle_centers(plane, a, b, c), opt);
}

struct NonlinearConstruction {
  TriangleRecord record;
  LineType base_line = LineType::Secant;
  unsigned half_order = 0;  // m/2, the order of a_P a_Q
  unsigned rejected = 0;    // candidates meeting the stated conditions but failing verification
};

/// Follows the existence argument for a non-linear PGL(2,q) hypertope:
/// P outside PSL, a non-tangent line l through P (secant first), Q on l
/// with a_P a_Q of order m/2 where |Stab(l)| = m, then R outside PSL, off l,
/// whose polar avoids P and Q. Candidates are scanned in point order and
/// each is verified by closure.
///
/// An element of order q +- 1 lies outside PSL(2,q), so a_Q is necessarily
/// in PSL here; a_Q outside PSL would cap the order at (q +- 1)/2.
inline NonlinearConstruction construct_nonlinear_pgl(const Plane& plane, std::size_t budget = kDefaultBudget) {
  const Field& f = plane.field();
  const std::size_t pgl_order = std::size_t{f.q()} * (std::size_t{f.q()} * f.q() - 1);
  const InvolutionTable inv(plane);
  NonlinearConstruction out;
  for (PointId pid : plane.off_conic_points()) {
    if (inv.in_psl(pid)) continue;
    const ProjPoint p = plane.point_at(pid);
    for (LineType want : {LineType::Secant, LineType::Exterior}) {
      for (const ProjLine& l : plane.lines_through(p)) {
        if (plane.classify_line(l) != want) continue;
        const unsigned half = want == LineType::Secant ? f.q() - 1 : f.q() + 1;
        if (half <= 2) continue;
        for (const ProjPoint& qp : plane.points_on(l)) {
          const PointId qid = plane.id(qp);
          if (qid == pid || plane.on_conic(qid)) continue;
          if (product_order(f, inv.at(pid), inv.at(qid)) != half) continue;
          for (PointId rid : plane.off_conic_points()) {
            if (inv.in_psl(rid)) continue;
            const ProjPoint r = plane.point_at(rid);
            if (plane.incident(r, l)) continue;
            const ProjLine pr = plane.polar(r);
            if (plane.incident(p, pr) || plane.incident(qp, pr)) continue;
            TriangleRecord t = classify_triangle(plane, {pid, qid, rid}, ClassifyOptions{true, true, true, budget});
            const bool ok = t.group && t.group->stats.order == pgl_order && t.hypertope() && t.diagram &&
                            std::all_of(t.diagram->labels.begin(), t.diagram->labels.end(),
                                        [](unsigned x) { return x > 2; });
            if (!ok) {
              ++out.rejected;
              continue;
            }
            out.record = std::move(t);
            out.base_line = want;
            out.half_order = half;
            return out;
          }
        }
      }
    }
  }
  throw Error(ErrorKind::SearchExhausted, "no triangle satisfies the construction at q=" + std::to_string(f.q()));
}

}  // namespace pglhyp
