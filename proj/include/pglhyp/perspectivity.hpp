#pragma once

// Involutions of the conic stabilizer G = PGL(2,q). Each one is a
// perspectivity whose center P lies off the conic and whose axis is the
// polar of P; conversely every off-conic point is the center of exactly one.

#include <optional>
#include <utility>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/plane.hpp"
#include "pglhyp/projectivity.hpp"

namespace pglhyp {

struct Involution {
  Projectivity map;
  ProjPoint center;
  ProjLine axis;

  bool operator==(const Involution& o) const noexcept { return map == o.map; }
};

/// The reflection x -> x - (B(x,P)/Q(P)) P in the conic's bilinear form.
inline Involution involution_from_center(const Plane& plane, const ProjPoint& center) {
  const Field& f = plane.field();
  const Element qp = plane.conic_form(center.x);
  if (qp.v == 0) throw Error(ErrorKind::CenterOnConic, plane.format(center) + " lies on the conic");
  const ProjLine axis = plane.polar(center);
  const Element s = f.inv(qp);
  // B(x,P) = w . x with w the (unnormalized) polar coordinates of P.
  const Triple w{center.x[2], f.mul(f.from_int(-2), center.x[1]), center.x[0]};
  RawMatrix r = proj::raw_identity(f);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      r[i * 3 + j] = f.sub(r[i * 3 + j], f.mul(s, f.mul(center.x[i], w[j])));
    }
  }
  return Involution{proj::canonical(f, r), center, axis};
}

/// Number of conic points fixed by g.
inline unsigned fixed_conic_points(const Plane& plane, const Projectivity& g) {
  unsigned fixed = 0;
  for (PointId c : plane.conic_points()) {
    const ProjPoint x = plane.point_at(c);
    if (proj::apply(plane, g, x) == x) ++fixed;
  }
  return fixed;
}

inline bool preserves_conic(const Plane& plane, const Projectivity& g) {
  for (PointId c : plane.conic_points()) {
    if (!plane.on_conic(proj::apply(plane, g, plane.point_at(c)))) return false;
  }
  return true;
}

/// True when g is projectively of order 2.
inline bool is_involution(const Field& f, const Projectivity& g) {
  return !proj::is_identity(f, g) && proj::is_identity(f, proj::mul(f, g, g));
}

/// Center (the 1-dimensional eigenspace) and axis (the 2-dimensional one)
/// of an involution fixing the conic. The representative is rescaled by its
/// trace, which turns it into the exact reflection with R^2 = I.
inline std::pair<ProjPoint, ProjLine> center_axis(const Plane& plane, const Projectivity& g) {
  const Field& f = plane.field();
  if (!is_involution(f, g)) throw Error(ErrorKind::NotAnInvolution, "matrix is not of order 2");
  const Element tr = f.add(f.add(g.m[0], g.m[4]), g.m[8]);
  if (tr.v == 0) throw Error(ErrorKind::NotAnInvolution, "trace-zero representative");
  const Element s = f.inv(tr);
  RawMatrix k;
  for (std::size_t i = 0; i < 9; ++i) k[i] = f.mul(g.m[i], s);
  if (proj::raw_mul(f, k, k) != proj::raw_identity(f)) {
    throw Error(ErrorKind::NotAnInvolution, "not a perspectivity of the expected shape");
  }
  for (std::size_t i = 0; i < 3; ++i) k[i * 3 + i] = f.sub(k[i * 3 + i], f.one());
  // k = R - I has rank one: columns span the center, rows give the axis.
  std::optional<Triple> col, row;
  for (std::size_t c = 0; c < 3 && !col; ++c) {
    const Triple v{k[c], k[3 + c], k[6 + c]};
    if (v[0].v || v[1].v || v[2].v) col = v;
  }
  for (std::size_t r = 0; r < 3 && !row; ++r) {
    const Triple v{k[r * 3], k[r * 3 + 1], k[r * 3 + 2]};
    if (v[0].v || v[1].v || v[2].v) row = v;
  }
  if (!col || !row) throw Error(ErrorKind::NotAnInvolution, "degenerate eigenspaces");
  if (!preserves_conic(plane, g)) throw Error(ErrorKind::NotAnInvolution, "does not fix the conic");
  return {plane.point(*col), plane.line(*row)};
}

/// Multiplicative order of a*b.
inline unsigned product_order(const Field& f, const Involution& a, const Involution& b) {
  return proj::order(f, proj::mul(f, a.map, b.map));
}

/// PSL(2,q) membership from the number of fixed conic points: PSL
/// involutions fix 2 conic points when q = 1 (mod 4) and none when q = 3 (mod 4).
inline bool in_psl(const Plane& plane, const Involution& a) {
  const unsigned fixed = fixed_conic_points(plane, a.map);
  return (plane.q() % 4 == 1) ? fixed == 2 : fixed == 0;
}

/// All q^2 involutions of G indexed by their center's point id, with their
/// PSL flags, built once and shared read-only.
class InvolutionTable {
 public:
  explicit InvolutionTable(const Plane& plane) : plane_(&plane) {
    by_point_.resize(plane.size());
    psl_.assign(plane.size(), 0);
    for (PointId id : plane.off_conic_points()) {
      by_point_[id] = involution_from_center(plane, plane.point_at(id));
      psl_[id] = pglhyp::in_psl(plane, *by_point_[id]) ? 1 : 0;
    }
  }

  const Plane& plane() const noexcept { return *plane_; }

  const Involution& at(PointId center) const {
    if (center >= by_point_.size() || !by_point_[center]) {
      throw Error(ErrorKind::CenterOnConic, "no involution with center id " + std::to_string(center));
    }
    return *by_point_[center];
  }

  bool in_psl(PointId center) const {
    at(center);
    return psl_[center] != 0;
  }

 private:
  const Plane* plane_;
  std::vector<std::optional<Involution>> by_point_;
  std::vector<std::uint8_t> psl_;
};

}  // namespace pglhyp
