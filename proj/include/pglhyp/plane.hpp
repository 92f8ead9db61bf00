#pragma once

// The projective plane PG(2,q), the conic x0*x2 = x1^2 and its polarity.
//
// Points and lines are homogeneous triples normalized so that the first
// nonzero coordinate is 1. Both are numbered by the same closed-form id:
//   (0,0,1) -> 0,  (0,1,b) -> 1 + b,  (1,a,b) -> 1 + q + a*q + b
// which is the increasing order of x0*q^2 + x1*q + x2 over normalized
// triples. That order is the canonical point order used for every
// tie-break downstream.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/gf.hpp"

namespace pglhyp {

using Triple = std::array<Element, 3>;
using PointId = std::uint32_t;
using LineId = std::uint32_t;

struct ProjPoint {
  Triple x;
  constexpr auto operator<=>(const ProjPoint&) const = default;
};

struct ProjLine {
  Triple x;
  constexpr auto operator<=>(const ProjLine&) const = default;
};

enum class LineType { Tangent, Secant, Exterior };
enum class PointType { OnConic, Exterior, Interior };

constexpr const char* to_string(LineType t) noexcept {
  switch (t) {
    case LineType::Tangent: return "Tangent";
    case LineType::Secant: return "Secant";
    case LineType::Exterior: return "Exterior";
  }
  return "?";
}

constexpr const char* to_string(PointType t) noexcept {
  switch (t) {
    case PointType::OnConic: return "OnConic";
    case PointType::Exterior: return "Exterior";
    case PointType::Interior: return "Interior";
  }
  return "?";
}

class Plane {
 public:
  explicit Plane(Field field) : field_(std::move(field)) {
    const unsigned q = field_.q();
    size_ = std::size_t{q} * q + q + 1;

    conic_.reserve(q + 1);
    conic_.push_back(id(ProjPoint{{field_.zero(), field_.zero(), field_.one()}}));
    for (unsigned t = 0; t < q; ++t) {
      const Element e{static_cast<std::uint16_t>(t)};
      conic_.push_back(id(ProjPoint{{field_.one(), e, field_.mul(e, e)}}));
    }
    std::sort(conic_.begin(), conic_.end());

    on_conic_.assign(size_, 0);
    for (PointId c : conic_) on_conic_[c] = 1;
    for (PointId i = 0; i < size_; ++i) {
      if (!on_conic_[i]) off_conic_.push_back(i);
    }

    // |l cap O| for every line, by counting conic incidences.
    conic_count_.assign(size_, 0);
    tangent_count_.assign(size_, 0);
    for (PointId c : conic_) {
      for (const ProjLine& l : lines_through(point_at(c))) ++conic_count_[id(l)];
      for (const ProjPoint& x : points_on(polar(point_at(c)))) ++tangent_count_[id(x)];
    }
  }

  const Field& field() const noexcept { return field_; }
  unsigned q() const noexcept { return field_.q(); }

  /// Number of points (equivalently lines): q^2 + q + 1.
  std::size_t size() const noexcept { return size_; }

  Triple normalize(Triple v) const {
    std::size_t lead = 0;
    while (lead < 3 && v[lead].v == 0) ++lead;
    if (lead == 3) throw Error(ErrorKind::InvalidArgument, "zero vector is not a projective point");
    if (v[lead] != field_.one()) {
      const Element s = field_.inv(v[lead]);
      for (std::size_t i = lead; i < 3; ++i) v[i] = field_.mul(v[i], s);
    }
    return v;
  }

  ProjPoint point(const Triple& raw) const { return ProjPoint{normalize(raw)}; }
  ProjLine line(const Triple& raw) const { return ProjLine{normalize(raw)}; }

  PointId id(const ProjPoint& p) const noexcept { return triple_id(p.x); }
  LineId id(const ProjLine& l) const noexcept { return triple_id(l.x); }

  ProjPoint point_at(PointId i) const { return ProjPoint{triple_at(i)}; }
  ProjLine line_at(LineId i) const { return ProjLine{triple_at(i)}; }

  Element dot(const Triple& a, const Triple& b) const noexcept {
    return field_.add(field_.add(field_.mul(a[0], b[0]), field_.mul(a[1], b[1])), field_.mul(a[2], b[2]));
  }

  Triple cross(const Triple& a, const Triple& b) const noexcept {
    const Field& f = field_;
    return {f.sub(f.mul(a[1], b[2]), f.mul(a[2], b[1])), f.sub(f.mul(a[2], b[0]), f.mul(a[0], b[2])),
            f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]))};
  }

  bool incident(const ProjPoint& p, const ProjLine& l) const noexcept { return dot(p.x, l.x).v == 0; }

  /// Q(x) = x0*x2 - x1^2.
  Element conic_form(const Triple& x) const noexcept {
    return field_.sub(field_.mul(x[0], x[2]), field_.mul(x[1], x[1]));
  }

  /// B(x,y) = x0*y2 + x2*y0 - 2*x1*y1, so that B(x,x) = 2 Q(x).
  Element bilinear(const Triple& x, const Triple& y) const noexcept {
    const Field& f = field_;
    const Element two = f.from_int(2);
    return f.sub(f.add(f.mul(x[0], y[2]), f.mul(x[2], y[0])), f.mul(two, f.mul(x[1], y[1])));
  }

  bool on_conic(const ProjPoint& p) const noexcept { return conic_form(p.x).v == 0; }
  bool on_conic(PointId i) const noexcept { return on_conic_[i] != 0; }

  ProjLine line_through(const ProjPoint& a, const ProjPoint& b) const {
    if (a == b) throw Error(ErrorKind::CoincidentPoints, "a line needs two distinct points");
    return line(cross(a.x, b.x));
  }

  ProjPoint meet(const ProjLine& l, const ProjLine& m) const {
    if (l == m) throw Error(ErrorKind::CoincidentPoints, "two distinct lines are needed to meet");
    return point(cross(l.x, m.x));
  }

  /// Line with coordinates B(P, .).
  ProjLine polar(const ProjPoint& p) const {
    const Field& f = field_;
    return line({p.x[2], f.mul(f.from_int(-2), p.x[1]), p.x[0]});
  }

  ProjPoint pole(const ProjLine& l) const {
    const Field& f = field_;
    return point({l.x[2], f.div(l.x[1], f.from_int(-2)), l.x[0]});
  }

  /// The q+1 points of a line, in canonical order.
  std::vector<ProjPoint> points_on(const ProjLine& l) const {
    std::array<Triple, 2> basis;
    std::size_t found = 0;
    for (std::size_t i = 0; i < 3 && found < 2; ++i) {
      Triple e{field_.zero(), field_.zero(), field_.zero()};
      e[i] = field_.one();
      const Triple v = cross(l.x, e);
      if (v[0].v == 0 && v[1].v == 0 && v[2].v == 0) continue;
      const Triple nv = normalize(v);
      if (found == 1 && nv == basis[0]) continue;
      basis[found++] = nv;
    }
    std::vector<ProjPoint> pts;
    pts.reserve(q() + 1);
    pts.push_back(ProjPoint{basis[0]});
    for (unsigned t = 0; t < q(); ++t) {
      const Element s{static_cast<std::uint16_t>(t)};
      Triple v;
      for (std::size_t i = 0; i < 3; ++i) v[i] = field_.add(basis[1][i], field_.mul(s, basis[0][i]));
      pts.push_back(point(v));
    }
    std::sort(pts.begin(), pts.end(), [this](const ProjPoint& a, const ProjPoint& b) { return id(a) < id(b); });
    return pts;
  }

  /// The q+1 lines through a point, in canonical order.
  std::vector<ProjLine> lines_through(const ProjPoint& p) const {
    std::vector<ProjLine> out;
    for (const ProjPoint& d : points_on(ProjLine{p.x})) out.push_back(ProjLine{d.x});
    return out;
  }

  /// |l cap O| by direct enumeration of the line.
  unsigned count_conic_points(const ProjLine& l) const {
    unsigned c = 0;
    for (const ProjPoint& x : points_on(l)) c += on_conic(x) ? 1U : 0U;
    return c;
  }

  LineType classify_line(const ProjLine& l) const noexcept {
    switch (conic_count_[id(l)]) {
      case 1: return LineType::Tangent;
      case 2: return LineType::Secant;
      default: return LineType::Exterior;
    }
  }

  /// Number of tangent lines through P.
  unsigned tangents_through(const ProjPoint& p) const noexcept { return tangent_count_[id(p)]; }

  PointType classify_point(const ProjPoint& p) const noexcept {
    const PointId i = id(p);
    if (on_conic_[i]) return PointType::OnConic;
    return tangent_count_[i] > 0 ? PointType::Exterior : PointType::Interior;
  }

  const std::vector<PointId>& conic_points() const noexcept { return conic_; }
  const std::vector<PointId>& off_conic_points() const noexcept { return off_conic_; }

  std::string format(const Triple& x) const {
    return "[" + std::to_string(x[0].v) + "," + std::to_string(x[1].v) + "," + std::to_string(x[2].v) + "]";
  }
  std::string format(const ProjPoint& p) const { return format(p.x); }
  std::string format(const ProjLine& l) const { return format(l.x); }

 private:
  PointId triple_id(const Triple& x) const noexcept {
    const unsigned q = field_.q();
    if (x[0].v == 0) return x[1].v == 0 ? 0U : 1U + x[2].v;
    return 1U + q + static_cast<PointId>(x[1].v) * q + x[2].v;
  }

  Triple triple_at(PointId i) const {
    const unsigned q = field_.q();
    if (i >= size_) throw Error(ErrorKind::InvalidArgument, "point id out of range");
    const Element z = field_.zero(), o = field_.one();
    if (i == 0) return {z, z, o};
    if (i <= q) return {z, o, Element{static_cast<std::uint16_t>(i - 1)}};
    const PointId r = i - 1 - q;
    return {o, Element{static_cast<std::uint16_t>(r / q)}, Element{static_cast<std::uint16_t>(r % q)}};
  }

  Field field_;
  std::size_t size_ = 0;
  std::vector<PointId> conic_;
  std::vector<PointId> off_conic_;
  std::vector<std::uint8_t> on_conic_;
  std::vector<std::uint32_t> conic_count_;
  std::vector<std::uint32_t> tangent_count_;
};

}  // namespace pglhyp
