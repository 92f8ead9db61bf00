#pragma once

// Projectivities of PG(2,q) as canonical 3x3 matrices: the first nonzero
// entry in row-major order is scaled to 1, so projective equality is plain
// array equality and hashing is O(1).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>

#include "pglhyp/error.hpp"
#include "pglhyp/gf.hpp"
#include "pglhyp/plane.hpp"

namespace pglhyp {

using RawMatrix = std::array<Element, 9>;

struct Projectivity {
  RawMatrix m;
  constexpr auto operator<=>(const Projectivity&) const = default;
};

struct ProjectivityHash {
  std::size_t operator()(const Projectivity& g) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (const Element& e : g.m) {
      h ^= e.v;
      h *= 0xBF58476D1CE4E5B9ULL;
      h ^= h >> 29U;
    }
    return static_cast<std::size_t>(h);
  }
};

namespace proj {

inline Projectivity canonical(const Field& f, RawMatrix a) {
  std::size_t lead = 0;
  while (lead < 9 && a[lead].v == 0) ++lead;
  if (lead == 9) throw Error(ErrorKind::InvalidArgument, "zero matrix is not a projectivity");
  if (a[lead] != f.one()) {
    const Element s = f.inv(a[lead]);
    for (std::size_t i = lead; i < 9; ++i) a[i] = f.mul(a[i], s);
  }
  return Projectivity{a};
}

inline RawMatrix raw_identity(const Field& f) {
  RawMatrix a{};
  a[0] = a[4] = a[8] = f.one();
  return a;
}

inline Projectivity identity(const Field& f) { return Projectivity{raw_identity(f)}; }

inline bool is_identity(const Field& f, const Projectivity& g) { return g.m == raw_identity(f); }

inline RawMatrix raw_mul(const Field& f, const RawMatrix& a, const RawMatrix& b) {
  RawMatrix c;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t col = 0; col < 3; ++col) {
      c[r * 3 + col] = f.add(f.add(f.mul(a[r * 3], b[col]), f.mul(a[r * 3 + 1], b[3 + col])),
                             f.mul(a[r * 3 + 2], b[6 + col]));
    }
  }
  return c;
}

inline Projectivity mul(const Field& f, const Projectivity& a, const Projectivity& b) {
  return canonical(f, raw_mul(f, a.m, b.m));
}

inline Element det(const Field& f, const RawMatrix& a) {
  auto m = [&](Element x, Element y) { return f.mul(x, y); };
  const Element t0 = f.sub(m(a[4], a[8]), m(a[5], a[7]));
  const Element t1 = f.sub(m(a[3], a[8]), m(a[5], a[6]));
  const Element t2 = f.sub(m(a[3], a[7]), m(a[4], a[6]));
  return f.add(f.sub(m(a[0], t0), m(a[1], t1)), m(a[2], t2));
}

/// Adjugate; equals det * inverse.
inline RawMatrix adjugate(const Field& f, const RawMatrix& a) {
  auto cof = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    return f.sub(f.mul(a[r0 * 3 + c0], a[r1 * 3 + c1]), f.mul(a[r0 * 3 + c1], a[r1 * 3 + c0]));
  };
  RawMatrix adj;
  adj[0] = cof(1, 2, 1, 2);
  adj[1] = f.neg(cof(0, 2, 1, 2));
  adj[2] = cof(0, 1, 1, 2);
  adj[3] = f.neg(cof(1, 2, 0, 2));
  adj[4] = cof(0, 2, 0, 2);
  adj[5] = f.neg(cof(0, 1, 0, 2));
  adj[6] = cof(1, 2, 0, 1);
  adj[7] = f.neg(cof(0, 2, 0, 1));
  adj[8] = cof(0, 1, 0, 1);
  return adj;
}

inline Projectivity inverse(const Field& f, const Projectivity& g) {
  if (det(f, g.m).v == 0) throw Error(ErrorKind::InvalidArgument, "singular matrix");
  return canonical(f, adjugate(f, g.m));
}

inline Projectivity conjugate(const Field& f, const Projectivity& g, const Projectivity& h) {
  // g h g^-1
  return canonical(f, raw_mul(f, raw_mul(f, g.m, h.m), adjugate(f, g.m)));
}

inline Triple apply(const Field& f, const RawMatrix& a, const Triple& x) {
  Triple y;
  for (std::size_t r = 0; r < 3; ++r) {
    y[r] = f.add(f.add(f.mul(a[r * 3], x[0]), f.mul(a[r * 3 + 1], x[1])), f.mul(a[r * 3 + 2], x[2]));
  }
  return y;
}

inline ProjPoint apply(const Plane& plane, const Projectivity& g, const ProjPoint& p) {
  return plane.point(apply(plane.field(), g.m, p.x));
}

/// Image of a line: coordinates transform by the inverse transpose.
inline ProjLine apply(const Plane& plane, const Projectivity& g, const ProjLine& l) {
  const Field& f = plane.field();
  const RawMatrix adj = adjugate(f, g.m);
  const RawMatrix adj_t{adj[0], adj[3], adj[6], adj[1], adj[4], adj[7], adj[2], adj[5], adj[8]};
  return plane.line(apply(f, adj_t, l.x));
}

/// Multiplicative order in PGL(3,q); throws if it exceeds `limit`.
inline unsigned order(const Field& f, const Projectivity& g, unsigned limit) {
  Projectivity x = g;
  for (unsigned k = 1; k <= limit; ++k) {
    if (is_identity(f, x)) return k;
    x = mul(f, x, g);
  }
  throw Error(ErrorKind::InvalidArgument, "element order exceeds " + std::to_string(limit));
}

/// Largest element order in PGL(2,q) is q+1; a safe bound for the conic stabilizer.
inline unsigned order(const Field& f, const Projectivity& g) { return order(f, g, f.q() + 1); }

}  // namespace proj
}  // namespace pglhyp
