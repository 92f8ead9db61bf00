#pragma once

// Semilinear collineations x -> M phi^k(x) with phi the Frobenius map, and
// correlations of coset geometries induced by generator-permuting
// automorphisms.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/geometry.hpp"
#include "pglhyp/group.hpp"
#include "pglhyp/triangles.hpp"

namespace pglhyp {

struct Collineation {
  Projectivity matrix;
  unsigned frob = 0;  // power k of x -> x^p
  bool operator==(const Collineation&) const = default;
};

namespace coll {

inline RawMatrix frobenius(const Field& f, const RawMatrix& m, unsigned k) {
  RawMatrix out;
  for (std::size_t i = 0; i < 9; ++i) out[i] = f.frobenius(m[i], k);
  return out;
}

inline Triple frobenius(const Field& f, const Triple& x, unsigned k) {
  return {f.frobenius(x[0], k), f.frobenius(x[1], k), f.frobenius(x[2], k)};
}

inline Collineation identity(const Field& f) { return {proj::identity(f), 0}; }

/// (M1, k1) after (M2, k2) = (M1 phi^k1(M2), k1 + k2).
inline Collineation compose(const Field& f, const Collineation& a, const Collineation& b) {
  return {proj::mul(f, a.matrix, Projectivity{frobenius(f, b.matrix.m, a.frob)}), (a.frob + b.frob) % f.n()};
}

inline ProjPoint apply(const Plane& plane, const Collineation& c, const ProjPoint& p) {
  const Field& f = plane.field();
  return plane.point(proj::apply(f, c.matrix.m, frobenius(f, p.x, c.frob)));
}

inline ProjLine apply(const Plane& plane, const Collineation& c, const ProjLine& l) {
  const Field& f = plane.field();
  return proj::apply(plane, c.matrix, ProjLine{frobenius(f, l.x, c.frob)});
}

/// c g c^-1 for a projectivity g: M phi^k(g) M^-1.
inline Projectivity conjugate(const Field& f, const Collineation& c, const Projectivity& g) {
  return proj::conjugate(f, c.matrix, Projectivity{frobenius(f, g.m, c.frob)});
}

inline unsigned order(const Field& f, const Collineation& c, unsigned limit = 64) {
  Collineation x = c;
  const Collineation e = identity(f);
  for (unsigned k = 1; k <= limit; ++k) {
    if (x == e) return k;
    x = compose(f, c, x);
  }
  throw Error(ErrorKind::InvalidArgument, "collineation order exceeds " + std::to_string(limit));
}

}  // namespace coll

/// x -> x^(p^k) on coordinates.
inline Collineation frobenius_collineation(const Field& f, unsigned k) {
  if (k < 1 || k >= f.n()) {
    throw Error(ErrorKind::InvalidPower, "Frobenius power must satisfy 1 <= k < n = " + std::to_string(f.n()));
  }
  return {proj::identity(f), k};
}

struct TauTriangle {
  std::array<PointId, 3> conic_points{};  // A, tau(A), tau^2(A)
  TriangleRecord record;                  // centers P, tau(P), tau^2(P)
};

/// Tangent triangle on A, tau(A), tau^2(A): P = t(A) cap t(tau A), Q = tau(P), R = tau(Q).
inline TauTriangle tau_triangle(const Plane& plane, PointId a, const Collineation& tau, const ClassifyOptions& opt = {}) {
  const Field& f = plane.field();
  if (a >= plane.size() || !plane.on_conic(a)) throw Error(ErrorKind::PointsNotOnConic, "A must lie on the conic");
  if (coll::order(f, tau) != 3) throw Error(ErrorKind::InvalidArgument, "tau must have order 3");
  const ProjPoint pa = plane.point_at(a);
  const ProjPoint pb = coll::apply(plane, tau, pa);
  if (pb == pa) throw Error(ErrorKind::FixedConicPoint, plane.format(pa) + " is fixed by tau");
  const ProjPoint pc = coll::apply(plane, tau, pb);
  TauTriangle t;
  t.conic_points = {a, plane.id(pb), plane.id(pc)};
  const ProjPoint p = plane.meet(plane.polar(pa), plane.polar(pb));
  const ProjPoint q = coll::apply(plane, tau, p);
  const ProjPoint r = coll::apply(plane, tau, q);
  t.record = classify_triangle(plane, {plane.id(p), plane.id(q), plane.id(r)}, opt);
  return t;
}

using Sigma = std::array<unsigned, 3>;

inline constexpr std::array<Sigma, 6> kSymmetricGroup{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

enum class WitnessSource { Inner, Field };

constexpr const char* to_string(WitnessSource s) noexcept { return s == WitnessSource::Inner ? "Inner" : "Field"; }

struct CorrelationWitness {
  Sigma sigma{};
  Projectivity g;
  std::size_t index = 0;  // position of g in H
  WitnessSource source = WitnessSource::Inner;
};

inline bool permutes_generators(const Field& f, const Projectivity& g, const Generators& a, const Sigma& sigma) {
  for (unsigned i = 0; i < 3; ++i) {
    if (proj::conjugate(f, g, a[i]) != a[sigma[i]]) return false;
  }
  return true;
}

/// First g of H (in closure order) with g a_i g^-1 = a_sigma(i) for all i.
inline std::optional<CorrelationWitness> correlation_witness(const Field& f, const ElementSet& h, const Generators& a,
                                                             const Sigma& sigma) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (permutes_generators(f, h[i], a, sigma)) return CorrelationWitness{sigma, h[i], i, WitnessSource::Inner};
  }
  return std::nullopt;
}

/// First g of H with g phi^k(a_i) g^-1 = a_sigma(i): conjugation by g after
/// the field map phi^k, for 1 <= k < n.
inline std::optional<CorrelationWitness> field_correlation_witness(const Field& f, const ElementSet& h,
                                                                   const Generators& a, const Sigma& sigma,
                                                                   unsigned k) {
  const Collineation phi = frobenius_collineation(f, k);
  const Generators b{coll::conjugate(f, phi, a[0]), coll::conjugate(f, phi, a[1]), coll::conjugate(f, phi, a[2])};
  for (std::size_t i = 0; i < h.size(); ++i) {
    bool ok = true;
    for (unsigned j = 0; j < 3 && ok; ++j) ok = proj::conjugate(f, h[i], b[j]) == a[sigma[j]];
    if (ok) return CorrelationWitness{sigma, h[i], i, WitnessSource::Field};
  }
  return std::nullopt;
}

inline std::size_t count_witnesses(const Field& f, const ElementSet& h, const Generators& a, const Sigma& sigma) {
  std::size_t n = 0;
  for (const Projectivity& g : h) n += permutes_generators(f, g, a, sigma) ? 1 : 0;
  return n;
}

/// The induced map H_i x -> H_sigma(i) (g x g^-1) on the coset geometry is
/// a type-permuting bijection that preserves incidence.
inline bool witness_preserves_incidence(const Field& f, const ElementSet& h, const CosetGeometry& geo,
                                        const CorrelationWitness& w) {
  std::vector<std::uint32_t> image(h.size());
  for (std::uint32_t e = 0; e < h.size(); ++e) {
    const auto idx = h.index_of(proj::conjugate(f, w.g, h[e]));
    if (!idx) return false;
    image[e] = static_cast<std::uint32_t>(*idx);
  }
  std::array<std::vector<std::uint32_t>, 3> map;
  for (unsigned t = 0; t < 3; ++t) {
    const unsigned s = w.sigma[t];
    if (geo.count(t) != geo.count(s)) return false;
    map[t].assign(geo.count(t), UINT32_MAX);
    std::vector<char> hit(geo.count(s), 0);
    for (std::uint32_t c = 0; c < geo.count(t); ++c) {
      const std::uint32_t target = geo.coset_of[s][image[geo.cosets[t][c][0]]];
      // Well defined: every member of the coset lands in the same image coset.
      for (std::uint32_t m : geo.cosets[t][c]) {
        if (geo.coset_of[s][image[m]] != target) return false;
      }
      if (hit[target]) return false;
      hit[target] = 1;
      map[t][c] = target;
    }
  }
  for (const auto& [s, x, t, y] : geo.incidence()) {
    if (!geo.incident(w.sigma[s], map[s][x], w.sigma[t], map[t][y])) return false;
  }
  return true;
}

struct TrialityReport {
  TauTriangle triangle;
  Sigma sigma{1, 2, 0};
  std::optional<CorrelationWitness> witness;
  std::size_t group_order = 0;
  std::size_t matches = 0;  // elements of H inducing sigma
  std::size_t checks = 0;   // h in H with g h g^-1 = tau(h)
  bool verified = false;
};

/// At q = p^3: conjugation by some g in H agrees with tau on all of H.
inline TrialityReport triality_projectivity_check(const Plane& plane, std::size_t budget = kDefaultBudget) {
  const Field& f = plane.field();
  if (f.n() != 3) throw Error(ErrorKind::InvalidPower, "the triality check needs q = p^3");
  const Collineation tau = frobenius_collineation(f, 1);
  std::optional<PointId> a;
  for (PointId c : plane.conic_points()) {
    if (coll::apply(plane, tau, plane.point_at(c)) != plane.point_at(c)) {
      a = c;
      break;
    }
  }
  if (!a) throw Error(ErrorKind::NoTauTriangle, "every conic point is fixed by tau");
  TrialityReport rep;
  rep.triangle = tau_triangle(plane, *a, tau, ClassifyOptions{true, true, true, budget});
  const Generators gens = rep.triangle.record.generators();
  // tau(a_i) = a_sigma(i) holds by construction; recover sigma from it.
  for (unsigned i = 0; i < 3; ++i) {
    const Projectivity img = coll::conjugate(f, tau, gens[i]);
    for (unsigned j = 0; j < 3; ++j) {
      if (gens[j] == img) rep.sigma[i] = j;
    }
  }
  const ElementSet h = closure(f, {gens[0], gens[1], gens[2]}, budget);
  rep.group_order = h.size();
  rep.witness = correlation_witness(f, h, gens, rep.sigma);
  rep.matches = count_witnesses(f, h, gens, rep.sigma);
  if (rep.witness) {
    for (const Projectivity& x : h) {
      if (proj::conjugate(f, rep.witness->g, x) == coll::conjugate(f, tau, x)) ++rep.checks;
    }
  }
  rep.verified = rep.witness.has_value() && rep.checks == h.size() && rep.matches == 1;
  return rep;
}

}  // namespace pglhyp
