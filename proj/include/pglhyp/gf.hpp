#pragma once

// Arithmetic in GF(p^n) for odd primes p.
//
// Elements are stored by their canonical integer encoding e = sum c_i p^i,
// where c_0 .. c_{n-1} are the coefficients of the representing polynomial
// modulo the field's defining polynomial. Prime-field residues 0 .. p-1
// therefore encode as themselves. All arithmetic goes through full
// addition/multiplication tables, which caps the field size.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pglhyp/error.hpp"

namespace pglhyp {

/// A field element by canonical encoding. Only meaningful together with
/// the Field that produced it.
struct Element {
  std::uint16_t v = 0;

  constexpr auto operator<=>(const Element&) const = default;
};

namespace detail {

using Poly = std::vector<unsigned>;  // little-endian coefficients mod p

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline unsigned inv_mod(unsigned a, unsigned p) {
  // p is prime, so a^(p-2) is the inverse.
  unsigned long long r = 1, b = a % p;
  unsigned e = p - 2;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return static_cast<unsigned>(r);
}

inline Poly poly_mod(Poly a, const Poly& f, unsigned p) {
  poly_trim(a);
  const std::size_t df = f.size() - 1;
  const unsigned lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    const unsigned coef = static_cast<unsigned>(1ULL * a.back() * lead_inv % p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<unsigned>((a[shift + i] + 1ULL * (p - coef) * f[i]) % p);
    }
    poly_trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<unsigned>((r[i + j] + 1ULL * a[i] * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), f, p);
}

inline Poly poly_powmod(Poly base, unsigned long long e, const Poly& f, unsigned p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1ULL) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1ULL;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, unsigned p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

/// Irreducibility of a monic polynomial of degree n over GF(p): no roots,
/// and for n >= 4 also gcd(x^(p^k) - x, f) = 1 for every k <= n/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return n == 1;
  for (unsigned x = 0; x < p; ++x) {
    unsigned long long acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return false;
  }
  if (n < 4) return true;
  Poly xpk{0, 1};
  for (std::size_t k = 1; k <= n / 2; ++k) {
    xpk = poly_powmod(xpk, p, f, p);
    Poly diff = xpk;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

}  // namespace detail

class Field {
 public:
  static constexpr unsigned kMaxOrder = 2500;

  /// Builds GF(p^n). Without an override the modulus is the smallest monic
  /// irreducible of degree n, comparing coefficient lists low degree first.
  /// For n = 1 the modulus is x by convention.
  static Field build(unsigned p, unsigned n,
                     const std::optional<std::vector<unsigned>>& modulus_override = std::nullopt) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "extension degree must be positive");
    if (p == 2) throw Error(ErrorKind::EvenCharacteristic, "characteristic 2 is not supported");
    if (!detail::is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    unsigned long long q = 1;
    for (unsigned i = 0; i < n; ++i) {
      q *= p;
      if (q > kMaxOrder) {
        throw Error(ErrorKind::FieldTooLarge,
                    "field order exceeds " + std::to_string(kMaxOrder));
      }
    }

    detail::Poly modulus;
    if (modulus_override) {
      modulus = *modulus_override;
      if (modulus.size() != n + 1 || modulus.back() != 1) {
        throw Error(ErrorKind::InvalidArgument, "modulus override must be monic of degree n");
      }
      for (unsigned c : modulus) {
        if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient out of range");
      }
      if (n > 1 && !detail::is_irreducible(modulus, p)) {
        throw Error(ErrorKind::ReducibleModulus, "modulus override is reducible");
      }
    } else if (n == 1) {
      modulus = {0, 1};
    } else {
      // Counter over (c_0, ..., c_{n-1}) with c_{n-1} fastest.
      for (unsigned long long k = 0; k < q; ++k) {
        detail::Poly cand(n + 1, 0);
        unsigned long long rest = k;
        for (unsigned i = n; i-- > 0;) {
          cand[i] = static_cast<unsigned>(rest % p);
          rest /= p;
        }
        cand[n] = 1;
        if (detail::is_irreducible(cand, p)) {
          modulus = std::move(cand);
          break;
        }
      }
    }
    return Field(p, n, static_cast<unsigned>(q), std::move(modulus));
  }

  unsigned p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  unsigned q() const noexcept { return q_; }
  const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

  Element zero() const noexcept { return Element{0}; }
  Element one() const noexcept { return Element{1}; }

  /// Element from its canonical encoding.
  Element element(unsigned encoding) const {
    if (encoding >= q_) {
      throw Error(ErrorKind::InvalidArgument,
                  "encoding " + std::to_string(encoding) + " outside [0, " + std::to_string(q_) + ")");
    }
    return Element{static_cast<std::uint16_t>(encoding)};
  }

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Element from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return Element{static_cast<std::uint16_t>(r)};
  }

  std::vector<unsigned> coeffs(Element x) const {
    std::vector<unsigned> c(n_);
    unsigned v = x.v;
    for (unsigned i = 0; i < n_; ++i) {
      c[i] = v % p_;
      v /= p_;
    }
    return c;
  }

  Element from_coeffs(std::span<const unsigned> c) const {
    if (c.size() != n_) throw Error(ErrorKind::InvalidArgument, "coefficient list must have length n");
    unsigned v = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p_) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
      v = v * p_ + c[i];
    }
    return Element{static_cast<std::uint16_t>(v)};
  }

  Element add(Element a, Element b) const noexcept { return Element{add_[a.v * q_ + b.v]}; }
  Element sub(Element a, Element b) const noexcept { return Element{add_[a.v * q_ + neg_[b.v]]}; }
  Element neg(Element a) const noexcept { return Element{neg_[a.v]}; }
  Element mul(Element a, Element b) const noexcept { return Element{mul_[a.v * q_ + b.v]}; }

  Element inv(Element a) const {
    if (a.v == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Element{inv_[a.v]};
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, unsigned long long e) const noexcept {
    Element r = one();
    while (e) {
      if (e & 1ULL) r = mul(r, a);
      a = mul(a, a);
      e >>= 1ULL;
    }
    return r;
  }

  /// x -> x^(p^k).
  Element frobenius(Element x, unsigned k) const noexcept {
    for (unsigned i = 0; i < k % n_; ++i) x = Element{frob_[x.v]};
    return x;
  }

  /// Multiplicative order of a nonzero element.
  unsigned order(Element a) const {
    if (a.v == 0) throw Error(ErrorKind::DivisionByZero, "order of zero");
    unsigned k = 1;
    for (Element x = a; x != one(); x = mul(x, a)) ++k;
    return k;
  }

 private:
  Field(unsigned p, unsigned n, unsigned q, std::vector<unsigned> modulus)
      : p_(p), n_(n), q_(q), modulus_(std::move(modulus)) {
    const std::size_t qq = std::size_t{q_} * q_;
    add_.resize(qq);
    mul_.resize(qq);
    neg_.resize(q_);
    inv_.resize(q_);
    frob_.resize(q_);

    std::vector<std::vector<unsigned>> digits(q_);
    for (unsigned a = 0; a < q_; ++a) digits[a] = coeffs(Element{static_cast<std::uint16_t>(a)});
    auto encode = [&](const std::vector<unsigned>& c) {
      unsigned v = 0;
      for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
      return static_cast<std::uint16_t>(v);
    };

    std::vector<unsigned> tmp(n_);
    for (unsigned a = 0; a < q_; ++a) {
      for (unsigned i = 0; i < n_; ++i) tmp[i] = (p_ - digits[a][i]) % p_;
      neg_[a] = encode(tmp);
      for (unsigned b = 0; b < q_; ++b) {
        for (unsigned i = 0; i < n_; ++i) tmp[i] = (digits[a][i] + digits[b][i]) % p_;
        add_[std::size_t{a} * q_ + b] = encode(tmp);
      }
    }

    if (n_ == 1) {
      for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = 0; b < q_; ++b) {
          mul_[std::size_t{a} * q_ + b] = static_cast<std::uint16_t>(1ULL * a * b % p_);
        }
      }
    } else {
      for (unsigned a = 0; a < q_; ++a) {
        for (unsigned b = a; b < q_; ++b) {
          detail::Poly pa(digits[a].begin(), digits[a].end());
          detail::Poly pb(digits[b].begin(), digits[b].end());
          detail::poly_trim(pa);
          detail::poly_trim(pb);
          detail::Poly r = detail::poly_mulmod(pa, pb, modulus_, p_);
          r.resize(n_, 0);
          const std::uint16_t v = encode(r);
          mul_[std::size_t{a} * q_ + b] = v;
          mul_[std::size_t{b} * q_ + a] = v;
        }
      }
    }

    for (unsigned a = 1; a < q_; ++a) {
      for (unsigned b = 1; b < q_; ++b) {
        if (mul_[std::size_t{a} * q_ + b] == 1) {
          inv_[a] = static_cast<std::uint16_t>(b);
          break;
        }
      }
    }
    for (unsigned a = 0; a < q_; ++a) frob_[a] = pow(Element{static_cast<std::uint16_t>(a)}, p_).v;
  }

  unsigned p_;
  unsigned n_;
  unsigned q_;
  std::vector<unsigned> modulus_;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> neg_;
  std::vector<std::uint16_t> inv_;
  std::vector<std::uint16_t> frob_;
};

}  // namespace pglhyp
