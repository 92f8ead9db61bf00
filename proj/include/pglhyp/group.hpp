#pragma once

// Finite subgroups of the conic stabilizer as explicit element sets.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/gf.hpp"
#include "pglhyp/projectivity.hpp"

namespace pglhyp {

/// Elements in insertion order plus a hash index.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::vector<Projectivity> generators) : generators_(std::move(generators)) {}

  bool insert(const Projectivity& g) {
    const auto [it, fresh] = index_.emplace(g, static_cast<std::uint32_t>(elements_.size()));
    if (fresh) elements_.push_back(g);
    return fresh;
  }

  bool contains(const Projectivity& g) const { return index_.find(g) != index_.end(); }

  std::optional<std::size_t> index_of(const Projectivity& g) const {
    const auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const Projectivity& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Projectivity>& elements() const noexcept { return elements_; }
  const std::vector<Projectivity>& generators() const noexcept { return generators_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  /// Same elements, ignoring order.
  bool same_elements(const ElementSet& o) const {
    if (size() != o.size()) return false;
    return std::all_of(elements_.begin(), elements_.end(), [&](const Projectivity& g) { return o.contains(g); });
  }

 private:
  std::vector<Projectivity> elements_;
  std::vector<Projectivity> generators_;
  std::unordered_map<Projectivity, std::uint32_t, ProjectivityHash> index_;
};

inline constexpr std::size_t kDefaultBudget = 2'000'000;

/// Breadth-first closure from the identity under right multiplication by
/// the generators. Order of the result depends only on the generator order.
inline ElementSet closure(const Field& f, const std::vector<Projectivity>& generators,
                          std::size_t budget = kDefaultBudget) {
  if (budget == 0) throw Error(ErrorKind::InvalidArgument, "closure budget must be positive");
  ElementSet out(generators);
  out.insert(proj::identity(f));
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Projectivity x = out[head];
    for (const Projectivity& g : generators) {
      if (out.insert(proj::mul(f, x, g)) && out.size() > budget) {
        throw BudgetExceededError(out.size() - 1, budget);
      }
    }
  }
  return out;
}

inline ElementSet set_product(const Field& f, const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (const Projectivity& x : a) {
    for (const Projectivity& y : b) out.insert(proj::mul(f, x, y));
  }
  return out;
}

/// Elements of `a` that lie in `b`, in `a`'s order.
inline ElementSet intersect(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  for (const Projectivity& x : a) {
    if (b.contains(x)) out.insert(x);
  }
  return out;
}

enum class GroupTag { Klein4, Dihedral, C2xDihedral, SubAGL, PSL, PGL, A4, A5, S4, Unknown };

constexpr const char* to_string(GroupTag t) noexcept {
  switch (t) {
    case GroupTag::Klein4: return "Klein4";
    case GroupTag::Dihedral: return "Dihedral";
    case GroupTag::C2xDihedral: return "C2xDihedral";
    case GroupTag::SubAGL: return "SubAGL";
    case GroupTag::PSL: return "PSL";
    case GroupTag::PGL: return "PGL";
    case GroupTag::A4: return "A4";
    case GroupTag::A5: return "A5";
    case GroupTag::S4: return "S4";
    case GroupTag::Unknown: return "Unknown";
  }
  return "?";
}

struct GroupStats {
  std::size_t order = 0;
  unsigned max_elt_order = 0;
  std::size_t n_involutions = 0;
  auto operator<=>(const GroupStats&) const = default;
};

/// `param` is q0 for PSL/PGL, m for the dihedral families and p^k for SubAGL.
struct GroupId {
  GroupTag tag = GroupTag::Unknown;
  unsigned param = 0;
  GroupStats stats;

  std::string label() const {
    switch (tag) {
      case GroupTag::PSL:
      case GroupTag::PGL: return std::string(to_string(tag)) + "(2," + std::to_string(param) + ")";
      case GroupTag::Dihedral:
      case GroupTag::C2xDihedral:
      case GroupTag::SubAGL: return std::string(to_string(tag)) + "(" + std::to_string(param) + ")";
      default: return to_string(tag);
    }
  }
  bool operator==(const GroupId& o) const { return tag == o.tag && param == o.param && stats == o.stats; }
};

/// Throws NotClosed unless H contains the identity and is stable under
/// multiplication (by its generators when recorded, else by every element).
inline void require_closed(const Field& f, const ElementSet& h) {
  if (!h.contains(proj::identity(f))) throw Error(ErrorKind::NotClosed, "identity missing");
  const std::vector<Projectivity>& by = h.generators().empty() ? h.elements() : h.generators();
  for (const Projectivity& x : h) {
    for (const Projectivity& g : by) {
      if (!h.contains(proj::mul(f, x, g))) throw Error(ErrorKind::NotClosed, "set is not closed under products");
    }
  }
}

inline GroupStats group_stats(const Field& f, const ElementSet& h) {
  GroupStats s;
  s.order = h.size();
  for (const Projectivity& x : h) {
    const unsigned o = proj::order(f, x, static_cast<unsigned>(h.size()));
    s.max_elt_order = std::max(s.max_elt_order, o);
    if (o == 2) ++s.n_involutions;
  }
  return s;
}

namespace detail {

struct Candidate {
  GroupTag tag;
  unsigned param;
  GroupStats stats;
  int iso_class;  // candidates sharing a class are isomorphic
};

inline std::vector<Candidate> group_candidates(const Field& f, const GroupStats& s) {
  std::vector<Candidate> out;
  const unsigned p = f.p();
  auto iso = [](GroupTag t, unsigned param) -> int {
    // Small coincidences among the families on the candidate list.
    if ((t == GroupTag::PSL && param == 3) || t == GroupTag::A4) return 1;
    if ((t == GroupTag::PGL && param == 3) || t == GroupTag::S4) return 2;
    if ((t == GroupTag::PSL && param == 5) || t == GroupTag::A5) return 3;
    if ((t == GroupTag::Dihedral && param == 2) || t == GroupTag::Klein4) return 4;
    return 100 + static_cast<int>(t) * 100000 + static_cast<int>(param);
  };
  auto push = [&](GroupTag t, unsigned param, std::size_t order, std::size_t inv, unsigned maxo) {
    if (s.order == order && s.n_involutions == inv && s.max_elt_order == maxo) {
      out.push_back({t, param, {order, maxo, inv}, iso(t, param)});
    }
  };
  unsigned q0 = 1;
  for (unsigned d = 1; d <= f.n(); ++d) {
    q0 *= p;
    if (f.n() % d != 0) continue;
    const std::size_t q0z = q0;
    push(GroupTag::PGL, q0, q0z * (q0z * q0z - 1), q0z * q0z, q0 + 1);
    push(GroupTag::PSL, q0, q0z * (q0z * q0z - 1) / 2, q0 % 4 == 1 ? q0z * (q0z + 1) / 2 : q0z * (q0z - 1) / 2,
         std::max(p, (q0 + 1) / 2));
  }
  push(GroupTag::A4, 0, 12, 3, 3);
  push(GroupTag::S4, 0, 24, 9, 4);
  push(GroupTag::A5, 0, 60, 15, 5);
  push(GroupTag::Klein4, 0, 4, 3, 2);
  if (s.order % 2 == 0 && s.order >= 2) {
    const std::size_t m = s.order / 2;
    if (m == 1) {
      push(GroupTag::Dihedral, 1, 2, 1, 2);
    } else {
      push(GroupTag::Dihedral, static_cast<unsigned>(m), 2 * m, m % 2 == 1 ? m : m + 1, static_cast<unsigned>(m));
    }
  }
  if (s.order % 8 == 0) {
    const std::size_t m = s.order / 4;
    push(GroupTag::C2xDihedral, static_cast<unsigned>(m), 4 * m, 2 * m + 3, static_cast<unsigned>(m));
  }
  std::size_t pk = p;
  for (unsigned k = 2; k <= f.n(); ++k) {
    pk *= p;
    push(GroupTag::SubAGL, static_cast<unsigned>(pk), 2 * pk, pk, p);
  }
  return out;
}

}  // namespace detail

/// Matches order, involution count and maximal element order against the
/// candidate families. Isomorphic coincidences resolve to the first family
/// in PGL/PSL, A4/S4/A5, Klein4, Dihedral, C2xDihedral, SubAGL order;
/// genuinely ambiguous statistics come back as Unknown.
inline GroupId identify_group(const Field& f, const ElementSet& h) {
  require_closed(f, h);
  const GroupStats s = group_stats(f, h);
  const std::vector<detail::Candidate> cands = detail::group_candidates(f, s);
  GroupId id;
  id.stats = s;
  if (cands.empty()) return id;
  const bool consistent = std::all_of(cands.begin(), cands.end(),
                                      [&](const detail::Candidate& c) { return c.iso_class == cands[0].iso_class; });
  if (!consistent) return id;
  id.tag = cands[0].tag;
  id.param = cands[0].param;
  return id;
}

}  // namespace pglhyp
