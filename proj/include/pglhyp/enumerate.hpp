#pragma once

// Sweeps over unordered triples of off-conic points.
//
// Off-conic points are numbered 0..q^2-1 in point-id order and a triple
// a < b < c is ranked colexicographically: C(a,1) + C(b,2) + C(c,3).

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/group.hpp"
#include "pglhyp/triangles.hpp"

namespace pglhyp {

enum class SweepMode { Full, OrbitReps, Sample };

constexpr const char* to_string(SweepMode m) noexcept {
  switch (m) {
    case SweepMode::Full: return "full";
    case SweepMode::OrbitReps: return "orbit-reps";
    case SweepMode::Sample: return "sample";
  }
  return "?";
}

struct SweepConfig {
  SweepMode mode = SweepMode::Full;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t budget = kDefaultBudget;
  bool group = true;
};

inline std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

inline std::uint64_t rank_triple(std::array<std::uint32_t, 3> t) {
  std::sort(t.begin(), t.end());
  const std::uint64_t a = t[0], b = t[1], c = t[2];
  return a + b * (b - 1) / 2 + c * (c - 1) * (c - 2) / 6;
}

inline std::array<std::uint32_t, 3> unrank_triple(std::uint64_t r) {
  std::uint64_t c = 2;
  while (choose3(c + 1) <= r) ++c;
  r -= choose3(c);
  std::uint64_t b = 1;
  while ((b + 1) * b / 2 <= r) ++b;
  r -= b * (b - 1) / 2;
  return {static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)};
}

struct TableKey {
  TriangleClass cls;
  std::string group;
  unsigned psl_count;
  auto operator<=>(const TableKey&) const = default;
};

struct TableCell {
  std::uint64_t count = 0;
  std::uint64_t hypertope = 0;
  bool operator==(const TableCell&) const = default;
};

/// Theorem-main mismatch: hypertope verdict differs from the class prediction.
struct Violation {
  std::array<PointId, 3> centers;
  TriangleClass cls;
  bool hypertope;
  std::uint64_t weight;
};

struct ClassificationTable {
  static constexpr std::size_t kMaxExamples = 16;

  SweepMode mode = SweepMode::Full;
  std::uint64_t seed = 0;
  std::uint64_t total_triples = 0;  // size of the whole space
  std::uint64_t covered = 0;        // triples accounted for (weighted in orbit mode)
  std::uint64_t classified = 0;     // triples actually classified
  std::map<TableKey, TableCell> cells;
  std::uint64_t violations = 0;
  std::vector<Violation> violation_examples;

  void add(const TriangleRecord& t, std::uint64_t weight) {
    TableKey key{t.cls, t.group ? t.group->label() : std::string("-"), t.psl_count()};
    TableCell& cell = cells[key];
    const bool hyp = t.hypertope();
    cell.count += weight;
    if (hyp) cell.hypertope += weight;
    covered += weight;
    ++classified;
    if (hyp != predicts_hypertope(t.cls)) {
      violations += weight;
      if (violation_examples.size() < kMaxExamples) violation_examples.push_back({t.centers, t.cls, hyp, weight});
    }
  }

  void merge(const ClassificationTable& o) {
    for (const auto& [k, c] : o.cells) {
      cells[k].count += c.count;
      cells[k].hypertope += c.hypertope;
    }
    covered += o.covered;
    classified += o.classified;
    violations += o.violations;
    violation_examples.insert(violation_examples.end(), o.violation_examples.begin(), o.violation_examples.end());
    // Keep the first examples in triple order, whatever the merge order.
    std::sort(violation_examples.begin(), violation_examples.end(), [](const Violation& a, const Violation& b) {
      return std::array{a.centers[2], a.centers[1], a.centers[0]} < std::array{b.centers[2], b.centers[1], b.centers[0]};
    });
    if (violation_examples.size() > kMaxExamples) violation_examples.resize(kMaxExamples);
  }

  std::map<TriangleClass, std::uint64_t> by_class() const {
    std::map<TriangleClass, std::uint64_t> out;
    for (const auto& [k, c] : cells) out[k.cls] += c.count;
    return out;
  }
  std::map<std::string, std::uint64_t> by_group() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [k, c] : cells) out[k.group] += c.count;
    return out;
  }
  std::map<unsigned, std::uint64_t> by_psl_count() const {
    std::map<unsigned, std::uint64_t> out;
    for (const auto& [k, c] : cells) out[k.psl_count] += c.count;
    return out;
  }
  /// Same distribution: identical cells.
  bool same_distribution(const ClassificationTable& o) const { return cells == o.cells; }
};

/// Lazily built <a_x, a_y> for x < y, keyed by the pair of off-conic indices.
class RankTwoCache {
 public:
  RankTwoCache(const Plane& plane, const InvolutionTable& inv, std::size_t budget)
      : plane_(&plane), inv_(&inv), budget_(budget) {}

  const RankTwo& get(PointId x, PointId y) {
    if (x > y) std::swap(x, y);
    const std::uint64_t key = (std::uint64_t{x} << 32U) | y;
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, make_rank_two(*plane_, inv_->at(x).map, inv_->at(y).map, budget_)).first;
    }
    return it->second;
  }

 private:
  const Plane* plane_;
  const InvolutionTable* inv_;
  std::size_t budget_;
  std::unordered_map<std::uint64_t, RankTwo> cache_;
};

/// The conic stabilizer G = PGL(2,q) as permutations of the off-conic points.
class StabilizerAction {
 public:
  StabilizerAction(const Plane& plane, const InvolutionTable& inv, std::size_t budget) {
    const Field& f = plane.field();
    const std::vector<PointId>& off = plane.off_conic_points();
    const std::size_t target = std::size_t{f.q()} * (std::size_t{f.q()} * f.q() - 1);
    std::vector<Projectivity> gens;
    ElementSet g;
    for (PointId id : off) {
      gens.push_back(inv.at(id).map);
      g = closure(f, gens, budget);
      if (g.size() == target) break;
    }
    std::vector<std::int64_t> index_of(plane.size(), -1);
    for (std::size_t i = 0; i < off.size(); ++i) index_of[off[i]] = static_cast<std::int64_t>(i);
    perms_.reserve(g.size());
    for (const Projectivity& x : g) {
      std::vector<std::uint32_t> perm(off.size());
      for (std::size_t i = 0; i < off.size(); ++i) {
        perm[i] = static_cast<std::uint32_t>(index_of[plane.id(proj::apply(plane, x, plane.point_at(off[i])))]);
      }
      perms_.push_back(std::move(perm));
    }
    order_ = g.size();
  }

  std::size_t order() const noexcept { return order_; }
  const std::vector<std::vector<std::uint32_t>>& permutations() const noexcept { return perms_; }

  /// Distinct ranks in the orbit of a triple.
  std::vector<std::uint64_t> orbit(const std::array<std::uint32_t, 3>& t) const {
    std::vector<std::uint64_t> out;
    out.reserve(perms_.size());
    for (const auto& p : perms_) out.push_back(rank_triple({p[t[0]], p[t[1]], p[t[2]]}));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::vector<std::vector<std::uint32_t>> perms_;
  std::size_t order_ = 0;
};

namespace detail {

/// Floyd's algorithm: `n` distinct values of [0, total), sorted. Draws are
/// mt19937_64 outputs reduced modulo (j + 1), which keeps the stream
/// reproducible independently of the standard library's distributions.
inline std::vector<std::uint64_t> sample_ranks(std::uint64_t total, std::uint64_t n, std::uint64_t seed) {
  if (n >= total) {
    std::vector<std::uint64_t> all(total);
    for (std::uint64_t i = 0; i < total; ++i) all[i] = i;
    return all;
  }
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  for (std::uint64_t j = total - n; j < total; ++j) {
    const std::uint64_t t = rng() % (j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Seeded sample of triple ranks, as used by the sample mode.
inline std::vector<std::uint64_t> sample_triple_ranks(const Plane& plane, std::uint64_t n, std::uint64_t seed) {
  return detail::sample_ranks(choose3(plane.off_conic_points().size()), n, seed);
}

inline std::array<PointId, 3> triple_points(const Plane& plane, std::uint64_t rank) {
  const auto t = unrank_triple(rank);
  const auto& off = plane.off_conic_points();
  return {off[t[0]], off[t[1]], off[t[2]]};
}

/// Classify a list of (rank, weight) work items, split across `jobs` threads.
inline ClassificationTable classify_ranks(const Plane& plane, const InvolutionTable& inv,
                                          const std::vector<std::pair<std::uint64_t, std::uint64_t>>& work,
                                          const SweepConfig& cfg) {
  const unsigned jobs = std::max(1U, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(work.size())));
  std::vector<ClassificationTable> parts(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned w) {
    try {
      RankTwoCache cache(plane, inv, cfg.budget);
      const ClassifyOptions opt{cfg.group, true, false, cfg.budget};
      for (std::size_t i = w; i < work.size(); i += jobs) {
        const std::array<PointId, 3> pts = triple_points(plane, work[i].first);
        const std::array<const RankTwo*, 3> pairs{&cache.get(pts[1], pts[2]), &cache.get(pts[0], pts[2]),
                                                  &cache.get(pts[0], pts[1])};
        parts[w].add(classify_triangle(plane, pts, opt, &pairs), work[i].second);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  ClassificationTable out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

inline ClassificationTable enumerate_triples(const Plane& plane, const SweepConfig& cfg) {
  const InvolutionTable inv(plane);
  const std::uint64_t total = choose3(plane.off_conic_points().size());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> work;
  switch (cfg.mode) {
    case SweepMode::Full:
      work.reserve(total);
      for (std::uint64_t r = 0; r < total; ++r) work.emplace_back(r, 1);
      break;
    case SweepMode::Sample:
      for (std::uint64_t r : sample_triple_ranks(plane, cfg.sample, cfg.seed)) work.emplace_back(r, 1);
      break;
    case SweepMode::OrbitReps: {
      // The least rank of each orbit represents it, weighted by orbit size.
      const StabilizerAction act(plane, inv, cfg.budget);
      std::vector<char> seen(total, 0);
      for (std::uint64_t r = 0; r < total; ++r) {
        if (seen[r]) continue;
        const std::vector<std::uint64_t> orb = act.orbit(unrank_triple(r));
        for (std::uint64_t s : orb) seen[s] = 1;
        work.emplace_back(r, orb.size());
      }
      break;
    }
  }
  ClassificationTable table = classify_ranks(plane, inv, work, cfg);
  table.mode = cfg.mode;
  table.seed = cfg.seed;
  table.total_triples = total;
  return table;
}

}  // namespace pglhyp
