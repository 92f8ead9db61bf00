#pragma once

// Command-line runner. Every subcommand builds a Report, which is then
// emitted in the requested format to stdout or, atomically, to --out.
//
// Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
// 3 closure budget exceeded.

#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pglhyp/correlation.hpp"
#include "pglhyp/enumerate.hpp"
#include "pglhyp/error.hpp"
#include "pglhyp/geometry.hpp"
#include "pglhyp/gf.hpp"
#include "pglhyp/plane.hpp"
#include "pglhyp/report.hpp"
#include "pglhyp/triangles.hpp"

namespace pglhyp {

enum ExitCode : int { kExitOk = 0, kExitVerification = 1, kExitParse = 2, kExitBudget = 3 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"classify",     "enumerate", "verify-main",    "tangent",       "nonlinear-pgl",
                                              "triality",     "geometry",  "experiment-psl", "experiment-tau"};
  return names;
}

struct RunConfig {
  std::string command;
  unsigned p = 3;
  unsigned n = 1;
  std::optional<std::vector<unsigned>> modulus;
  std::string points;
  std::string mode = "full";
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t budget = kDefaultBudget;
  std::string out;
  std::string format = "json";
};

namespace cli_detail {

/// Splits "[a,b,c];[d,e,f]" (whitespace ignored) into integer lists.
inline std::vector<std::vector<unsigned>> parse_bracket_lists(const std::string& text) {
  std::vector<std::vector<unsigned>> out;
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s += c;
  }
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::ParseError, why + " in '" + text + "'"); };
  while (i < s.size()) {
    if (s[i] != '[') fail("expected '['");
    ++i;
    std::vector<unsigned> cur;
    while (true) {
      if (i >= s.size() || s[i] < '0' || s[i] > '9') fail("expected a digit");
      unsigned long v = 0;
      while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        v = v * 10 + static_cast<unsigned>(s[i] - '0');
        if (v > 1000000) fail("integer too large");
        ++i;
      }
      cur.push_back(static_cast<unsigned>(v));
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == ']') {
        ++i;
        break;
      }
      fail("expected ',' or ']'");
    }
    out.push_back(std::move(cur));
    if (i < s.size()) {
      if (s[i] != ';') fail("expected ';'");
      ++i;
    }
  }
  return out;
}

inline std::vector<ProjPoint> parse_points(const Plane& plane, const std::string& text) {
  std::vector<ProjPoint> pts;
  for (const auto& v : parse_bracket_lists(text)) {
    if (v.size() != 3) throw Error(ErrorKind::ParseError, "a point needs three coordinates");
    Triple t;
    for (unsigned i = 0; i < 3; ++i) {
      if (v[i] >= plane.q()) throw Error(ErrorKind::ParseError, "coordinate " + std::to_string(v[i]) + " is not below q");
      t[i] = plane.field().element(v[i]);
    }
    if (t[0].v == 0 && t[1].v == 0 && t[2].v == 0) throw Error(ErrorKind::ParseError, "the zero vector is not a point");
    pts.push_back(plane.point(t));
  }
  return pts;
}

inline std::array<ProjPoint, 3> three_points(const Plane& plane, const std::string& text) {
  const std::vector<ProjPoint> pts = parse_points(plane, text);
  if (pts.size() != 3) throw Error(ErrorKind::ParseError, "expected exactly three points");
  return {pts[0], pts[1], pts[2]};
}

inline SweepConfig sweep_config(const RunConfig& cfg) {
  SweepConfig s;
  if (cfg.mode == "full") {
    s.mode = SweepMode::Full;
  } else if (cfg.mode == "orbit-reps") {
    s.mode = SweepMode::OrbitReps;
  } else if (cfg.mode == "sample") {
    s.mode = SweepMode::Sample;
    if (cfg.sample == 0) throw Error(ErrorKind::ParseError, "--mode sample needs --sample N > 0");
  } else {
    throw Error(ErrorKind::ParseError, "unknown mode '" + cfg.mode + "'");
  }
  s.sample = cfg.sample;
  s.seed = cfg.seed;
  s.jobs = std::max(1U, cfg.jobs);
  s.budget = cfg.budget;
  return s;
}

inline Json header(const RunConfig& cfg, const Field& f) { return {{"command", cfg.command}, {"field", ser::field(f)}}; }

inline const std::vector<std::string>& triangle_header() {
  static const std::vector<std::string> h{"p0",    "p1",   "p2",    "class", "proper", "snsp", "psl_count", "group",
                                          "thin",  "rc",   "ft",    "hypertope", "labels"};
  return h;
}

inline std::vector<std::string> triangle_row(const Plane& plane, const TriangleRecord& t) {
  auto b = [](bool v) { return std::string(v ? "1" : "0"); };
  std::string labels = "-";
  if (t.diagram) {
    labels = std::to_string(t.diagram->labels[0]) + "," + std::to_string(t.diagram->labels[1]) + "," +
             std::to_string(t.diagram->labels[2]);
  }
  const CriteriaReport c = t.criteria.value_or(CriteriaReport{});
  return {plane.format(plane.point_at(t.centers[0])),
          plane.format(plane.point_at(t.centers[1])),
          plane.format(plane.point_at(t.centers[2])),
          to_string(t.cls),
          b(t.proper),
          b(t.snsp),
          std::to_string(t.psl_count()),
          t.group ? t.group->label() : "-",
          b(c.thin),
          b(c.residually_connected),
          b(c.flag_transitive),
          b(t.hypertope()),
          labels};
}

inline Report triangle_report(const RunConfig& cfg, const Plane& plane, const TriangleRecord& t) {
  Report r;
  r.json = header(cfg, plane.field());
  r.json["triangle"] = ser::triangle(plane, t);
  r.tsv_header = triangle_header();
  r.tsv_rows.push_back(triangle_row(plane, t));
  return r;
}

struct Built {
  ElementSet h;
  std::array<ElementSet, 3> subs;
  CosetGeometry geo;
};

inline Built build_geometry(const Field& f, const Generators& a, std::size_t budget) {
  Built b;
  b.h = closure(f, {a[0], a[1], a[2]}, budget);
  b.subs = rank2_subgroups(f, a, budget);
  b.geo = build_coset_geometry(f, b.h, {&b.subs[0], &b.subs[1], &b.subs[2]});
  return b;
}

/// Structured result for unusable point input; exit code stays 0.
inline Report degenerate_report(const RunConfig& cfg, const Plane& plane, const std::array<ProjPoint, 3>& pts,
                                const Error& e) {
  Report r;
  r.json = header(cfg, plane.field());
  r.json["verdict"] = "DegenerateInput";
  r.json["reason"] = e.what();
  r.json["points"] = Json::array();
  for (const ProjPoint& p : pts) r.json["points"].push_back(ser::triple(p.x));
  r.tsv_header = {"verdict", "reason"};
  r.tsv_rows.push_back({"DegenerateInput", e.what()});
  return r;
}

inline Report cmd_classify(const RunConfig& cfg, const Plane& plane) {
  const auto pts = three_points(plane, cfg.points);
  const std::array<PointId, 3> ids{plane.id(pts[0]), plane.id(pts[1]), plane.id(pts[2])};
  TriangleRecord t;
  try {
    t = classify_triangle(plane, ids, ClassifyOptions{true, true, true, cfg.budget});
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
    return degenerate_report(cfg, plane, pts, e);
  }
  const Built b = build_geometry(plane.field(), t.generators(), cfg.budget);
  t.diagram = diagram(plane.field(), t.generators(), &b.geo);
  Report r = triangle_report(cfg, plane, t);
  r.json["oracle"] = ser::oracle(graph_oracle(b.geo));
  return r;
}

inline Report table_report(const RunConfig& cfg, const Plane& plane, const ClassificationTable& t) {
  Report r;
  r.json = header(cfg, plane.field());
  r.json["table"] = ser::table(plane, t);
  r.tsv_header = ser::table_header();
  r.tsv_rows = ser::table_rows(t);
  return r;
}

inline Report cmd_enumerate(const RunConfig& cfg, const Plane& plane) {
  return table_report(cfg, plane, enumerate_triples(plane, sweep_config(cfg)));
}

/// Group identification does not enter the verdicts, so it is skipped.
inline Report cmd_verify_main(const RunConfig& cfg, const Plane& plane, bool& holds) {
  SweepConfig s = sweep_config(cfg);
  s.group = false;
  const ClassificationTable t = enumerate_triples(plane, s);
  holds = t.violations == 0;
  Report r = table_report(cfg, plane, t);
  r.json["holds"] = holds;
  return r;
}

inline Report cmd_tangent(const RunConfig& cfg, const Plane& plane) {
  std::array<PointId, 3> abc{};
  if (cfg.points.empty()) {
    const auto& c = plane.conic_points();
    abc = {c[0], c[1], c[2]};
  } else {
    const auto pts = three_points(plane, cfg.points);
    abc = {plane.id(pts[0]), plane.id(pts[1]), plane.id(pts[2])};
  }
  const TriangleRecord t = construct_tangent_triangle(plane, abc[0], abc[1], abc[2], ClassifyOptions{true, true, true, cfg.budget});
  Report r = triangle_report(cfg, plane, t);
  r.json["conic_points"] = {ser::point(plane, abc[0]), ser::point(plane, abc[1]), ser::point(plane, abc[2])};
  r.json["group"] = ser::group(*t.group);
  return r;
}

inline Report cmd_nonlinear(const RunConfig& cfg, const Plane& plane) {
  const NonlinearConstruction c = construct_nonlinear_pgl(plane, cfg.budget);
  Report r = triangle_report(cfg, plane, c.record);
  r.json["base_line"] = to_string(c.base_line);
  r.json["half_order"] = c.half_order;
  r.json["rejected"] = c.rejected;
  r.json["group"] = ser::group(*c.record.group);
  return r;
}

inline Report cmd_triality(const RunConfig& cfg, const Plane& plane, bool& verified) {
  const TrialityReport t = triality_projectivity_check(plane, cfg.budget);
  verified = t.verified;
  Report r = triangle_report(cfg, plane, t.triangle.record);
  Json cp = Json::array();
  for (PointId x : t.triangle.conic_points) cp.push_back(ser::point(plane, x));
  r.json["conic_points"] = cp;
  r.json["sigma"] = t.sigma;
  r.json["witness"] = t.witness ? ser::correlation_witness(*t.witness) : Json(nullptr);
  r.json["group_order"] = t.group_order;
  r.json["matches"] = t.matches;
  r.json["checks"] = t.checks;
  r.json["verified"] = t.verified;
  return r;
}

inline Report cmd_geometry(const RunConfig& cfg, const Plane& plane) {
  const auto pts = three_points(plane, cfg.points);
  std::array<Involution, 3> inv;
  try {
    for (unsigned i = 0; i < 3; ++i) {
      if (plane.on_conic(pts[i])) throw Error(ErrorKind::DegenerateInput, plane.format(pts[i]) + " lies on the conic");
      inv[i] = involution_from_center(plane, pts[i]);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
    return degenerate_report(cfg, plane, pts, e);
  }
  const Generators a{inv[0].map, inv[1].map, inv[2].map};
  const Built b = build_geometry(plane.field(), a, cfg.budget);
  Report r;
  r.json = header(cfg, plane.field());
  r.json["points"] = {ser::triple(pts[0].x), ser::triple(pts[1].x), ser::triple(pts[2].x)};
  r.json["geometry"] = ser::geometry(b.geo);
  r.json["oracle"] = ser::oracle(graph_oracle(b.geo));
  r.json["diagram"] = ser::diagram(diagram(plane.field(), a, &b.geo));
  r.tsv_header = {"type_a", "index_a", "type_b", "index_b"};
  for (const auto& e : b.geo.incidence()) {
    r.tsv_rows.push_back({std::to_string(e[0]), std::to_string(e[1]), std::to_string(e[2]), std::to_string(e[3])});
  }
  r.dot = ser::geometry_dot(b.geo);
  return r;
}

/// Triangles whose three involutions all lie in PSL(2,q).
inline Report cmd_experiment_psl(const RunConfig& cfg, const Plane& plane) {
  const ClassificationTable all = enumerate_triples(plane, sweep_config(cfg));
  ClassificationTable t;
  t.mode = all.mode;
  t.seed = all.seed;
  t.total_triples = all.total_triples;
  const std::string psl = "PSL(2," + std::to_string(plane.q()) + ")";
  std::uint64_t in_psl = 0, generating = 0, generating_snsp = 0, snsp = 0;
  for (const auto& [k, c] : all.cells) {
    if (k.psl_count != 3) continue;
    t.cells[k] = c;
    t.covered += c.count;
    const bool s = predicts_hypertope(k.cls);
    in_psl += c.count;
    snsp += s ? c.count : 0;
    if (k.group == psl) {
      generating += c.count;
      generating_snsp += s ? c.count : 0;
    }
  }
  Report r = table_report(cfg, plane, t);
  r.json["table"].erase("classified");
  r.json["table"].erase("violations");
  r.json["table"].erase("violation_examples");
  r.json["summary"] = {{"triples_in_psl", in_psl},
                       {"snsp", snsp},
                       {"generating_psl", generating},
                       {"generating_psl_snsp", generating_snsp},
                       {"swept", all.covered}};
  return r;
}

/// Tau-triangles at q = p^(3m): one row per tau-orbit of off-conic points.
/// Duality witnesses are searched among inner and field automorphisms only,
/// so "none found" is a lower-bound observation and not a proof of absence.
inline Report cmd_experiment_tau(const RunConfig& cfg, const Plane& plane) {
  const Field& f = plane.field();
  if (f.n() % 3 != 0) throw Error(ErrorKind::InvalidPower, "experiment-tau needs n divisible by 3");
  const Collineation tau = frobenius_collineation(f, f.n() / 3);
  std::vector<PointId> reps;
  for (PointId x : plane.off_conic_points()) {
    const ProjPoint px = plane.point_at(x);
    const ProjPoint py = coll::apply(plane, tau, px);
    if (py == px) continue;
    const PointId y = plane.id(py), z = plane.id(coll::apply(plane, tau, py));
    if (x < y && x < z) reps.push_back(x);
  }
  const SweepConfig sc = sweep_config(cfg);
  std::vector<PointId> chosen = reps;
  if (sc.mode == SweepMode::Sample) {
    chosen.clear();
    for (std::uint64_t i : detail::sample_ranks(reps.size(), sc.sample, sc.seed)) chosen.push_back(reps[i]);
  }

  static constexpr std::array<Sigma, 3> transpositions{{{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}};
  Report r;
  r.json = header(cfg, f);
  r.tsv_header = {"p0", "p1", "p2", "class", "proper", "snsp", "alpha_p_in_psl", "group", "hypertope",
                  "duality_witness", "triality_witness"};
  Json rows = Json::array();
  std::uint64_t n_tri = 0, n_proper = 0, n_snsp = 0, n_hyp = 0, n_pgl = 0, n_nodual = 0, n_notpsl = 0;
  for (PointId x : chosen) {
    const ProjPoint px = plane.point_at(x);
    const ProjPoint py = coll::apply(plane, tau, px);
    const ProjPoint pz = coll::apply(plane, tau, py);
    const std::array<PointId, 3> ids{x, plane.id(py), plane.id(pz)};
    const TriangleRecord t = classify_triangle(plane, ids, ClassifyOptions{true, true, false, cfg.budget});
    Json row = ser::triangle(plane, t);
    row.erase("sides");
    std::optional<CorrelationWitness> duality, triality;
    if (t.cls != TriangleClass::Collinear) {
      ++n_tri;
      const Generators a = t.generators();
      const ElementSet h = closure(f, {a[0], a[1], a[2]}, cfg.budget);
      for (const Sigma& s : transpositions) {
        if (duality) break;
        duality = correlation_witness(f, h, a, s);
        for (unsigned k = 1; k < f.n() && !duality; ++k) duality = field_correlation_witness(f, h, a, s, k);
      }
      triality = correlation_witness(f, h, a, Sigma{1, 2, 0});
      for (unsigned k = 1; k < f.n() && !triality; ++k) triality = field_correlation_witness(f, h, a, Sigma{1, 2, 0}, k);
      n_proper += t.proper ? 1 : 0;
      n_snsp += t.snsp ? 1 : 0;
      n_hyp += t.hypertope() ? 1 : 0;
      n_pgl += t.group->tag == GroupTag::PGL && t.group->param == f.q() ? 1 : 0;
      n_notpsl += t.psl[0] ? 0 : 1;
      if (t.hypertope() && !duality) ++n_nodual;
    }
    row["alpha_p_in_psl"] = t.psl[0];
    row["duality_witness"] = duality ? ser::correlation_witness(*duality) : Json(nullptr);
    row["triality_witness"] = triality ? ser::correlation_witness(*triality) : Json(nullptr);
    rows.push_back(row);
    std::vector<std::string> tsv = triangle_row(plane, t);
    r.tsv_rows.push_back({tsv[0], tsv[1], tsv[2], tsv[3], tsv[4], tsv[5], t.psl[0] ? "1" : "0", tsv[7], tsv[11],
                          duality ? "1" : "0", triality ? "1" : "0"});
  }
  r.json["mode"] = to_string(sc.mode);
  r.json["seed"] = sc.seed;
  r.json["tau_orbits"] = reps.size();
  r.json["rows"] = rows;
  r.json["duality_search"] = "inner and field automorphisms only; absence is not a proof";
  r.json["summary"] = {{"examined", chosen.size()},
                       {"triangles", n_tri},
                       {"proper", n_proper},
                       {"snsp", n_snsp},
                       {"alpha_p_not_in_psl", n_notpsl},
                       {"generating_pgl", n_pgl},
                       {"hypertopes", n_hyp},
                       {"hypertopes_without_duality_witness", n_nodual}};
  return r;
}

}  // namespace cli_detail

/// Runs one command and writes the report. Errors go to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Format format = parse_format(cfg.format);
    const Plane plane(Field::build(cfg.p, cfg.n, cfg.modulus));
    Report report;
    int code = kExitOk;
    bool ok = true;
    if (cfg.command == "classify") {
      report = cli_detail::cmd_classify(cfg, plane);
    } else if (cfg.command == "enumerate") {
      report = cli_detail::cmd_enumerate(cfg, plane);
    } else if (cfg.command == "verify-main") {
      report = cli_detail::cmd_verify_main(cfg, plane, ok);
    } else if (cfg.command == "tangent") {
      report = cli_detail::cmd_tangent(cfg, plane);
    } else if (cfg.command == "nonlinear-pgl") {
      report = cli_detail::cmd_nonlinear(cfg, plane);
    } else if (cfg.command == "triality") {
      report = cli_detail::cmd_triality(cfg, plane, ok);
    } else if (cfg.command == "geometry") {
      report = cli_detail::cmd_geometry(cfg, plane);
    } else if (cfg.command == "experiment-psl") {
      report = cli_detail::cmd_experiment_psl(cfg, plane);
    } else if (cfg.command == "experiment-tau") {
      report = cli_detail::cmd_experiment_tau(cfg, plane);
    } else {
      throw Error(ErrorKind::ParseError, "unknown command '" + cfg.command + "'");
    }
    if (!ok) code = kExitVerification;
    const std::string bytes = emit_report(report, format);
    if (cfg.out.empty()) {
      out << bytes;
    } else {
      write_atomic(cfg.out, bytes);
    }
    return code;
  } catch (const BudgetExceededError& e) {
    err << e.what() << '\n';
    return kExitBudget;
  } catch (const Error& e) {
    err << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::SearchExhausted:
      case ErrorKind::NoTauTriangle: return kExitVerification;
      case ErrorKind::BudgetExceeded: return kExitBudget;
      default: return kExitParse;
    }
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitVerification;
  }
}

/// Parses argv with CLI11 and runs the selected subcommand.
inline int main_entry(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Triangles of involutions in PGL(2,q) and their rank-3 coset geometries"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string modulus;
  app.add_option("--p", cfg.p, "characteristic (odd prime)");
  app.add_option("--n", cfg.n, "extension degree");
  app.add_option("--modulus", modulus, "irreducible modulus [c0,...,cn], low degree first");
  app.add_option("--points", cfg.points, "points as \"[a,b,c];[d,e,f];[g,h,i]\"");
  app.add_option("--mode", cfg.mode, "full | orbit-reps | sample");
  app.add_option("--sample", cfg.sample, "sample size for --mode sample");
  app.add_option("--seed", cfg.seed, "seed for the sampling PRNG (mt19937_64)");
  app.add_option("--jobs", cfg.jobs, "worker threads for sweeps");
  app.add_option("--budget", cfg.budget, "closure budget in group elements");
  app.add_option("--out", cfg.out, "output file (written atomically); stdout if absent");
  app.add_option("--format", cfg.format, "json | tsv | dot");
  for (const std::string& name : command_names()) app.add_subcommand(name)->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (!modulus.empty()) {
    try {
      const auto lists = cli_detail::parse_bracket_lists(modulus.front() == '[' ? modulus : "[" + modulus + "]");
      if (lists.size() != 1) throw Error(ErrorKind::ParseError, "expected one coefficient list");
      cfg.modulus = lists[0];
    } catch (const Error& e) {
      err << e.what() << '\n';
      return kExitParse;
    }
  }
  return run(cfg, out, err);
}

}  // namespace pglhyp
