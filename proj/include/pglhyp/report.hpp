#pragma once

// Serialization of results as canonical JSON, fixed-column TSV and DOT.
//
// JSON objects use nlohmann::json's default std::map storage, so keys come
// out sorted; only integers, booleans and strings are ever stored.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "pglhyp/correlation.hpp"
#include "pglhyp/enumerate.hpp"
#include "pglhyp/error.hpp"
#include "pglhyp/geometry.hpp"
#include "pglhyp/group.hpp"
#include "pglhyp/plane.hpp"
#include "pglhyp/triangles.hpp"

namespace pglhyp {

using Json = nlohmann::json;

enum class Format { Json, Tsv, Dot };

inline Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "tsv") return Format::Tsv;
  if (s == "dot") return Format::Dot;
  throw Error(ErrorKind::UnsupportedFormat, "unknown format '" + std::string(s) + "'");
}

constexpr const char* to_string(Format f) noexcept {
  switch (f) {
    case Format::Json: return "json";
    case Format::Tsv: return "tsv";
    case Format::Dot: return "dot";
  }
  return "?";
}

/// A command result. JSON is always present; TSV and DOT only where the
/// result has a tabular or graph form.
struct Report {
  Json json = Json::object();
  std::vector<std::string> tsv_header;
  std::vector<std::vector<std::string>> tsv_rows;
  std::optional<std::string> dot;
};

namespace ser {

inline Json triple(const Triple& x) { return Json::array({x[0].v, x[1].v, x[2].v}); }

inline Json point(const Plane& plane, PointId id) { return triple(plane.point_at(id).x); }

inline Json field(const Field& f) { return {{"p", f.p()}, {"n", f.n()}, {"modulus", f.modulus()}}; }

/// Matrix as three rows of element encodings.
inline Json matrix(const Projectivity& g) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < 3; ++r) rows.push_back({g.m[3 * r].v, g.m[3 * r + 1].v, g.m[3 * r + 2].v});
  return rows;
}

inline Json group(const GroupId& g) {
  Json j{{"tag", to_string(g.tag)},
         {"label", g.label()},
         {"order", g.stats.order},
         {"involutions", g.stats.n_involutions},
         {"max_element_order", g.stats.max_elt_order}};
  if (g.tag == GroupTag::PSL || g.tag == GroupTag::PGL) {
    j["q0"] = g.param;
  } else if (g.param != 0) {
    j["param"] = g.param;
  }
  return j;
}

inline Json witness(const Witness& w) { return {{"criterion", w.criterion}, {"indices", w.indices}, {"size", w.size}}; }

inline Json criteria(const CriteriaReport& r) {
  Json ws = Json::array();
  for (const Witness& w : r.witnesses) ws.push_back(witness(w));
  return {{"thin", r.thin},
          {"residually_connected", r.residually_connected},
          {"flag_transitive", r.flag_transitive},
          {"hypertope", r.hypertope()},
          {"witnesses", ws}};
}

inline Json oracle(const OracleReport& o) {
  return {{"verdicts", criteria(o.verdicts)},
          {"chambers", o.chambers},
          {"base_orbit", o.base_orbit},
          {"min_residue", o.min_residue},
          {"max_residue", o.max_residue}};
}

inline Json optional_uint(const std::optional<unsigned>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json diagram(const DiagramReport& d) {
  Json res = Json::array();
  for (const auto& r : d.residues) {
    if (r) {
      res.push_back({{"d_points", optional_uint(r->d_points)},
                     {"gonality", optional_uint(r->gonality)},
                     {"d_lines", optional_uint(r->d_lines)}});
    } else {
      res.push_back(nullptr);
    }
  }
  return {{"labels", d.labels}, {"linear", d.linear}, {"residues", res}, {"element_counts", d.element_counts}};
}

inline Json triangle(const Plane& plane, const TriangleRecord& t) {
  Json centers = Json::array();
  Json sides = Json::array();
  for (unsigned i = 0; i < 3; ++i) {
    centers.push_back(point(plane, t.centers[i]));
    Json side = Json::array();
    for (PointId x : t.sides[i]) side.push_back(point(plane, x));
    sides.push_back(side);
  }
  Json j{{"centers", centers},
         {"class", to_string(t.cls)},
         {"proper", t.proper},
         {"snsp", t.snsp},
         {"psl", t.psl},
         {"sides", sides},
         {"hypertope", t.hypertope()}};
  if (t.witness) {
    j["witness"] = Json::array();
    for (PointId x : *t.witness) j["witness"].push_back(point(plane, x));
  } else {
    j["witness"] = nullptr;
  }
  j["group"] = t.group ? group(*t.group) : Json(nullptr);
  j["criteria"] = t.criteria ? criteria(*t.criteria) : Json(nullptr);
  j["diagram"] = t.diagram ? diagram(*t.diagram) : Json(nullptr);
  return j;
}

inline Json table(const Plane& plane, const ClassificationTable& t) {
  Json cells = Json::array();
  for (const auto& [k, c] : t.cells) {
    cells.push_back({{"class", to_string(k.cls)},
                     {"group", k.group},
                     {"psl_count", k.psl_count},
                     {"count", c.count},
                     {"hypertope", c.hypertope}});
  }
  Json by_class = Json::object();
  for (const auto& [k, v] : t.by_class()) by_class[to_string(k)] = v;
  Json by_group = Json::object();
  for (const auto& [k, v] : t.by_group()) by_group[k] = v;
  Json by_psl = Json::object();
  for (const auto& [k, v] : t.by_psl_count()) by_psl[std::to_string(k)] = v;
  Json examples = Json::array();
  for (const Violation& v : t.violation_examples) {
    examples.push_back({{"centers", {point(plane, v.centers[0]), point(plane, v.centers[1]), point(plane, v.centers[2])}},
                        {"class", to_string(v.cls)},
                        {"hypertope", v.hypertope},
                        {"weight", v.weight}});
  }
  return {{"mode", to_string(t.mode)},
          {"seed", t.seed},
          {"total_triples", t.total_triples},
          {"covered", t.covered},
          {"classified", t.classified},
          {"violations", t.violations},
          {"violation_examples", examples},
          {"cells", cells},
          {"by_class", by_class},
          {"by_group", by_group},
          {"by_psl_count", by_psl}};
}

inline const std::vector<std::string>& table_header() {
  static const std::vector<std::string> h{"class", "group", "psl_count", "count", "hypertope"};
  return h;
}

inline std::vector<std::vector<std::string>> table_rows(const ClassificationTable& t) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [k, c] : t.cells) {
    rows.push_back({to_string(k.cls), k.group, std::to_string(k.psl_count), std::to_string(c.count),
                    std::to_string(c.hypertope)});
  }
  return rows;
}

inline Json geometry(const CosetGeometry& g) {
  Json inc = Json::array();
  for (const auto& e : g.incidence()) inc.push_back(e);
  return {{"types", 3},
          {"counts", {g.count(0), g.count(1), g.count(2)}},
          {"group_order", g.group_order},
          {"incidence", inc}};
}

/// Undirected graph; node shape encodes the type, edges are untyped.
inline std::string geometry_dot(const CosetGeometry& g) {
  static constexpr std::array<const char*, 3> shapes{"circle", "box", "triangle"};
  std::ostringstream out;
  out << "graph coset_geometry {\n";
  for (unsigned t = 0; t < 3; ++t) {
    for (std::uint32_t x = 0; x < g.count(t); ++x) {
      out << "  t" << t << "_" << x << " [shape=" << shapes[t] << ", label=\"" << t << ":" << x << "\"];\n";
    }
  }
  for (const auto& [s, x, t, y] : g.incidence()) out << "  t" << s << "_" << x << " -- t" << t << "_" << y << ";\n";
  out << "}\n";
  return out.str();
}

inline Json correlation_witness(const CorrelationWitness& w) {
  return {{"sigma", w.sigma}, {"g", matrix(w.g)}, {"source", to_string(w.source)}};
}

}  // namespace ser

inline std::string emit_report(const Report& r, Format format) {
  switch (format) {
    case Format::Json: return r.json.dump(2) + "\n";
    case Format::Tsv: {
      if (r.tsv_header.empty()) throw Error(ErrorKind::UnsupportedFormat, "this result has no TSV form");
      std::string out;
      auto line = [&](const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
          if (i) out += '\t';
          out += cols[i];
        }
        out += '\n';
      };
      line(r.tsv_header);
      for (const auto& row : r.tsv_rows) line(row);
      return out;
    }
    case Format::Dot:
      if (!r.dot) throw Error(ErrorKind::UnsupportedFormat, "this result has no DOT form");
      return *r.dot;
  }
  throw Error(ErrorKind::UnsupportedFormat, "unknown format");
}

/// Writes through a sibling temporary file and a rename. Existing targets
/// that are not regular files (devices, pipes) are written in place.
inline void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::error_code ec;
  const auto st = std::filesystem::status(path, ec);
  if (!ec && std::filesystem::exists(st) && !std::filesystem::is_regular_file(st)) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) throw Error(ErrorKind::InvalidArgument, "write to " + path.string() + " failed");
    return;
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) throw Error(ErrorKind::InvalidArgument, "write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace pglhyp
