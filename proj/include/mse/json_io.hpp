#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mse/diagram.hpp"
#include "mse/errors.hpp"

namespace mse {

inline constexpr int kSchemaVersion = 1;

namespace detail {

using json = nlohmann::json;

inline int line_of_offset(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                                const std::string& path) {
  for (const auto& [key, value] : obj.items())
    if (!known.contains(key)) throw SchemaError(path + "/" + key, "unknown field");
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

inline long long as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<long long>();
}

inline bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw SchemaError(path, "expected a boolean");
  return v.get<bool>();
}

inline const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  return v;
}

inline const json& as_object(const json& v, const std::string& path) {
  if (!v.is_object()) throw SchemaError(path, "expected an object");
  return v;
}

inline OrbitPoint parse_point(const json& v, const Diagram& d, const std::string& path) {
  as_object(v, path);
  reject_unknown_keys(v, {"orbit", "point"}, path);
  OrbitPoint p;
  p.orbit = as_string(require(v, "orbit", path), path + "/orbit");
  p.point = static_cast<int>(as_integer(require(v, "point", path), path + "/point"));
  auto idx = d.index_of(p.orbit);
  if (!idx) throw SchemaError(path + "/orbit", "unknown orbit id '" + p.orbit + "'");
  if (p.point < 0 || p.point >= d.orbits[*idx].period)
    throw SchemaError(path + "/point", "point must lie in [0, period)");
  return p;
}

inline std::vector<SeparatrixRecord> parse_separatrices(const json& v, const Diagram& d,
                                                        int saddle_index,
                                                        const std::string& path) {
  std::vector<SeparatrixRecord> out;
  std::set<std::pair<std::string, int>> seen;
  const auto& arr = as_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const auto& rec = as_object(arr[i], p);
    reject_unknown_keys(rec, {"saddle", "branches"}, p);
    SeparatrixRecord r;
    r.saddle = parse_point(require(rec, "saddle", p), d, p + "/saddle");
    const Orbit& o = d.orbits[*d.index_of(r.saddle.orbit)];
    if (o.index != saddle_index)
      throw SchemaError(p + "/saddle/orbit", "records on this side need an index-" +
                                                 std::to_string(saddle_index) + " orbit");
    if (!seen.emplace(r.saddle.orbit, r.saddle.point).second)
      throw SchemaError(p + "/saddle", "duplicate separatrix record for this point");
    const auto& branches = as_array(require(rec, "branches", p), p + "/branches");
    if (branches.size() != 2)
      throw SchemaError(p + "/branches", "a saddle point has exactly two branches");
    for (int b = 0; b < 2; ++b) {
      const std::string bp = p + "/branches/" + std::to_string(b);
      const auto& targets = as_array(branches[static_cast<std::size_t>(b)], bp);
      for (std::size_t t = 0; t < targets.size(); ++t)
        r.branches[static_cast<std::size_t>(b)].push_back(
            parse_point(targets[t], d, bp + "/" + std::to_string(t)));
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<EmbeddingAnnotation> parse_annotations(const json& v, const Diagram& d,
                                                          const std::string& path) {
  std::vector<EmbeddingAnnotation> out;
  std::set<std::string> seen;
  const auto& arr = as_array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const auto& obj = as_object(arr[i], p);
    reject_unknown_keys(obj, {"orbit", "tight", "strongly_tight", "handle_genus_witness"}, p);
    EmbeddingAnnotation a;
    a.orbit = as_string(require(obj, "orbit", p), p + "/orbit");
    if (!d.index_of(a.orbit))
      throw SchemaError(p + "/orbit", "unknown orbit id '" + a.orbit + "'");
    if (!seen.insert(a.orbit).second)
      throw SchemaError(p + "/orbit", "duplicate annotation for orbit '" + a.orbit + "'");
    if (auto it = obj.find("tight"); it != obj.end()) a.tight = as_bool(*it, p + "/tight");
    if (auto it = obj.find("strongly_tight"); it != obj.end())
      a.strongly_tight = as_bool(*it, p + "/strongly_tight");
    if (auto it = obj.find("handle_genus_witness"); it != obj.end()) {
      a.handle_genus_witness = as_integer(*it, p + "/handle_genus_witness");
      if (a.handle_genus_witness < 0)
        throw SchemaError(p + "/handle_genus_witness", "must be non-negative");
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

/// Parses a diagram document. Structural problems (shape, types, ranges,
/// dangling references, duplicates) throw SchemaError; malformed JSON throws
/// ParseError. Semantic consistency is validate()'s job.
inline Diagram parse_document(std::string_view text) {
  detail::json doc;
  try {
    doc = detail::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(detail::line_of_offset(text, e.byte), e.what());
  }
  const std::string root = "/";
  detail::as_object(doc, root);
  detail::reject_unknown_keys(doc,
                              {"schema_version", "name", "no_heteroclinic_curves", "orbits",
                               "edges", "separatrices", "mirror_separatrices", "annotations",
                               "mirror_annotations"},
                              "");
  const long long version =
      detail::as_integer(detail::require(doc, "schema_version", root), "/schema_version");
  if (version != kSchemaVersion)
    throw SchemaError("/schema_version",
                      "unsupported schema version " + std::to_string(version));

  Diagram d;
  if (auto it = doc.find("name"); it != doc.end()) d.name = detail::as_string(*it, "/name");

  const auto& orbits = detail::as_array(detail::require(doc, "orbits", root), "/orbits");
  if (orbits.empty()) throw SchemaError("/orbits", "a diagram needs at least one orbit");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const std::string p = "/orbits/" + std::to_string(i);
    const auto& obj = detail::as_object(orbits[i], p);
    detail::reject_unknown_keys(obj, {"id", "period", "index", "separatrix_swap"}, p);
    Orbit o;
    o.id = detail::as_string(detail::require(obj, "id", p), p + "/id");
    if (o.id.empty()) throw SchemaError(p + "/id", "orbit id must be non-empty");
    if (!ids.insert(o.id).second)
      throw SchemaError(p + "/id", "duplicate orbit id '" + o.id + "'");
    o.period = static_cast<int>(detail::as_integer(detail::require(obj, "period", p), p + "/period"));
    if (o.period < 1) throw SchemaError(p + "/period", "period must be at least 1");
    o.index = static_cast<int>(detail::as_integer(detail::require(obj, "index", p), p + "/index"));
    if (o.index < 0 || o.index > 3) throw SchemaError(p + "/index", "index must lie in 0..3");
    if (auto it = obj.find("separatrix_swap"); it != obj.end())
      o.separatrix_swap = detail::as_bool(*it, p + "/separatrix_swap");
    d.orbits.push_back(std::move(o));
  }

  if (auto it = doc.find("edges"); it != doc.end()) {
    const auto& edges = detail::as_array(*it, "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string p = "/edges/" + std::to_string(i);
      const auto& obj = detail::as_object(edges[i], p);
      detail::reject_unknown_keys(obj, {"upper", "lower", "kind"}, p);
      IntersectionEdge e;
      e.upper = detail::as_string(detail::require(obj, "upper", p), p + "/upper");
      e.lower = detail::as_string(detail::require(obj, "lower", p), p + "/lower");
      for (const auto& endpoint : {e.upper, e.lower})
        if (!d.index_of(endpoint))
          throw SchemaError(p, "unknown orbit id '" + endpoint + "'");
      const std::string kind = detail::as_string(detail::require(obj, "kind", p), p + "/kind");
      auto parsed = edge_kind_from_string(kind);
      if (!parsed) throw SchemaError(p + "/kind", "unknown edge kind '" + kind + "'");
      e.kind = *parsed;
      d.edges.push_back(std::move(e));
    }
  }

  if (auto it = doc.find("separatrices"); it != doc.end())
    d.separatrices = detail::parse_separatrices(*it, d, 1, "/separatrices");
  if (auto it = doc.find("mirror_separatrices"); it != doc.end())
    d.mirror_separatrices = detail::parse_separatrices(*it, d, 2, "/mirror_separatrices");
  if (auto it = doc.find("annotations"); it != doc.end())
    d.annotations = detail::parse_annotations(*it, d, "/annotations");
  if (auto it = doc.find("mirror_annotations"); it != doc.end())
    d.mirror_annotations = detail::parse_annotations(*it, d, "/mirror_annotations");

  if (auto it = doc.find("no_heteroclinic_curves"); it != doc.end()) {
    d.no_heteroclinic_curves = detail::as_bool(*it, "/no_heteroclinic_curves");
  } else {
    d.no_heteroclinic_curves =
        std::none_of(d.edges.begin(), d.edges.end(), [](const IntersectionEdge& e) {
          return e.kind == EdgeKind::heteroclinic_curve;
        });
  }
  return d;
}

inline nlohmann::json emit_document(const Diagram& d) {
  using detail::json;
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = d.name;
  doc["no_heteroclinic_curves"] = d.no_heteroclinic_curves;

  json orbits = json::array();
  for (const auto& o : d.orbits)
    orbits.push_back({{"id", o.id},
                      {"period", o.period},
                      {"index", o.index},
                      {"separatrix_swap", o.separatrix_swap}});
  doc["orbits"] = std::move(orbits);

  json edges = json::array();
  for (const auto& e : d.edges)
    edges.push_back(
        {{"upper", e.upper}, {"lower", e.lower}, {"kind", std::string(to_string(e.kind))}});
  doc["edges"] = std::move(edges);

  auto emit_point = [](const OrbitPoint& p) {
    return json{{"orbit", p.orbit}, {"point", p.point}};
  };
  auto emit_records = [&](const std::vector<SeparatrixRecord>& records) {
    json arr = json::array();
    for (const auto& rec : records) {
      json branches = json::array();
      for (const auto& branch : rec.branches) {
        json targets = json::array();
        for (const auto& t : branch) targets.push_back(emit_point(t));
        branches.push_back(std::move(targets));
      }
      arr.push_back({{"saddle", emit_point(rec.saddle)}, {"branches", std::move(branches)}});
    }
    return arr;
  };
  doc["separatrices"] = emit_records(d.separatrices);
  doc["mirror_separatrices"] = emit_records(d.mirror_separatrices);

  auto emit_annotations = [](const std::vector<EmbeddingAnnotation>& annotations) {
    json arr = json::array();
    for (const auto& a : annotations)
      arr.push_back({{"orbit", a.orbit},
                     {"tight", a.tight},
                     {"strongly_tight", a.strongly_tight},
                     {"handle_genus_witness", a.handle_genus_witness}});
    return arr;
  };
  doc["annotations"] = emit_annotations(d.annotations);
  doc["mirror_annotations"] = emit_annotations(d.mirror_annotations);
  return doc;
}

inline std::string emit_document_text(const Diagram& d) { return emit_document(d).dump(2) + "\n"; }

}  // namespace mse
