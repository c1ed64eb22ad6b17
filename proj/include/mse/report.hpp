#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mse/classification.hpp"
#include "mse/diagram.hpp"
#include "mse/energy.hpp"
#include "mse/filtration.hpp"
#include "mse/ordering.hpp"

namespace mse {

struct NumberingRow {
  int position = 0;
  std::string id;
  int q = 0;
  int b = 0;
};

struct ReportParts {
  bool ordering = false;
  bool filtration = false;
  bool classification = false;
  bool energy = false;

  static ReportParts all() { return {true, true, true, true}; }
  static ReportParts none() { return {}; }
};

// Everything one analysis run produced. Sections the caller did not request,
// or that an upstream problem made unreachable, stay empty; the problems
// themselves are kept as data so every renderer can show them.
struct Report {
  std::string diagram_name;
  ValidationReport validation;

  std::optional<std::vector<NumberingRow>> numbering;
  std::optional<unsigned long long> numbering_count;
  std::vector<std::pair<std::string, std::string>> order_pairs;

  std::optional<Filtration> filtration;
  std::vector<MonotonicityRow> monotonicity;
  ValidationReport filtration_issues;
  ValidationReport annotation_issues;

  std::optional<ManifoldClass> manifold;
  std::string classification_note;

  std::optional<Verdict> verdict;
  std::optional<EnergyCertificate> certificate;
  std::string certificate_note;
  ValidationReport schedule_issues;

  std::vector<std::string> analysis_errors;  // count toward the exit status
  std::vector<std::string> notes;            // informational only

  bool any_violations() const {
    return !validation.ok() || !filtration_issues.ok() || !annotation_issues.ok() ||
           !schedule_issues.ok() || !analysis_errors.empty();
  }
};

inline Report build_report(const Diagram& d, const ReportParts& parts) {
  Report rep;
  rep.diagram_name = d.name;
  rep.validation = validate(d);
  if (!rep.validation.ok()) return rep;

  const OrderRelation order = compute_order(d);  // acyclic: validate passed
  const Numbering numbering = canonical_numbering(d, order);

  if (parts.ordering) {
    auto b = all_behaviour_indices(d, order);
    std::vector<NumberingRow> rows;
    rows.reserve(numbering.size());
    for (std::size_t i = 0; i < numbering.order.size(); ++i) {
      const std::string& id = numbering.order[i];
      const std::size_t idx = *d.index_of(id);
      rows.push_back({static_cast<int>(i) + 1, id, d.orbits[idx].index, b[idx]});
    }
    rep.numbering = std::move(rows);
    try {
      rep.numbering_count = count_numberings(d, order);
    } catch (const std::overflow_error& e) {
      rep.notes.emplace_back(e.what());
    }
    rep.order_pairs = order.strict_pairs();
  }

  if (parts.classification) {
    try {
      rep.manifold = classify(d);
    } catch (const NotApplicableError& e) {
      rep.classification_note = e.reason;
    } catch (const InconsistentDataError& e) {
      rep.classification_note = e.detail;
      rep.analysis_errors.push_back(e.what());
    }
  }

  if (parts.filtration || parts.energy) {
    try {
      rep.filtration = build_filtration(d, numbering);
      rep.monotonicity = genus_monotonicity_report(*rep.filtration);
      rep.filtration_issues = filtration_consistency(*rep.filtration);
      rep.annotation_issues = annotation_consistency(d, *rep.filtration);
    } catch (const MissingSeparatrixDataError& e) {
      rep.analysis_errors.emplace_back(e.what());
    }
  }

  if (parts.energy && rep.filtration) {
    if (rep.filtration_issues.ok() && rep.annotation_issues.ok()) {
      try {
        rep.verdict = decide(d, *rep.filtration, rep.manifold);
      } catch (const Error& e) {
        rep.analysis_errors.emplace_back(e.what());
      }
      if (rep.verdict && rep.verdict->status == VerdictStatus::Exists) {
        rep.certificate = build_certificate(d, numbering, *rep.filtration);
        rep.schedule_issues = check_lyapunov_schedule(d, *rep.certificate, order);
      } else if (rep.verdict) {
        rep.certificate_note =
            "no certificate: verdict is " + std::string(to_string(rep.verdict->status));
      }
    } else {
      rep.analysis_errors.emplace_back("verdict skipped: annotations or filtration inconsistent");
    }
  }
  return rep;
}

namespace detail {

inline void render_violations(std::ostream& os, const ValidationReport& rep,
                              const std::string& heading) {
  if (rep.ok()) return;
  os << heading << "\n";
  for (const auto& v : rep.violations) {
    os << "  [" << v.code << "] " << v.message;
    if (!v.subjects.empty()) {
      os << " (";
      for (std::size_t i = 0; i < v.subjects.size(); ++i)
        os << (i ? ", " : "") << v.subjects[i];
      os << ")";
    }
    os << "\n";
  }
}

}  // namespace detail

inline std::string render_text(const Report& rep) {
  std::ostringstream os;
  os << "diagram: " << (rep.diagram_name.empty() ? "(unnamed)" : rep.diagram_name) << "\n";
  if (rep.validation.ok())
    os << "validation: ok\n";
  else
    detail::render_violations(os, rep.validation, "validation: " +
                                                      std::to_string(rep.validation.violations.size()) +
                                                      " violation(s)");

  if (rep.numbering) {
    os << "\nnumbering (" << rep.numbering->size() << " orbits";
    if (rep.numbering_count)
      os << ", " << *rep.numbering_count
         << (*rep.numbering_count == 1 ? " admissible numbering" : " admissible numberings");
    os << ")\n";
    os << "  pos  orbit  q  b\n";
    for (const auto& row : *rep.numbering)
      os << "  " << std::setw(3) << row.position << "  " << std::setw(5) << row.id << "  "
         << row.q << "  " << row.b << "\n";
    if (!rep.order_pairs.empty()) {
      os << "  order:";
      for (const auto& [l, u] : rep.order_pairs) os << " " << l << "<" << u;
      os << "\n";
    }
  }

  if (rep.filtration) {
    const Filtration& f = *rep.filtration;
    auto table = [&os](const std::vector<AttractorData>& side, const char* name) {
      if (side.empty()) return;
      os << "\n" << name << " filtration\n";
      os << "    i  top orbit  c  r  s  g\n";
      for (const auto& row : side)
        os << "  " << std::setw(3) << row.i << "  " << std::setw(9) << row.orbit_ids.back()
           << "  " << row.c << "  " << row.r << "  " << row.s << "  " << row.g << "\n";
    };
    table(f.attractors, "attractor");
    table(f.repellers, "repeller");
    if (!rep.monotonicity.empty()) {
      os << "\ngenus growth\n";
      for (const auto& row : rep.monotonicity)
        os << "  " << row.side << " " << row.i << "->" << row.i + 1 << ": g " << row.g_i
           << "->" << row.g_next << (row.genus_ok && row.premise_ok ? "  ok" : "  VIOLATION")
           << "\n";
    }
    detail::render_violations(os, rep.filtration_issues, "filtration issues");
    detail::render_violations(os, rep.annotation_issues, "annotation issues");
  }

  if (rep.manifold)
    os << "\nclassification: " << rep.manifold->class_name() << " (m = " << rep.manifold->m
       << "), " << rep.manifold->describe() << "\n";
  else if (!rep.classification_note.empty())
    os << "\nclassification: not applicable — " << rep.classification_note << "\n";

  if (rep.verdict) {
    os << "\nverdict: " << to_string(rep.verdict->status) << "\n";
    for (const auto& reason : rep.verdict->reasons) {
      os << "  rule " << to_string(reason.rule);
      if (!reason.witness.empty()) os << ", witness " << reason.witness;
      if (!reason.note.empty()) os << ": " << reason.note;
      os << "\n";
    }
  }

  if (rep.certificate) {
    const EnergyCertificate& cert = *rep.certificate;
    os << "\nenergy certificate (splitting level " << cert.splitting_level << ", genus "
       << cert.splitting_genus << ")\n";
    os << "  critical levels:";
    for (const auto& c : cert.critical_levels)
      os << " " << c.value << ":" << c.orbit << "(q=" << c.morse_index << ")";
    os << "\n  regular bands:";
    for (const auto& band : cert.regular_bands)
      os << " (" << band.below << "," << band.below + 1 << ")->c" << band.components << ",g"
         << band.genus;
    os << "\n";
    detail::render_violations(os, rep.schedule_issues, "schedule issues");
  } else if (!rep.certificate_note.empty()) {
    os << "\n" << rep.certificate_note << "\n";
  }

  for (const auto& n : rep.notes) os << "\nnote: " << n << "\n";
  for (const auto& e : rep.analysis_errors) os << "\nerror: " << e << "\n";
  return os.str();
}

namespace detail {

inline nlohmann::json violations_json(const ValidationReport& rep) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : rep.violations)
    arr.push_back({{"code", v.code}, {"message", v.message}, {"subjects", v.subjects}});
  return arr;
}

}  // namespace detail

inline nlohmann::json render_json(const Report& rep) {
  using nlohmann::json;
  json out = json::object();
  out["diagram"] = rep.diagram_name;
  out["validation"] = {{"ok", rep.validation.ok()},
                       {"violations", detail::violations_json(rep.validation)}};

  if (rep.numbering) {
    json rows = json::array();
    for (const auto& row : *rep.numbering)
      rows.push_back({{"position", row.position}, {"orbit", row.id}, {"q", row.q}, {"b", row.b}});
    json pairs = json::array();
    for (const auto& [l, u] : rep.order_pairs) pairs.push_back({{"lower", l}, {"upper", u}});
    out["ordering"] = {{"numbering", std::move(rows)}, {"strict_pairs", std::move(pairs)}};
    if (rep.numbering_count) out["ordering"]["count_numberings"] = *rep.numbering_count;
  }

  if (rep.filtration) {
    const Filtration& f = *rep.filtration;
    auto side_json = [](const std::vector<AttractorData>& side) {
      json rows = json::array();
      for (const auto& row : side)
        rows.push_back({{"i", row.i},
                        {"orbits", row.orbit_ids},
                        {"c", row.c},
                        {"r", row.r},
                        {"s", row.s},
                        {"g", row.g}});
      return rows;
    };
    json mono = json::array();
    for (const auto& row : rep.monotonicity)
      mono.push_back({{"side", row.side},
                      {"i", row.i},
                      {"g_i", row.g_i},
                      {"g_next", row.g_next},
                      {"genus_ok", row.genus_ok},
                      {"premise_ok", row.premise_ok}});
    out["filtration"] = {{"k0", f.k0},
                         {"k1", f.k1},
                         {"mirror_k0", f.mirror_k0},
                         {"mirror_k1", f.mirror_k1},
                         {"attractors", side_json(f.attractors)},
                         {"repellers", side_json(f.repellers)},
                         {"genus_monotonicity", std::move(mono)},
                         {"issues", detail::violations_json(rep.filtration_issues)},
                         {"annotation_issues", detail::violations_json(rep.annotation_issues)}};
  }

  if (rep.manifold) {
    out["classification"] = {{"applicable", true},
                             {"class", rep.manifold->class_name()},
                             {"m", rep.manifold->m}};
  } else if (!rep.classification_note.empty()) {
    out["classification"] = {{"applicable", false}, {"reason", rep.classification_note}};
  }

  if (rep.verdict) {
    json reasons = json::array();
    for (const auto& reason : rep.verdict->reasons)
      reasons.push_back({{"rule", std::string(to_string(reason.rule))},
                         {"witness", reason.witness},
                         {"note", reason.note}});
    out["verdict"] = {{"status", std::string(to_string(rep.verdict->status))},
                      {"reasons", std::move(reasons)}};
  }

  if (rep.certificate) {
    const EnergyCertificate& cert = *rep.certificate;
    json levels = json::array();
    for (const auto& c : cert.critical_levels)
      levels.push_back({{"value", c.value}, {"orbit", c.orbit}, {"morse_index", c.morse_index}});
    json bands = json::array();
    for (const auto& band : cert.regular_bands)
      bands.push_back(
          {{"below", band.below}, {"components", band.components}, {"genus", band.genus}});
    out["certificate"] = {{"critical_levels", std::move(levels)},
                          {"regular_bands", std::move(bands)},
                          {"splitting_level", cert.splitting_level},
                          {"splitting_genus", cert.splitting_genus},
                          {"schedule_issues", detail::violations_json(rep.schedule_issues)}};
  }

  if (!rep.notes.empty()) out["notes"] = rep.notes;
  if (!rep.analysis_errors.empty()) out["errors"] = rep.analysis_errors;
  return out;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// Phase-diagram graph: orbits as nodes labeled (id, q, b, position), edges
/// drawn downward from upper to lower, styled by kind.
inline std::string render_dot(const Diagram& d, const Report& rep) {
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(d.name.empty() ? "diagram" : d.name) << "\" {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=ellipse];\n";

  std::vector<NumberingRow> rows;
  if (rep.numbering) {
    rows = *rep.numbering;
  } else {
    for (const auto& o : d.orbits) rows.push_back({0, o.id, o.index, 0});
  }
  for (const auto& row : rows) {
    os << "  \"" << detail::dot_escape(row.id) << "\" [label=\"" << detail::dot_escape(row.id)
       << "\\nq=" << row.q << " b=" << row.b;
    if (row.position > 0) os << " #" << row.position;
    os << "\"];\n";
  }
  for (const auto& e : d.edges) {
    os << "  \"" << detail::dot_escape(e.upper) << "\" -> \"" << detail::dot_escape(e.lower)
       << "\"";
    switch (e.kind) {
      case EdgeKind::node_basin: break;
      case EdgeKind::heteroclinic_point: os << " [style=dashed]"; break;
      case EdgeKind::heteroclinic_curve: os << " [style=bold]"; break;
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mse
