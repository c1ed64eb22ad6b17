#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "mse/diagram.hpp"
#include "mse/examples.hpp"

namespace testsupport {

/// Two mutually intersecting index-1 saddles: the relation has a 2-cycle.
inline mse::Diagram cyclic_fixture() {
  mse::Diagram d;
  d.name = "cyclic";
  d.orbits = {{"a", 1, 1, false}, {"b", 1, 1, false}};
  d.edges = {{"a", "b", mse::EdgeKind::heteroclinic_point},
             {"b", "a", mse::EdgeKind::heteroclinic_point}};
  return d;
}

/// A sphere diagram with non-trivial periods: a period-3 sink fed by a
/// period-2 saddle whose points alternate over the sink's points, then the
/// mirror picture. g = 1 + 2 - 3 = 0 with one component.
inline mse::Diagram periodic_sphere_fixture() {
  mse::Diagram d;
  d.name = "periodic-sphere";
  d.orbits = {{"w", 3, 0, false}, {"s", 2, 1, false}, {"r", 2, 2, false}, {"a", 3, 3, false}};
  d.edges = {{"s", "w", mse::EdgeKind::node_basin},
             {"a", "r", mse::EdgeKind::node_basin},
             {"a", "s", mse::EdgeKind::node_basin},
             {"r", "w", mse::EdgeKind::node_basin}};
  // Branch limit sets must be invariant under the saddle's return map f^2,
  // which acts transitively on the period-3 sink: each branch closes up to
  // the whole sink orbit.
  d.separatrices = {
      {{"s", 0}, {{{{"w", 0}, {"w", 1}, {"w", 2}}, {{"w", 0}, {"w", 1}, {"w", 2}}}}}};
  d.mirror_separatrices = {
      {{"r", 0}, {{{{"a", 0}, {"a", 1}, {"a", 2}}, {{"a", 0}, {"a", 1}, {"a", 2}}}}}};
  d.annotations = {{"s", true, true, 0}};
  d.mirror_annotations = {{"r", true, true, 0}};
  d.no_heteroclinic_curves = true;
  return d;
}

/// Minimal DOT well-formedness check: digraph header, quoted node statements
/// with optional attribute blocks, quoted edge statements, balanced braces.
inline bool dot_well_formed(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto literal = [&](const std::string& word) {
    skip_ws();
    if (text.compare(i, word.size(), word) != 0) return false;
    i += word.size();
    return true;
  };
  auto quoted = [&] {
    skip_ws();
    if (i >= text.size() || text[i] != '"') return false;
    ++i;
    while (i < text.size() && text[i] != '"') {
      if (text[i] == '\\') ++i;
      ++i;
    }
    if (i >= text.size()) return false;
    ++i;  // closing quote
    return true;
  };
  auto ident = [&] {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '='))
      ++i;
    return i > start;
  };
  auto attr_block = [&] {
    skip_ws();
    if (i < text.size() && text[i] == '[') {
      ++i;
      while (i < text.size() && text[i] != ']') {
        if (text[i] == '"') {
          ++i;
          while (i < text.size() && text[i] != '"') {
            if (text[i] == '\\') ++i;
            ++i;
          }
          if (i >= text.size()) return false;
        }
        ++i;
      }
      if (i >= text.size()) return false;
      ++i;
    }
    return true;
  };

  if (!literal("digraph")) return false;
  if (!quoted()) return false;
  if (!literal("{")) return false;
  skip_ws();
  while (i < text.size() && text[i] != '}') {
    if (text[i] == '"') {
      if (!quoted()) return false;
      skip_ws();
      if (text.compare(i, 2, "->") == 0) {
        i += 2;
        if (!quoted()) return false;
      }
      if (!attr_block()) return false;
      if (!literal(";")) return false;
    } else {
      if (!ident()) return false;  // bare statements like rankdir=TB
      if (!attr_block()) return false;
      if (!literal(";")) return false;
    }
    skip_ws();
  }
  return literal("}");
}

}  // namespace testsupport
