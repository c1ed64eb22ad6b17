#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mse/examples.hpp"
#include "mse/json_io.hpp"
#include "mse/report.hpp"

namespace mse::cli {

namespace detail {

struct CommonOptions {
  std::string input;
  std::string example;
  std::string format = "text";
};

inline void attach_common(CLI::App* cmd, CommonOptions& opts) {
  auto* input = cmd->add_option("--input", opts.input, "path to a diagram JSON document");
  auto* example = cmd->add_option("--example", opts.example, "name of a built-in diagram");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  input->excludes(example);
}

inline Diagram load_diagram(const CommonOptions& opts) {
  if (!opts.example.empty()) {
    auto d = make_example(opts.example);
    if (!d) throw NotApplicableError("unknown example '" + opts.example + "'");
    return *d;
  }
  std::ifstream in(opts.input, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open input file '" + opts.input + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

inline int emit_report(const Diagram& d, const Report& rep, const CommonOptions& opts,
                       std::ostream& out) {
  if (opts.format == "json")
    out << render_json(rep).dump(2) << "\n";
  else if (opts.format == "dot")
    out << render_dot(d, rep);
  else
    out << render_text(rep);
  return rep.any_violations() ? 2 : 0;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Exit codes: 0 clean,
/// 1 usage or parse problems, 2 violations or inconsistent input.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"combinatorial analysis of Morse-Smale diffeomorphisms on 3-manifolds:\n"
               "dynamical numberings, attractor filtrations, ambient classification and\n"
               "dynamically ordered energy functions",
               "msenergy"};
  app.require_subcommand(1);

  detail::CommonOptions opts;
  struct Sub {
    CLI::App* cmd;
    ReportParts parts;
    bool needs_class = false;
  };
  std::vector<Sub> subs;
  auto add = [&](const char* name, const char* help, ReportParts parts,
                 bool needs_class = false) {
    CLI::App* cmd = app.add_subcommand(name, help);
    detail::attach_common(cmd, opts);
    subs.push_back({cmd, parts, needs_class});
    return cmd;
  };
  add("validate", "check every model invariant", ReportParts::none());
  add("order", "Smale order, behaviours and the canonical dynamical numbering",
      {.ordering = true});
  add("filtration", "attractor/repeller filtration with component, point and genus counts",
      {.ordering = true, .filtration = true});
  add("classify", "ambient manifold for heteroclinic-curve-free diagrams",
      {.classification = true}, /*needs_class=*/true);
  add("energy", "decide existence of a dynamically ordered energy function",
      {.ordering = true, .filtration = true, .classification = true, .energy = true});
  add("report", "full report: all of the above", ReportParts::all());

  CLI::App* examples_cmd =
      app.add_subcommand("examples", "list built-in diagrams, or emit one as JSON");
  detail::attach_common(examples_cmd, opts);

  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv;
  argv.push_back("msenergy");
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (examples_cmd->parsed()) {
      if (opts.example.empty() && opts.input.empty()) {
        for (const auto& info : example_catalog())
          out << info.name << "  —  " << info.summary << "\n";
        return 0;
      }
      const Diagram d = detail::load_diagram(opts);
      if (opts.format == "dot")
        out << render_dot(d, build_report(d, {.ordering = true}));
      else
        out << emit_document_text(d);
      return 0;
    }

    for (const auto& sub : subs) {
      if (!sub.cmd->parsed()) continue;
      if (opts.input.empty() && opts.example.empty()) {
        err << "error: one of --input or --example is required\n";
        return 1;
      }
      const Diagram d = detail::load_diagram(opts);
      const Report rep = build_report(d, sub.parts);
      const int code = detail::emit_report(d, rep, opts, out);
      if (code == 0 && sub.needs_class && !rep.manifold) return 2;
      return code;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotApplicableError& e) {
    // only the unknown-example path throws this here
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand selected\n";
  return 1;
}

}  // namespace mse::cli
