#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mse {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An orbit id that does not occur in the diagram.
class UnknownOrbitError : public Error {
public:
  explicit UnknownOrbitError(std::string id)
      : Error("unknown orbit id: " + id), orbit(std::move(id)) {}
  std::string orbit;
};

/// The strict relation derived from the intersection edges is not acyclic;
/// such input cannot come from a diffeomorphism.
class CyclicRelationError : public Error {
public:
  explicit CyclicRelationError(std::vector<std::string> ids)
      : Error(message_for(ids)), cycle(std::move(ids)) {}
  std::vector<std::string> cycle;

private:
  static std::string message_for(const std::vector<std::string>& ids) {
    std::string m = "orbit relation contains a cycle:";
    for (const auto& id : ids) {
      m += ' ';
      m += id;
    }
    return m;
  }
};

/// A saddle orbit inside the requested filtration range has no separatrix data.
class MissingSeparatrixDataError : public Error {
public:
  explicit MissingSeparatrixDataError(std::string id)
      : Error("no separatrix records for saddle orbit: " + id), orbit(std::move(id)) {}
  std::string orbit;
};

/// A saddle orbit lacks the embedding annotation the decision procedure needs.
class IncompleteAnnotationsError : public Error {
public:
  explicit IncompleteAnnotationsError(std::string id)
      : Error("missing embedding annotation for orbit: " + id), orbit(std::move(id)) {}
  std::string orbit;
};

/// The requested operation has no defined answer for this input.
class NotApplicableError : public Error {
public:
  explicit NotApplicableError(std::string why)
      : Error("not applicable: " + why), reason(std::move(why)) {}
  std::string reason;
};

/// The input contradicts an identity every realizable system satisfies.
class InconsistentDataError : public Error {
public:
  explicit InconsistentDataError(std::string what)
      : Error("inconsistent data: " + what), detail(std::move(what)) {}
  std::string detail;
};

class ParseError : public Error {
public:
  ParseError(int line_, std::string what)
      : Error("parse error at line " + std::to_string(line_) + ": " + what),
        line(line_), detail(std::move(what)) {}
  int line;
  std::string detail;
};

class SchemaError : public Error {
public:
  SchemaError(std::string path_, std::string what)
      : Error("schema error at " + path_ + ": " + what),
        path(std::move(path_)), detail(std::move(what)) {}
  std::string path;
  std::string detail;
};

}  // namespace mse
