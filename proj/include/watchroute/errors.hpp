#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace watchroute {

/// Input violates a precondition of a geometric or combinatorial operation
/// (point outside the polygon, broken chain visibility, malformed curve).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The instance has no feasible plan (some target cannot be seen).
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::vector<std::size_t> ids = {})
      : std::runtime_error(what), ids_(std::move(ids)) {}
  const std::vector<std::size_t>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::size_t> ids_;
};

/// Problem size exceeds what a solver or oracle is configured to handle.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed text input. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A JSON document is well formed but a field is missing or invalid.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A TSP tour could not be mapped back to robot paths.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact solver ran out of its time budget.
class TimeoutError : public std::runtime_error {
 public:
  TimeoutError(const std::string& what, double lower_bound, double incumbent)
      : std::runtime_error(what), lower_bound_(lower_bound), incumbent_(incumbent) {}
  double lower_bound() const noexcept { return lower_bound_; }
  double incumbent() const noexcept { return incumbent_; }

 private:
  double lower_bound_;
  double incumbent_;
};

}  // namespace watchroute
