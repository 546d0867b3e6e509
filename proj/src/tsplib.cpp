#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "watchroute/errors.hpp"
#include "watchroute/tsp_solver.hpp"

namespace watchroute {

namespace {

constexpr std::int64_t kInt32Max = std::numeric_limits<std::int32_t>::max();

std::int64_t scaled(double c, std::int64_t scale, const std::string& what) {
  const double v = std::floor(c * static_cast<double>(scale) + 0.5);
  if (!(v <= static_cast<double>(kInt32Max))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "export_tsplib: " << what << " = " << c << " scales to " << v
        << ", beyond the int32 limit " << kInt32Max;
    throw CapacityError(msg.str());
  }
  return static_cast<std::int64_t>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected an integer, got '" + std::string(s) + "'", line);
  }
  return v;
}

/// Value of `key=<int>` inside a COMMENT line, if present.
std::optional<std::int64_t> comment_field(std::string_view comment, std::string_view key) {
  const auto pos = comment.find(key);
  if (pos == std::string_view::npos) return std::nullopt;
  std::string_view rest = comment.substr(pos + key.size());
  std::size_t end = 0;
  while (end < rest.size() && (std::isdigit(static_cast<unsigned char>(rest[end])) || rest[end] == '-')) ++end;
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + end, v);
  if (ec != std::errc() || end == 0) return std::nullopt;
  return v;
}

}  // namespace

std::string export_tsplib(const AtspInstance& inst, std::int64_t scale) {
  validate(inst);
  if (scale <= 0) throw DomainError("export_tsplib: scale must be positive");
  const std::size_t n = inst.n();
  double max_cost = 0.0;
  for (const auto& row : inst.cost) {
    for (double c : row) {
      if (c != kForbidden) max_cost = std::max(max_cost, c);
    }
  }
  const double beta = inst.penalty_hint.value_or(max_cost);
  const std::int64_t sentinel =
      scaled(beta * static_cast<double>(n) + 1.0, scale, "forbidden-arc sentinel");

  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double c = inst.cost[i][j];
      w[i][j] = c == kForbidden
                    ? sentinel
                    : scaled(c, scale, "cost[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }

  std::ostringstream out;
  out << "NAME: " << inst.name << "\n";
  out << "TYPE: " << (inst.symmetric() ? "TSP" : "ATSP") << "\n";
  out << "COMMENT: scale=" << scale << " sentinel=" << sentinel << "\n";
  out << "DIMENSION: " << n << "\n";
  out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  out << "EDGE_WEIGHT_SECTION\n";
  for (const auto& row : w) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
  out << "EOF\n";
  return out.str();
}

TsplibDocument import_tsplib(const std::string& text) {
  TsplibDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  std::optional<std::int64_t> dimension;
  std::string type, weight_type, weight_format;
  std::optional<std::int64_t> sentinel;
  bool in_section = false;
  std::vector<std::int64_t> values;
  std::size_t section_line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty()) continue;
    if (s == "EOF") break;
    if (in_section) {
      std::istringstream nums{std::string(s)};
      std::string tok;
      while (nums >> tok) values.push_back(parse_int(tok, line));
      continue;
    }
    if (s == "EDGE_WEIGHT_SECTION") {
      in_section = true;
      section_line = line;
      continue;
    }
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'KEY: value'", line);
    const std::string key(trim(s.substr(0, colon)));
    const std::string_view value = trim(s.substr(colon + 1));
    if (key == "NAME") {
      doc.instance.name = std::string(value);
    } else if (key == "TYPE") {
      type = std::string(value);
      if (type != "ATSP" && type != "TSP") throw ParseError("unsupported TYPE '" + type + "'", line);
    } else if (key == "COMMENT") {
      if (auto v = comment_field(value, "sentinel=")) sentinel = v;
      if (auto v = comment_field(value, "scale=")) doc.scale = *v;
    } else if (key == "DIMENSION") {
      dimension = parse_int(value, line);
      if (*dimension <= 0) throw ParseError("DIMENSION must be positive", line);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = std::string(value);
      if (weight_type != "EXPLICIT") {
        throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + weight_type + "'", line);
      }
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      weight_format = std::string(value);
      if (weight_format != "FULL_MATRIX") {
        throw ParseError("unsupported EDGE_WEIGHT_FORMAT '" + weight_format + "'", line);
      }
    } else {
      throw ParseError("unknown header field '" + key + "'", line);
    }
  }
  if (!dimension) throw ParseError("missing DIMENSION", line);
  if (weight_type.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE", line);
  if (!in_section) throw ParseError("missing EDGE_WEIGHT_SECTION", line);
  const auto n = static_cast<std::size_t>(*dimension);
  if (values.size() != n * n) {
    throw ParseError("EDGE_WEIGHT_SECTION holds " + std::to_string(values.size()) +
                         " values, expected " + std::to_string(n * n),
                     section_line);
  }
  doc.sentinel = sentinel.value_or(0);
  doc.instance.cost.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t v = values[i * n + j];
      doc.instance.cost[i][j] =
          (sentinel && v == *sentinel && i != j) ? kForbidden : static_cast<double>(v);
    }
  }
  return doc;
}

std::vector<std::size_t> import_tsplib_tour(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool in_section = false;
  std::vector<std::size_t> order;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty()) continue;
    if (!in_section) {
      if (s == "TOUR_SECTION") in_section = true;
      continue;
    }
    if (s == "EOF") break;
    std::istringstream nums{std::string(s)};
    std::string tok;
    while (nums >> tok) {
      const std::int64_t v = parse_int(tok, line);
      if (v == -1) return order;
      if (v <= 0) throw ParseError("tour node ids are 1-based", line);
      order.push_back(static_cast<std::size_t>(v - 1));
    }
  }
  if (!in_section) throw ParseError("missing TOUR_SECTION", line);
  return order;
}

}  // namespace watchroute
