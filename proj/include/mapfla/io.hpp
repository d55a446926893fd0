#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "mapfla/model.hpp"
#include "mapfla/scenario.hpp"

namespace mapfla {

/// Malformed input file; `line` is 1-based (0 when the problem is not tied to
/// a line, e.g. a missing header in an empty file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& detail, const std::string& file = {})
      : std::runtime_error(compose(line, detail, file)), line_(line), detail_(detail) {}
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  static std::string compose(std::size_t line, const std::string& detail, const std::string& file) {
    std::string where = file;
    if (line != 0) where += (where.empty() ? "line " : ":") + std::to_string(line);
    return where.empty() ? detail : where + ": " + detail;
  }

  std::size_t line_;
  std::string detail_;
};

struct RoadmapFile {
  Roadmap roadmap;
  double radius = 0.0;

  friend bool operator==(const RoadmapFile&, const RoadmapFile&) = default;
};

// Line-oriented text formats. Blank lines and lines starting with '#' are
// ignored on input and never written.
//
//   mapfla-roadmap 1        mapfla-scen 1            mapfla-plan 1
//   r <radius>              roadmap <path-or-name>   m <agent> <from> <to>
//   v <id> <x> <y>          a <start> <goal>
//   e <id1> <id2>

RoadmapFile parse_roadmap(std::istream& in);
void write_roadmap(std::ostream& out, const Roadmap& roadmap, double radius);

Scenario parse_scenario(std::istream& in);
void write_scenario(std::ostream& out, const Scenario& scenario);

Plan parse_plan(std::istream& in);
void write_plan(std::ostream& out, const Plan& plan);

RoadmapFile read_roadmap_file(const std::filesystem::path& path);
Scenario read_scenario_file(const std::filesystem::path& path);
Plan read_plan_file(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace mapfla
