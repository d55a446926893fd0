#include "mapfla/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

namespace mapfla {

namespace {

/// Reads non-blank, non-comment lines split on whitespace.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      tokens_.clear();
      std::istringstream split(raw);
      for (std::string tok; split >> tok;) tokens_.push_back(tok);
      if (tokens_.empty() || tokens_.front().front() == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  void expect_arity(std::size_t n) const {
    if (tokens_.size() != n) {
      fail("'" + tokens_.front() + "' takes " + std::to_string(n - 1) + " field(s), got " +
           std::to_string(tokens_.size() - 1));
    }
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  template <typename Int>
  Int integer(std::size_t i) const {
    const std::string& s = tokens_[i];
    Int value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("expected an integer, got '" + s + "'");
    return value;
  }

  double real(std::size_t i) const {
    const std::string& s = tokens_[i];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail("expected a number, got '" + s + "'");
    return value;
  }

  void header(std::string_view magic) {
    if (!next()) throw ParseError(0, "empty file, expected '" + std::string(magic) + " 1'");
    if (tokens_.size() != 2 || tokens_[0] != magic) fail("expected header '" + std::string(magic) + " 1'");
    if (tokens_[1] != "1") fail("unsupported format version '" + tokens_[1] + "'");
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::vector<std::string> tokens_;
};

template <typename T, typename Parse>
T read_file(const std::filesystem::path& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

RoadmapFile parse_roadmap(std::istream& in) {
  LineReader reader(in);
  reader.header("mapfla-roadmap");
  std::vector<Point2D> points;
  std::vector<Edge> edges;
  double radius = 0.0;
  bool have_radius = false;
  while (reader.next()) {
    const std::string& kind = reader.tokens().front();
    if (kind == "r") {
      reader.expect_arity(2);
      if (have_radius) reader.fail("radius given twice");
      radius = reader.real(1);
      have_radius = true;
    } else if (kind == "v") {
      reader.expect_arity(4);
      const auto id = reader.integer<std::int64_t>(1);
      if (id != static_cast<std::int64_t>(points.size())) {
        reader.fail("vertex ids must be dense and ascending; expected " +
                    std::to_string(points.size()) + ", got " + std::to_string(id));
      }
      points.push_back(Point2D{reader.real(2), reader.real(3)});
    } else if (kind == "e") {
      reader.expect_arity(3);
      const auto u = reader.integer<VertexId>(1);
      const auto v = reader.integer<VertexId>(2);
      for (VertexId w : {u, v}) {
        if (w < 0 || static_cast<std::size_t>(w) >= points.size()) {
          reader.fail("edge references undeclared vertex " + std::to_string(w));
        }
      }
      edges.push_back(Edge{u, v});
    } else {
      reader.fail("unknown record '" + kind + "'");
    }
  }
  if (!have_radius) throw ParseError(reader.line(), "missing 'r <radius>' record");
  return RoadmapFile{Roadmap(std::move(points), std::move(edges)), radius};
}

void write_roadmap(std::ostream& out, const Roadmap& roadmap, double radius) {
  out << "mapfla-roadmap 1\n";
  out << "r " << format_real(radius) << '\n';
  for (std::size_t i = 0; i < roadmap.num_vertices(); ++i) {
    const Point2D& p = roadmap.point(static_cast<VertexId>(i));
    out << "v " << i << ' ' << format_real(p.x) << ' ' << format_real(p.y) << '\n';
  }
  for (const Edge& e : roadmap.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

Scenario parse_scenario(std::istream& in) {
  LineReader reader(in);
  reader.header("mapfla-scen");
  Scenario scen;
  bool have_roadmap = false;
  while (reader.next()) {
    const std::string& kind = reader.tokens().front();
    if (kind == "roadmap") {
      reader.expect_arity(2);
      if (have_roadmap) reader.fail("roadmap given twice");
      scen.roadmap = reader.tokens()[1];
      have_roadmap = true;
    } else if (kind == "a") {
      reader.expect_arity(3);
      scen.pairs.emplace_back(reader.integer<VertexId>(1), reader.integer<VertexId>(2));
    } else {
      reader.fail("unknown record '" + kind + "'");
    }
  }
  if (!have_roadmap) throw ParseError(reader.line(), "missing 'roadmap <path-or-name>' record");
  return scen;
}

void write_scenario(std::ostream& out, const Scenario& scenario) {
  out << "mapfla-scen 1\n";
  out << "roadmap " << scenario.roadmap << '\n';
  for (const auto& [s, g] : scenario.pairs) out << "a " << s << ' ' << g << '\n';
}

Plan parse_plan(std::istream& in) {
  LineReader reader(in);
  reader.header("mapfla-plan");
  Plan plan;
  while (reader.next()) {
    if (reader.tokens().front() != "m") reader.fail("unknown record '" + reader.tokens().front() + "'");
    reader.expect_arity(4);
    plan.push_back(
        Move{reader.integer<AgentId>(1), reader.integer<VertexId>(2), reader.integer<VertexId>(3)});
  }
  return plan;
}

void write_plan(std::ostream& out, const Plan& plan) {
  out << "mapfla-plan 1\n";
  for (const Move& m : plan) out << "m " << m.agent << ' ' << m.from << ' ' << m.to << '\n';
}

RoadmapFile read_roadmap_file(const std::filesystem::path& path) {
  return read_file<RoadmapFile>(path, [](std::istream& in) { return parse_roadmap(in); });
}

Scenario read_scenario_file(const std::filesystem::path& path) {
  return read_file<Scenario>(path, [](std::istream& in) { return parse_scenario(in); });
}

Plan read_plan_file(const std::filesystem::path& path) {
  return read_file<Plan>(path, [](std::istream& in) { return parse_plan(in); });
}

}  // namespace mapfla
