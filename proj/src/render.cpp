#include "mapfla/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mapfla/io.hpp"

namespace mapfla {

namespace {

std::string agent_color(std::size_t agent, std::size_t count) {
  const double hue = 360.0 * static_cast<double>(agent) / static_cast<double>(std::max<std::size_t>(count, 1));
  return "hsl(" + format_real(std::round(hue)) + ",70%,50%)";
}

}  // namespace

void write_svg_frame(std::ostream& out, const Instance& instance, const State& state,
                     const Move* next, std::size_t frame, std::size_t frames) {
  const Roadmap& g = instance.roadmap;
  const double r = instance.radius;
  double lo_x = std::numeric_limits<double>::max(), lo_y = lo_x;
  double hi_x = std::numeric_limits<double>::lowest(), hi_y = hi_x;
  for (const Point2D& p : g.points()) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  if (g.num_vertices() == 0) lo_x = lo_y = hi_x = hi_y = 0.0;
  const double pad = 3.0 * r + 0.5;
  const double w = hi_x - lo_x + 2 * pad;
  const double h = hi_y - lo_y + 2 * pad;
  // SVG's y axis points down; flip so the picture matches the coordinates.
  auto sx = [&](double x) { return format_real(x - lo_x + pad); };
  auto sy = [&](double y) { return format_real(hi_y - y + pad); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << format_real(w) << ' '
      << format_real(h) << "\" width=\"800\" height=\""
      << format_real(std::round(800.0 * h / std::max(w, 1e-9))) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<title>frame " << frame << " of " << frames << "</title>\n";

  if (next != nullptr) {
    const Point2D& a = g.point(next->from);
    const Point2D& b = g.point(next->to);
    out << "<line class=\"margin\" x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\""
        << sx(b.x) << "\" y2=\"" << sy(b.y) << "\" stroke=\"red\" stroke-opacity=\"0.2\" "
        << "stroke-linecap=\"round\" stroke-width=\"" << format_real(4.0 * r) << "\"/>\n";
  }
  for (const Edge& e : g.edges()) {
    if (!g.contains(e.u) || !g.contains(e.v)) continue;
    const Point2D& a = g.point(e.u);
    const Point2D& b = g.point(e.v);
    out << "<line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x)
        << "\" y2=\"" << sy(b.y) << "\" stroke=\"#999\" stroke-width=\"" << format_real(r * 0.08)
        << "\"/>\n";
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const Point2D& p = g.point(static_cast<VertexId>(v));
    out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\""
        << format_real(r * 0.15) << "\" fill=\"#555\"/>\n";
  }
  for (std::size_t a = 0; a < state.num_agents(); ++a) {
    const auto agent = static_cast<AgentId>(a);
    const Point2D& p = g.point(state.position(agent));
    const Point2D& goal = g.point(instance.goals[a]);
    const std::string color = agent_color(a, state.num_agents());
    out << "<circle class=\"goal\" cx=\"" << sx(goal.x) << "\" cy=\"" << sy(goal.y) << "\" r=\""
        << format_real(r) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-dasharray=\""
        << format_real(r * 0.2) << "\" stroke-width=\"" << format_real(r * 0.06) << "\"/>\n";
    out << "<circle class=\"agent\" cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\""
        << format_real(r) << "\" fill=\"" << color << "\" fill-opacity=\"0.8\""
        << (next != nullptr && next->agent == agent ? " stroke=\"black\"" : "") << "/>\n";
    out << "<text x=\"" << sx(p.x) << "\" y=\"" << sy(p.y) << "\" font-size=\""
        << format_real(r * 0.8) << "\" text-anchor=\"middle\" dominant-baseline=\"central\">"
        << a << "</text>\n";
  }
  out << "</svg>\n";
}

std::size_t render_frames(const Instance& instance, const Plan& plan,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  State state = start_state(instance);
  const std::size_t frames = plan.size() + 1;
  for (std::size_t f = 0; f < frames; ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "frame-%04zu.svg", f);
    std::ofstream out(dir / name);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    write_svg_frame(out, instance, state, f < plan.size() ? &plan[f] : nullptr, f, frames);
    if (f < plan.size()) state = apply_move(state, plan[f]);
  }
  return frames;
}

}  // namespace mapfla
