#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>

#include "mapfla/model.hpp"

namespace mapfla {

/// One SVG frame: roadmap, agent disks at `state`, and, when `next` is given,
/// the 2r clearance band swept by that move.
void write_svg_frame(std::ostream& out, const Instance& instance, const State& state,
                     const Move* next, std::size_t frame, std::size_t frames);

/// Writes frame-0000.svg ... into `dir`: the start state and the state after
/// each move, so an empty plan yields a single frame. Returns the frame
/// count. The plan is replayed without legality checks.
std::size_t render_frames(const Instance& instance, const Plan& plan,
                          const std::filesystem::path& dir);

}  // namespace mapfla
