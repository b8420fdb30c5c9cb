#pragma once

#include <string>

#include "sbfr/records.hpp"

namespace sbfr {

/// SVG of a run projected onto axes (x_axis, y_axis), both 0-based.
/// Elements carry classes: domain, rfr (ground-truth outline), afr (hull of
/// the projected points), source, boundary. Same record, same bytes.
/// Throws InvalidArgument for equal or out-of-range axes.
std::string render_svg(const RunRecord& record, std::size_t x_axis, std::size_t y_axis);

} // namespace sbfr
