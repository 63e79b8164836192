#pragma once

// Deterministic SVG renderings: a fixed canvas, fixed number formatting, no
// timestamps.

#include <string>

#include "chaut/dynamics.hpp"

namespace chaut {

inline constexpr int kPlotSamples = 512;

/// Graph of an n = 2 map sampled exactly at kPlotSamples points, with the
/// source vertices marked.
std::string svg_map_graph(const PiecewiseFractionalMap& map, int samples = kPlotSamples);

/// n = 3: the source complex next to its image. Throws Unsupported otherwise.
std::string svg_complex_image(const PiecewiseFractionalMap& map);

/// One polyline per coordinate against the step index.
std::string svg_orbit_trace(const OrbitRecord& orbit);

}  // namespace chaut
