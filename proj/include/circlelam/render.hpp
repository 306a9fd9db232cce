#ifndef CIRCLELAM_RENDER_HPP
#define CIRCLELAM_RENDER_HPP

#include "circlelam/lamination.hpp"
#include "circlelam/portrait.hpp"

#include <array>
#include <string>
#include <vector>

namespace circlelam {

struct DiskStyle {
    double radius = 240.0;
    enum class LeafMode { Chord, ConvexPolygon } leaf_mode = LeafMode::ConvexPolygon;
    bool black_outside = true;
    bool ticks = true;
};

struct TurtleTrace {
    std::vector<std::array<double, 2>> vertices; // k * d^n + 1 points
    double closure_error = 0.0;
};

/// Disk diagram of one level: circle, angle ticks, white leaves inside,
/// black leaves mirrored outside.  Byte-deterministic.
std::string render_lamination(Tower& tower, int n, const DiskStyle& style);

/// Walks the level-n circuit through the flat model described by the
/// geometry: arc of type j advances by the type-j edge vector rotated by
/// the current heading and scaled by lambda^{-n}; at each vertex the
/// heading turns by the equi-angled wedge rule.
TurtleTrace turtle_trace(Tower& tower, const GeometrySpec& geometry, int n);

/// The traced Peano-curve approximation, colored by the coarse-level
/// interval of each arc.  Byte-deterministic.
std::string render_tiling(Tower& tower, const TurtleTrace& trace, int n, int coarse_level,
                          const DiskStyle& style);

} // namespace circlelam

#endif
