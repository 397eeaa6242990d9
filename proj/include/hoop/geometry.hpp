#pragma once

#include "hoop/ordering.hpp"
#include "hoop/set_model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hoop {

struct Point {
    double x = 0;
    double y = 0;
};

struct Box {
    double x = 0;
    double y = 0;
    double width = 0;
    double height = 0;

    bool contains(Point p) const { return p.x >= x && p.x <= x + width && p.y >= y && p.y <= y + height; }
    bool operator==(const Box&) const = default;
};

struct StyleConfig {
    double canvas_size = 600;       // side of the square Hoop canvas
    double inner_radius_ratio = 0.30;
    double set_stroke_width = 3;
    double guideline_stroke_width = 1;
    std::vector<std::string> palette = default_palette();
    double label_font_size = 14;
    double linear_column_width = 40;
    double linear_row_gap = 30;
    double linear_label_width = 100; // gutter left of the Linear rows
    double min_hit_target = 8;       // pointer band around a stroke, in pixels

    static std::vector<std::string> default_palette();
};

/// Empty when the style is usable.
std::vector<std::string> validate(const StyleConfig& style);

struct HitTarget {
    enum class Kind { None, Set, Zone };
    Kind kind = Kind::None;
    std::size_t index = 0;

    static HitTarget none() { return {}; }
    static HitTarget set(std::size_t i) { return {Kind::Set, i}; }
    static HitTarget zone(std::size_t i) { return {Kind::Zone, i}; }

    bool operator==(const HitTarget&) const = default;
};

struct LegendEntry {
    std::size_t set = 0;
    std::string label;
    std::string color;
    Point anchor; // text baseline start (Hoop) or end (Linear)
};

// A maximal run of consecutive zone positions containing one set.
struct Run {
    std::size_t set = 0;
    std::size_t first_position = 0;
    std::size_t length = 0;
    std::string color;
};

struct HoopArc : Run {
    double radius = 0;
    double start_deg = 0; // clockwise from 12 o'clock
    double end_deg = 0;   // start_deg < end_deg, may pass 360
};

struct Sector {
    std::size_t zone = 0;
    double start_deg = 0;
    double end_deg = 0;
};

struct Spoke {
    double angle_deg = 0;
    Point from;
    Point to;
};

struct HoopGeometry {
    Point center;
    double outer_radius = 0;
    double inner_radius = 0;
    std::vector<double> ring_radius; // by set position, outermost first
    std::vector<std::size_t> ring_set;
    std::vector<Sector> sectors; // by zone position
    std::vector<HoopArc> arcs;
    std::vector<Spoke> spokes;
    std::vector<double> guideline_radius;
    std::vector<LegendEntry> legend;
    Box bounds;

    double set_stroke_width = 0;
    double guideline_stroke_width = 0;
    double font_size = 0;
    double hit_band = 0; // half-width of the pointer band around a ring
};

struct LinearSegment : Run {
    double y = 0;
    double x0 = 0;
    double x1 = 0;
};

struct Column {
    std::size_t zone = 0;
    double x0 = 0;
    double x1 = 0;
};

struct Divider {
    double x = 0;
    double y0 = 0;
    double y1 = 0;
};

struct Guideline {
    std::size_t set = 0;
    double y = 0;
    double x0 = 0;
    double x1 = 0;
};

struct LinearGeometry {
    std::vector<double> row_y; // by set position, top first
    std::vector<std::size_t> row_set;
    std::vector<Column> columns; // by zone position
    std::vector<LinearSegment> segments;
    std::vector<Divider> dividers;
    std::vector<Guideline> guidelines;
    std::vector<LegendEntry> labels;
    Box grid;   // the columns-by-rows area
    Box bounds; // grid plus label gutter and margins

    double set_stroke_width = 0;
    double guideline_stroke_width = 0;
    double font_size = 0;
    double hit_band = 0;
};

/// Maximal runs of each set in arrangement order, sets in index order and
/// runs by starting position. Cyclic runs may wrap past the last position.
std::vector<Run> collect_runs(const SetSystem& system, const Arrangement& arrangement);

/// Alphabetical rank of each set name; the colour key of the legend.
std::vector<std::size_t> alphabetical_positions(const SetSystem& system);

HoopGeometry layout_hoop(const SetSystem& system, const Arrangement& arrangement, const StyleConfig& style);
LinearGeometry layout_linear(const SetSystem& system, const Arrangement& arrangement, const StyleConfig& style);

/// Rings win over zones. Inside the inner circle, or outside the outer one
/// but still on the canvas, the pointer angle selects the zone; the centre
/// itself reads as angle 0.
HitTarget hit_test_hoop(const HoopGeometry& geometry, Point point);

/// Rows win; above the top row or below the bottom row the column selects
/// the zone.
HitTarget hit_test_linear(const LinearGeometry& geometry, Point point);

/// Canvas position of an angle (clockwise from 12 o'clock) on a circle.
Point polar_point(Point center, double radius, double angle_deg);

} // namespace hoop
