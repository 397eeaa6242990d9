#include "hoop/geometry.hpp"

#include "hoop/error.hpp"
#include "hoop/render.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace hoop {

std::vector<std::string> StyleConfig::default_palette() {
    // Tableau 10 followed by six darker complements.
    return {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
            "#9c755f", "#bab0ac", "#1f3b73", "#8c2d04", "#006d2c", "#54278f", "#636363", "#b8860b"};
}

std::vector<std::string> validate(const StyleConfig& style) {
    std::vector<std::string> report;
    if (!(style.canvas_size > 0)) report.push_back("canvas_size must be positive");
    if (!(style.inner_radius_ratio > 0 && style.inner_radius_ratio < 1)) {
        report.push_back("inner_radius_ratio must lie in (0, 1)");
    }
    if (!(style.set_stroke_width > 0)) report.push_back("set_stroke_width must be positive");
    if (!(style.guideline_stroke_width > 0)) report.push_back("guideline_stroke_width must be positive");
    if (!(style.label_font_size > 0)) report.push_back("label_font_size must be positive");
    if (!(style.linear_column_width > 0)) report.push_back("linear_column_width must be positive");
    if (!(style.linear_row_gap > 0)) report.push_back("linear_row_gap must be positive");
    if (style.linear_label_width < 0) report.push_back("linear_label_width must not be negative");
    if (style.palette.empty()) report.push_back("palette is empty");
    if (std::set<std::string>(style.palette.begin(), style.palette.end()).size() != style.palette.size()) {
        report.push_back("palette colours must be distinct");
    }
    return report;
}

Point polar_point(Point center, double radius, double angle_deg) {
    const double rad = angle_deg * std::numbers::pi / 180.0;
    return {center.x + radius * std::sin(rad), center.y - radius * std::cos(rad)};
}

std::vector<std::size_t> alphabetical_positions(const SetSystem& system) {
    const auto n = system.set_count();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return system.set_names[a] < system.set_names[b]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
    return rank;
}

std::vector<Run> collect_runs(const SetSystem& system, const Arrangement& arrangement) {
    check_dimensions(system, arrangement);
    const auto m = arrangement.zone_order.size();
    const bool cyclic = arrangement.topology == Topology::Cyclic;
    std::vector<Run> runs;
    for (std::size_t s = 0; s < system.set_count(); ++s) {
        std::vector<bool> present(m);
        for (std::size_t i = 0; i < m; ++i) present[i] = zone_contains(system.zones[arrangement.zone_order[i]], s);
        if (cyclic && std::all_of(present.begin(), present.end(), [](bool b) { return b; })) {
            runs.push_back({s, 0, m, {}});
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!present[i]) continue;
            const bool continues = i > 0 ? present[i - 1] : (cyclic && present[m - 1]);
            if (continues) continue;
            std::size_t length = 1;
            while (length < m && (cyclic || i + length < m) && present[(i + length) % m]) ++length;
            runs.push_back({s, i, length, {}});
        }
    }
    return runs;
}

namespace {

void require_style(const StyleConfig& style) {
    const auto report = validate(style);
    if (report.empty()) return;
    throw Error(ErrorCode::Validation, "invalid style: " + report.front());
}

void require_topology(const Arrangement& arrangement, Topology expected) {
    if (arrangement.topology != expected) {
        throw Error(ErrorCode::DimensionMismatch, std::string("a ") + std::string(to_string(expected)) +
                                                      " arrangement is required, got " +
                                                      std::string(to_string(arrangement.topology)));
    }
}

std::vector<std::string> set_colors(const SetSystem& system, const StyleConfig& style) {
    std::vector<std::string> colors;
    for (auto rank : alphabetical_positions(system)) colors.push_back(color_for_set(rank, style.palette));
    return colors;
}

std::vector<std::size_t> alphabetical_sets(const SetSystem& system) {
    const auto rank = alphabetical_positions(system);
    std::vector<std::size_t> out(rank.size());
    for (std::size_t s = 0; s < rank.size(); ++s) out[rank[s]] = s;
    return out;
}

} // namespace

HoopGeometry layout_hoop(const SetSystem& system, const Arrangement& arrangement, const StyleConfig& style) {
    require_style(style);
    require_topology(arrangement, Topology::Cyclic);
    check_dimensions(system, arrangement);
    const auto colors = set_colors(system, style);
    const auto n = system.set_count();
    const auto m = system.zone_count();

    const double size = style.canvas_size;
    const double legend_width = 0.2 * size;
    const double margin = 0.03 * size;

    HoopGeometry g;
    g.bounds = {0, 0, size, size};
    g.center = {legend_width + (size - legend_width) / 2, size / 2};
    g.outer_radius = (size - legend_width) / 2 - margin;
    g.inner_radius = style.inner_radius_ratio * g.outer_radius;
    g.set_stroke_width = style.set_stroke_width;
    g.guideline_stroke_width = style.guideline_stroke_width;
    g.font_size = style.label_font_size;
    g.hit_band = std::max(style.set_stroke_width, style.min_hit_target) / 2;

    const double spacing = (g.outer_radius - g.inner_radius) / static_cast<double>(n + 1);
    for (std::size_t p = 0; p < n; ++p) {
        g.ring_radius.push_back(g.outer_radius - static_cast<double>(p + 1) * spacing);
        g.ring_set.push_back(arrangement.set_order[p]);
    }
    std::vector<double> radius_of_set(n);
    for (std::size_t p = 0; p < n; ++p) radius_of_set[g.ring_set[p]] = g.ring_radius[p];
    g.guideline_radius = g.ring_radius;

    const double sweep = 360.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        g.sectors.push_back({arrangement.zone_order[j], static_cast<double>(j) * sweep,
                             static_cast<double>(j + 1) * sweep});
        g.spokes.push_back({static_cast<double>(j) * sweep, g.center,
                            polar_point(g.center, g.outer_radius, static_cast<double>(j) * sweep)});
    }

    for (auto& run : collect_runs(system, arrangement)) {
        HoopArc arc;
        static_cast<Run&>(arc) = run;
        arc.color = colors[run.set];
        arc.radius = radius_of_set[run.set];
        arc.start_deg = static_cast<double>(run.first_position) * sweep;
        arc.end_deg = arc.start_deg + static_cast<double>(run.length) * sweep;
        g.arcs.push_back(std::move(arc));
    }

    const double line_height = style.label_font_size * 1.6;
    std::size_t row = 0;
    for (auto s : alphabetical_sets(system)) {
        g.legend.push_back({s, system.set_names[s], colors[s],
                            {margin, margin + style.label_font_size + static_cast<double>(row++) * line_height}});
    }
    return g;
}

LinearGeometry layout_linear(const SetSystem& system, const Arrangement& arrangement, const StyleConfig& style) {
    require_style(style);
    require_topology(arrangement, Topology::Linear);
    check_dimensions(system, arrangement);
    const auto colors = set_colors(system, style);
    const auto n = system.set_count();
    const auto m = system.zone_count();

    const double gutter = style.linear_label_width;
    const double gap = style.linear_row_gap;
    const double width = style.linear_column_width;

    LinearGeometry g;
    g.set_stroke_width = style.set_stroke_width;
    g.guideline_stroke_width = style.guideline_stroke_width;
    g.font_size = style.label_font_size;
    g.hit_band = std::max(style.set_stroke_width, style.min_hit_target) / 2;
    g.grid = {gutter, gap / 2, static_cast<double>(m) * width, static_cast<double>(n) * gap};
    g.bounds = {0, 0, gutter + g.grid.width, static_cast<double>(n + 1) * gap};

    std::vector<double> y_of_set(n);
    for (std::size_t p = 0; p < n; ++p) {
        const double y = static_cast<double>(p + 1) * gap;
        g.row_y.push_back(y);
        g.row_set.push_back(arrangement.set_order[p]);
        y_of_set[arrangement.set_order[p]] = y;
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double x0 = gutter + static_cast<double>(j) * width;
        g.columns.push_back({arrangement.zone_order[j], x0, x0 + width});
    }
    for (std::size_t j = 0; j <= m; ++j) {
        g.dividers.push_back({gutter + static_cast<double>(j) * width, g.grid.y, g.grid.y + g.grid.height});
    }
    for (std::size_t p = 0; p < n; ++p) {
        g.guidelines.push_back({g.row_set[p], g.row_y[p], gutter, gutter + g.grid.width});
        const auto s = g.row_set[p];
        g.labels.push_back({s, system.set_names[s], colors[s], {gutter - style.label_font_size / 2, g.row_y[p]}});
    }
    for (auto& run : collect_runs(system, arrangement)) {
        LinearSegment seg;
        static_cast<Run&>(seg) = run;
        seg.color = colors[run.set];
        seg.y = y_of_set[run.set];
        seg.x0 = gutter + static_cast<double>(run.first_position) * width;
        seg.x1 = seg.x0 + static_cast<double>(run.length) * width;
        g.segments.push_back(std::move(seg));
    }
    return g;
}

HitTarget hit_test_hoop(const HoopGeometry& geometry, Point point) {
    const double dx = point.x - geometry.center.x;
    const double dy = point.y - geometry.center.y;
    const double distance = std::hypot(dx, dy);

    std::size_t nearest = geometry.ring_radius.size();
    double nearest_gap = 0;
    for (std::size_t p = 0; p < geometry.ring_radius.size(); ++p) {
        const double gap = std::abs(distance - geometry.ring_radius[p]);
        if (gap <= geometry.hit_band && (nearest == geometry.ring_radius.size() || gap < nearest_gap)) {
            nearest = p;
            nearest_gap = gap;
        }
    }
    if (nearest < geometry.ring_radius.size()) return HitTarget::set(geometry.ring_set[nearest]);

    const bool inside = distance < geometry.inner_radius;
    const bool outside = distance > geometry.outer_radius && geometry.bounds.contains(point);
    if ((!inside && !outside) || geometry.sectors.empty()) return HitTarget::none();

    double angle = distance == 0 ? 0 : std::atan2(dx, -dy) * 180.0 / std::numbers::pi;
    if (angle < 0) angle += 360;
    const auto m = geometry.sectors.size();
    auto position = static_cast<std::size_t>(angle / (360.0 / static_cast<double>(m)));
    position = std::min(position, m - 1);
    return HitTarget::zone(geometry.sectors[position].zone);
}

HitTarget hit_test_linear(const LinearGeometry& geometry, Point point) {
    const auto& grid = geometry.grid;
    if (point.x < grid.x || point.x >= grid.x + grid.width || !geometry.bounds.contains(point)) {
        return HitTarget::none();
    }
    std::size_t nearest = geometry.row_y.size();
    double nearest_gap = 0;
    for (std::size_t p = 0; p < geometry.row_y.size(); ++p) {
        const double gap = std::abs(point.y - geometry.row_y[p]);
        if (gap <= geometry.hit_band && (nearest == geometry.row_y.size() || gap < nearest_gap)) {
            nearest = p;
            nearest_gap = gap;
        }
    }
    if (nearest < geometry.row_y.size()) return HitTarget::set(geometry.row_set[nearest]);
    if (geometry.row_y.empty() || geometry.columns.empty()) return HitTarget::none();

    const bool above = point.y < geometry.row_y.front() - geometry.hit_band;
    const bool below = point.y > geometry.row_y.back() + geometry.hit_band;
    if (!above && !below) return HitTarget::none();
    for (const auto& column : geometry.columns) {
        if (point.x >= column.x0 && point.x < column.x1) return HitTarget::zone(column.zone);
    }
    return HitTarget::none();
}

} // namespace hoop
