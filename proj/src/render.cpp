#include "hoop/render.hpp"

#include "hoop/error.hpp"

#include <cstdio>
#include <sstream>

namespace hoop {

std::string_view to_string(Emphasis emphasis) {
    return emphasis == Emphasis::DimOthers ? "dim-others" : "outline";
}

Emphasis parse_emphasis(std::string_view text) {
    if (text == "dim-others") return Emphasis::DimOthers;
    if (text == "outline") return Emphasis::Outline;
    throw Error(ErrorCode::Parse, "unknown emphasis '" + std::string(text) + "'");
}

const std::string& color_for_set(std::size_t alphabetical_position, const std::vector<std::string>& palette) {
    if (alphabetical_position >= palette.size()) {
        throw Error(ErrorCode::PaletteExhausted, "palette has " + std::to_string(palette.size()) +
                                                     " colours, set position " +
                                                     std::to_string(alphabetical_position) + " needs another");
    }
    return palette[alphabetical_position];
}

namespace {

constexpr const char* kGuideColor = "#c8c8c8";
constexpr const char* kSpokeColor = "#9a9a9a";
constexpr const char* kHaloColor = "#202020";

// Fixed three-decimal formatting with trailing zeros trimmed; never "-0".
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

void open_svg(std::ostringstream& os, const Box& box, std::string_view title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(box.x) << ' ' << num(box.y)
       << ' ' << num(box.width) << ' ' << num(box.height) << "\" width=\"" << num(box.width) << "\" height=\""
       << num(box.height) << "\">\n"
       << "<title>" << title << "</title>\n";
}

bool covers(const Run& run, std::size_t position, std::size_t m) {
    return m > 0 && (position + m - run.first_position) % m < run.length;
}

// Zone highlights address zone indices; runs address positions.
std::size_t position_of_zone(const std::vector<std::size_t>& zone_at, std::size_t zone) {
    for (std::size_t j = 0; j < zone_at.size(); ++j) {
        if (zone_at[j] == zone) return j;
    }
    return zone_at.size();
}

bool is_target(const Run& run, const HighlightState& highlight, std::size_t target_position, std::size_t m) {
    switch (highlight.target.kind) {
    case HitTarget::Kind::Set: return run.set == highlight.target.index;
    case HitTarget::Kind::Zone: return covers(run, target_position, m);
    case HitTarget::Kind::None: return true;
    }
    return true;
}

std::string arc_path(Point center, double radius, double start_deg, double end_deg) {
    const auto from = polar_point(center, radius, start_deg);
    const auto r = num(radius);
    if (end_deg - start_deg >= 360.0) {
        const auto half = polar_point(center, radius, start_deg + 180.0);
        return "M " + num(from.x) + ' ' + num(from.y) + " A " + r + ' ' + r + " 0 1 1 " + num(half.x) + ' ' +
               num(half.y) + " A " + r + ' ' + r + " 0 1 1 " + num(from.x) + ' ' + num(from.y);
    }
    const auto to = polar_point(center, radius, end_deg);
    const char* large = end_deg - start_deg > 180.0 ? "1" : "0";
    return "M " + num(from.x) + ' ' + num(from.y) + " A " + r + ' ' + r + " 0 " + large + " 1 " + num(to.x) + ' ' +
           num(to.y);
}

std::string wedge_path(Point center, double radius, double start_deg, double end_deg) {
    const auto from = polar_point(center, radius, start_deg);
    const auto to = polar_point(center, radius, end_deg);
    const char* large = end_deg - start_deg > 180.0 ? "1" : "0";
    return "M " + num(center.x) + ' ' + num(center.y) + " L " + num(from.x) + ' ' + num(from.y) + " A " +
           num(radius) + ' ' + num(radius) + " 0 " + large + " 1 " + num(to.x) + ' ' + num(to.y) + " Z";
}

void run_attributes(std::ostringstream& os, const Run& run, bool dim) {
    os << " class=\"run\" data-set=\"" << run.set << "\" data-first=\"" << run.first_position << "\" data-length=\""
       << run.length << "\" stroke=\"" << run.color << '"';
    if (dim) os << " opacity=\"" << num(kDimOpacity) << '"';
}

} // namespace

std::string render_svg(const HoopGeometry& g, const HighlightState& highlight) {
    std::ostringstream os;
    open_svg(os, g.bounds, "Hoop Diagram");
    const auto m = g.sectors.size();
    std::vector<std::size_t> zone_at;
    for (const auto& sector : g.sectors) zone_at.push_back(sector.zone);
    const auto target_position =
        highlight.target.kind == HitTarget::Kind::Zone ? position_of_zone(zone_at, highlight.target.index) : m;

    os << "<g class=\"guidelines\" fill=\"none\" stroke=\"" << kGuideColor << "\" stroke-width=\""
       << num(g.guideline_stroke_width) << "\">\n";
    for (std::size_t p = 0; p < g.guideline_radius.size(); ++p) {
        os << "<circle class=\"guideline\" data-set=\"" << g.ring_set[p] << "\" cx=\"" << num(g.center.x)
           << "\" cy=\"" << num(g.center.y) << "\" r=\"" << num(g.guideline_radius[p]) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"spokes\" stroke=\"" << kSpokeColor << "\" stroke-width=\"" << num(g.guideline_stroke_width)
       << "\">\n";
    for (const auto& spoke : g.spokes) {
        os << "<line class=\"spoke\" x1=\"" << num(spoke.from.x) << "\" y1=\"" << num(spoke.from.y) << "\" x2=\""
           << num(spoke.to.x) << "\" y2=\"" << num(spoke.to.y) << "\"/>\n";
    }
    os << "</g>\n";

    if (highlight.target.kind != HitTarget::Kind::None && highlight.emphasis == Emphasis::Outline) {
        os << "<g class=\"halo\" fill=\"none\" stroke=\"" << kHaloColor << "\" stroke-width=\""
           << num(g.set_stroke_width + 4) << "\" opacity=\"0.35\">\n";
        if (highlight.target.kind == HitTarget::Kind::Set) {
            for (const auto& arc : g.arcs) {
                if (arc.set != highlight.target.index) continue;
                os << "<path class=\"halo\" d=\"" << arc_path(g.center, arc.radius, arc.start_deg, arc.end_deg)
                   << "\"/>\n";
            }
        } else if (target_position < m) {
            const auto& sector = g.sectors[target_position];
            os << "<path class=\"halo\" d=\"" << wedge_path(g.center, g.outer_radius, sector.start_deg, sector.end_deg)
               << "\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g class=\"runs\" fill=\"none\" stroke-width=\"" << num(g.set_stroke_width) << "\">\n";
    for (const auto& arc : g.arcs) {
        const bool dim = highlight.target.kind != HitTarget::Kind::None && highlight.emphasis == Emphasis::DimOthers &&
                         !is_target(arc, highlight, target_position, m);
        os << "<path";
        run_attributes(os, arc, dim);
        os << " d=\"" << arc_path(g.center, arc.radius, arc.start_deg, arc.end_deg) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"" << num(g.font_size) << "\">\n";
    for (const auto& entry : g.legend) {
        const double y = entry.anchor.y - g.font_size / 3;
        os << "<g class=\"legend-entry\" data-set=\"" << entry.set << "\">"
           << "<line x1=\"" << num(entry.anchor.x) << "\" y1=\"" << num(y) << "\" x2=\""
           << num(entry.anchor.x + g.font_size * 1.2) << "\" y2=\"" << num(y) << "\" stroke=\"" << entry.color
           << "\" stroke-width=\"" << num(g.set_stroke_width) << "\"/>"
           << "<text x=\"" << num(entry.anchor.x + g.font_size * 1.6) << "\" y=\"" << num(entry.anchor.y)
           << "\" fill=\"#202020\">" << escape(entry.label) << "</text></g>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

std::string render_svg(const LinearGeometry& g, const HighlightState& highlight) {
    std::ostringstream os;
    open_svg(os, g.bounds, "Linear Diagram");
    const auto m = g.columns.size();
    std::vector<std::size_t> zone_at;
    for (const auto& column : g.columns) zone_at.push_back(column.zone);
    const auto target_position =
        highlight.target.kind == HitTarget::Kind::Zone ? position_of_zone(zone_at, highlight.target.index) : m;

    os << "<g class=\"guidelines\" stroke=\"" << kGuideColor << "\" stroke-width=\""
       << num(g.guideline_stroke_width) << "\">\n";
    for (const auto& line : g.guidelines) {
        os << "<line class=\"guideline\" data-set=\"" << line.set << "\" x1=\"" << num(line.x0) << "\" y1=\""
           << num(line.y) << "\" x2=\"" << num(line.x1) << "\" y2=\"" << num(line.y) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"dividers\" stroke=\"" << kSpokeColor << "\" stroke-width=\"" << num(g.guideline_stroke_width)
       << "\">\n";
    for (const auto& divider : g.dividers) {
        os << "<line class=\"divider\" x1=\"" << num(divider.x) << "\" y1=\"" << num(divider.y0) << "\" x2=\""
           << num(divider.x) << "\" y2=\"" << num(divider.y1) << "\"/>\n";
    }
    os << "</g>\n";

    if (highlight.target.kind != HitTarget::Kind::None && highlight.emphasis == Emphasis::Outline) {
        os << "<g class=\"halo\" fill=\"none\" stroke=\"" << kHaloColor << "\" stroke-width=\""
           << num(g.set_stroke_width + 4) << "\" opacity=\"0.35\">\n";
        if (highlight.target.kind == HitTarget::Kind::Set) {
            for (const auto& seg : g.segments) {
                if (seg.set != highlight.target.index) continue;
                os << "<line class=\"halo\" x1=\"" << num(seg.x0) << "\" y1=\"" << num(seg.y) << "\" x2=\""
                   << num(seg.x1) << "\" y2=\"" << num(seg.y) << "\"/>\n";
            }
        } else if (target_position < m) {
            const auto& c = g.columns[target_position];
            const double y0 = g.grid.y;
            const double y1 = g.grid.y + g.grid.height;
            os << "<path class=\"halo\" d=\"M " << num(c.x0) << ' ' << num(y0) << " L " << num(c.x1) << ' ' << num(y0)
               << " L " << num(c.x1) << ' ' << num(y1) << " L " << num(c.x0) << ' ' << num(y1) << " Z\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g class=\"runs\" stroke-width=\"" << num(g.set_stroke_width) << "\">\n";
    for (const auto& seg : g.segments) {
        const bool dim = highlight.target.kind != HitTarget::Kind::None && highlight.emphasis == Emphasis::DimOthers &&
                         !is_target(seg, highlight, target_position, m);
        os << "<line";
        run_attributes(os, seg, dim);
        os << " x1=\"" << num(seg.x0) << "\" y1=\"" << num(seg.y) << "\" x2=\"" << num(seg.x1) << "\" y2=\""
           << num(seg.y) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"" << num(g.font_size)
       << "\" text-anchor=\"end\" dominant-baseline=\"middle\">\n";
    for (const auto& label : g.labels) {
        os << "<g class=\"legend-entry\" data-set=\"" << label.set << "\"><text x=\"" << num(label.anchor.x)
           << "\" y=\"" << num(label.anchor.y) << "\" fill=\"" << label.color << "\">" << escape(label.label)
           << "</text></g>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace hoop
