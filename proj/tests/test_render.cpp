#include "hoop/error.hpp"
#include "hoop/render.hpp"
#include "hoop/session.hpp"

#include "oracle.hpp"
#include "svg_check.hpp"

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace hoop;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string golden(const std::string& name) { return std::string(HOOP_SOURCE_DIR) + "/tests/golden/" + name; }

std::string render(const SetSystem& s, const Arrangement& a, const HighlightState& h = {}) {
    return a.topology == Topology::Cyclic ? render_svg(layout_hoop(s, a, StyleConfig{}), h)
                                          : render_svg(layout_linear(s, a, StyleConfig{}), h);
}

} // namespace

TEST_CASE("rendered SVG is well-formed with one coloured element per run") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const auto s = canonicalize(
            oracle::random_system(rng, oracle::random_in(rng, 1, 7), oracle::random_in(rng, 1, 20)));
        for (auto topology : {Topology::Cyclic, Topology::Linear}) {
            auto a = identity_arrangement(s, topology);
            std::shuffle(a.zone_order.begin(), a.zone_order.end(), rng);
            const auto svg = render(s, a);
            REQUIRE(svgcheck::well_formed(svg));
            CHECK(svgcheck::with_class(svg, "run").size() == segment_counts(s, a).total);
            CHECK(svgcheck::with_class(svg, "guideline").size() == s.set_count());
            CHECK(svgcheck::with_class(svg, "legend-entry").size() == s.set_count());
            if (topology == Topology::Cyclic) {
                CHECK(svgcheck::with_class(svg, "spoke").size() == s.zone_count());
            } else {
                CHECK(svgcheck::with_class(svg, "divider").size() == s.zone_count() + 1);
            }
            CHECK(render(s, a) == svg);
        }
    }
}

TEST_CASE("set names are escaped") {
    const SetSystem s{{"<A&B>", "\"q\""}, {1, 2, 3}, {1, 1, 1}};
    for (auto topology : {Topology::Cyclic, Topology::Linear}) {
        const auto svg = render(s, identity_arrangement(s, topology));
        CHECK(svgcheck::well_formed(svg));
        CHECK(svg.find("&lt;A&amp;B&gt;") != std::string::npos);
    }
}

TEST_CASE("hoop viewBox is the canvas square") {
    std::mt19937_64 rng(5);
    const auto s = canonicalize(oracle::random_system(rng, 6, 12));
    const auto svg = render(s, identity_arrangement(s, Topology::Cyclic));
    CHECK(svgcheck::root_attribute(svg, "viewBox") == "0 0 600 600");
    StyleConfig style;
    style.canvas_size = 420;
    const auto small = render_svg(layout_hoop(s, identity_arrangement(s, Topology::Cyclic), style));
    CHECK(svgcheck::root_attribute(small, "viewBox") == "0 0 420 420");
}

TEST_CASE("highlight emphasis") {
    std::mt19937_64 rng(8);
    const auto s = canonicalize(oracle::random_system(rng, 5, 10));
    for (auto topology : {Topology::Cyclic, Topology::Linear}) {
        const auto a = identity_arrangement(s, topology);
        const auto plain = render(s, a);
        CHECK(svgcheck::with_class(plain, "halo").empty());
        CHECK(plain.find("opacity=") == std::string::npos);

        const auto dimmed = render(s, a, {HitTarget::set(2), Emphasis::DimOthers});
        for (const auto& run : svgcheck::with_class(dimmed, "run")) {
            const bool target = run.attributes.at("data-set") == "2";
            CHECK(run.attributes.count("opacity") == (target ? 0u : 1u));
            if (!target) CHECK(run.attributes.at("opacity") == "0.2");
        }

        // A zone target keeps every run passing through that zone's position.
        const auto zone = a.zone_order[3];
        const auto by_zone = render(s, a, {HitTarget::zone(zone), Emphasis::DimOthers});
        for (const auto& run : svgcheck::with_class(by_zone, "run")) {
            const auto set = std::stoul(run.attributes.at("data-set"));
            const auto first = std::stoul(run.attributes.at("data-first"));
            const auto length = std::stoul(run.attributes.at("data-length"));
            const bool covers = (3 + s.zone_count() - first) % s.zone_count() < length;
            if (covers) CHECK(zone_contains(s.zones[zone], set));
            CHECK(run.attributes.count("opacity") == (covers ? 0u : 1u));
        }

        const auto outlined = render(s, a, {HitTarget::set(2), Emphasis::Outline});
        CHECK(svgcheck::well_formed(outlined));
        CHECK(outlined.find("opacity=\"0.2\"") == std::string::npos);
        CHECK(svgcheck::with_class(outlined, "halo").size() > 1);
        CHECK(svgcheck::with_class(outlined, "run").size() == svgcheck::with_class(plain, "run").size());
    }
    CHECK(parse_emphasis(to_string(Emphasis::Outline)) == Emphasis::Outline);
    CHECK(parse_emphasis("dim-others") == Emphasis::DimOthers);
    CHECK_THROWS_AS(parse_emphasis("glow"), Error);
}

TEST_CASE("colours follow alphabetical position") {
    const auto palette = StyleConfig::default_palette();
    CHECK(color_for_set(0, palette) == palette[0]);
    CHECK(color_for_set(15, palette) == palette[15]);
    try {
        (void)color_for_set(16, palette);
        FAIL("expected palette exhaustion");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PaletteExhausted);
    }

    std::mt19937_64 rng(3);
    const auto s = canonicalize(oracle::random_system(rng, 6, 12));
    const auto a = identity_arrangement(s, Topology::Cyclic);
    const auto g = layout_hoop(s, a, StyleConfig{});
    const auto moved = layout_hoop(s, bring_set_to_front(a, 4), StyleConfig{});
    std::map<std::size_t, std::string> before, after;
    for (const auto& arc : g.arcs) before[arc.set] = arc.color;
    for (const auto& arc : moved.arcs) after[arc.set] = arc.color;
    CHECK(before == after);
    for (const auto& [set, color] : before) CHECK(color == palette[alphabetical_positions(s)[set]]);

    // Sixteen sets against a fifteen-entry palette.
    SetSystem wide;
    for (int i = 0; i < 16; ++i) wide.set_names.push_back("S" + std::to_string(10 + i));
    for (std::size_t i = 0; i < 16; ++i) wide.zones.push_back(ZoneMask{1} << i);
    wide.zone_weights.assign(16, 1);
    CHECK_NOTHROW(layout_hoop(wide, identity_arrangement(wide, Topology::Cyclic), StyleConfig{}));
    StyleConfig short_palette;
    short_palette.palette.resize(15);
    CHECK_THROWS_AS(layout_linear(wide, identity_arrangement(wide, Topology::Linear), short_palette), Error);
}

TEST_CASE("golden renders") {
    const auto system = canonicalize(parse_zones_json(slurp(golden("zones_6x12.json"))));
    for (auto kind : {DiagramKind::Hoop, DiagramKind::Linear}) {
        const auto arrangement = initial_arrangement(system, topology_of(kind), OptimizerMode::Auto, 1);
        const auto svg = render(system, arrangement);
        const auto expected = slurp(golden(kind == DiagramKind::Hoop ? "hoop_6x12.svg" : "linear_6x12.svg"));
        CHECK(svg == expected);
        CHECK(svgcheck::with_class(svg, "run").size() == segment_counts(system, arrangement).total);
    }
}
