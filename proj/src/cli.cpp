#include "hoop/cli.hpp"

#include "hoop/api.hpp"
#include "hoop/error.hpp"
#include "hoop/geometry.hpp"
#include "hoop/render.hpp"
#include "rng.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hoop {

SetSystem generate_system(std::size_t n_sets, std::size_t n_zones, std::uint64_t seed) {
    if (n_sets == 0 || n_sets > kMaxSets) {
        throw Error(ErrorCode::Validation, "--sets must lie in [1, " + std::to_string(kMaxSets) + "]");
    }
    const std::size_t available = (std::size_t{1} << n_sets) - 1;
    if (n_zones == 0 || n_zones > available) {
        throw Error(ErrorCode::Validation, "--zones must lie in [1, " + std::to_string(available) + "] for " +
                                               std::to_string(n_sets) + " sets");
    }

    const ZoneMask everything = static_cast<ZoneMask>(available);
    std::mt19937_64 rng(seed);
    std::vector<ZoneMask> candidates(available);
    for (std::size_t i = 0; i < available; ++i) candidates[i] = static_cast<ZoneMask>(i + 1);

    constexpr int kMaxAttempts = 1'000'000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        // Partial Fisher-Yates: the first n_zones slots are a uniform sample
        // without replacement.
        auto pool = candidates;
        ZoneMask covered = 0;
        for (std::size_t i = 0; i < n_zones; ++i) {
            std::swap(pool[i], pool[i + detail::bounded(rng, available - i)]);
            covered |= pool[i];
        }
        if (covered != everything) continue;

        SetSystem system;
        for (std::size_t s = 0; s < n_sets; ++s) system.set_names.emplace_back(1, static_cast<char>('A' + s));
        system.zones.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_zones));
        system.zone_weights.assign(n_zones, 1);
        return canonicalize(system);
    }
    throw Error(ErrorCode::Validation, "could not sample zones covering every set");
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::EmptyTable:
    case ErrorCode::DuplicateItem: return exit_code::kParse;
    case ErrorCode::Validation:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidIndex:
    case ErrorCode::PaletteExhausted: return exit_code::kValidation;
    case ErrorCode::ThresholdExceeded: return exit_code::kThreshold;
    case ErrorCode::Io: return exit_code::kIo;
    }
    return exit_code::kValidation;
}

StyleConfig style_for(const CliConfig& config) {
    StyleConfig style;
    if (config.canvas) style.canvas_size = *config.canvas;
    return style;
}

std::string optimize_report(const SetSystem& system, const Arrangement& arrangement) {
    const auto stats = segment_counts(system, arrangement);
    std::ostringstream os;
    os << "topology\t" << to_string(arrangement.topology) << '\n';
    os << "zone_order";
    for (auto z : arrangement.zone_order) os << '\t' << z;
    os << "\nset_order";
    for (auto s : arrangement.set_order) os << '\t' << s;
    os << "\nposition\tzone\tmembers\n";
    for (std::size_t p = 0; p < arrangement.zone_order.size(); ++p) {
        const auto z = arrangement.zone_order[p];
        os << p << '\t' << z << '\t' << zone_label(system, system.zones[z]) << '\n';
    }
    os << "set\truns\n";
    for (std::size_t s = 0; s < system.set_count(); ++s) os << system.set_names[s] << '\t' << stats.runs_per_set[s] << '\n';
    os << "total\t" << stats.total << '\n';
    return os.str();
}

std::string metrics_report(const SetSystem& system, const CliConfig& config) {
    const auto style = style_for(config);
    std::ostringstream os;
    os << "kind\tmetric\tvalue\n";
    for (auto kind : {DiagramKind::Hoop, DiagramKind::Linear}) {
        const auto arrangement = initial_arrangement(system, topology_of(kind), config.optimizer, config.seed);
        const auto stats = segment_counts(system, arrangement);
        const auto name = to_string(kind);
        for (std::size_t s = 0; s < system.set_count(); ++s) {
            os << name << "\truns:" << system.set_names[s] << '\t' << stats.runs_per_set[s] << '\n';
        }
        os << name << "\ttotal\t" << stats.total << '\n';
        Box bounds;
        if (kind == DiagramKind::Hoop) {
            bounds = layout_hoop(system, arrangement, style).bounds;
        } else {
            const auto g = layout_linear(system, arrangement, style);
            bounds = g.bounds;
            os << name << "\tgrid_width\t" << num(g.grid.width) << '\n';
            os << name << "\tgrid_height\t" << num(g.grid.height) << '\n';
        }
        os << name << "\twidth\t" << num(bounds.width) << '\n';
        os << name << "\theight\t" << num(bounds.height) << '\n';
        os << name << "\taspect_ratio\t" << num(bounds.width / bounds.height) << '\n';
    }
    return os.str();
}

} // namespace

SetSystem load_system(const std::string& path, InputFormat format, std::size_t* skipped) {
    const auto text = read_file(path);
    if (format == InputFormat::Auto) {
        format = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? InputFormat::Zones
                                                                                     : InputFormat::Items;
    }
    if (format == InputFormat::Zones) return parse_zones_json(text);
    auto derived = zones_from_memberships(parse_items(text));
    if (skipped) *skipped = derived.skipped_items;
    return std::move(derived.system);
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.subcommand == Subcommand::Generate) {
            write_output(config.output, to_zones_json(generate_system(config.n_sets, config.n_zones, config.seed)), out);
            return exit_code::kSuccess;
        }
        if (config.subcommand == Subcommand::Serve) {
            SessionService service;
            HttpServer server(service);
            const int port = server.bind(config.host, config.port);
            if (port < 0) throw Error(ErrorCode::Io, "cannot bind " + config.host + ":" + std::to_string(config.port));
            err << "listening on http://" << config.host << ':' << port << '\n';
            return server.listen() ? exit_code::kSuccess : exit_code::kIo;
        }

        if (config.input.empty()) throw Error(ErrorCode::Io, "--input is required");
        std::size_t skipped = 0;
        const auto system = canonicalize(load_system(config.input, config.input_format, &skipped));
        if (skipped > 0) err << "skipped " << skipped << " item(s) without interests\n";

        const auto topology = topology_of(config.kind);
        switch (config.subcommand) {
        case Subcommand::Render: {
            const auto arrangement = initial_arrangement(system, topology, config.optimizer, config.seed);
            const auto style = style_for(config);
            const auto svg = config.kind == DiagramKind::Hoop ? render_svg(layout_hoop(system, arrangement, style))
                                                              : render_svg(layout_linear(system, arrangement, style));
            write_output(config.output, svg, out);
            break;
        }
        case Subcommand::Optimize:
            write_output(config.output,
                         optimize_report(system, initial_arrangement(system, topology, config.optimizer, config.seed)),
                         out);
            break;
        case Subcommand::Metrics: out << metrics_report(system, config); break;
        default: break;
        }
        return exit_code::kSuccess;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig config;
    CLI::App app{"Hoop and Linear Diagram engine", "hoopdiag"};
    app.require_subcommand(1);

    std::string format = "auto";
    std::string kind = "hoop";
    std::string optimizer = "auto";

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", config.input, "membership (items) or zones (JSON) file")->required();
        sub->add_option("--input-format", format, "items|zones; default by extension")
            ->check(CLI::IsMember({"auto", "items", "zones"}));
        sub->add_option("--optimizer", optimizer, "none|heuristic|exact|auto")
            ->check(CLI::IsMember({"auto", "none", "heuristic", "exact"}));
        sub->add_option("--seed", config.seed, "heuristic seed");
        sub->add_option("--canvas", config.canvas, "Hoop canvas side in pixels")->check(CLI::PositiveNumber);
    };
    auto add_kind = [&](CLI::App* sub) {
        sub->add_option("--kind", kind, "hoop|linear")->check(CLI::IsMember({"hoop", "linear"}));
    };

    auto* render = app.add_subcommand("render", "write an SVG diagram");
    add_input(render);
    add_kind(render);
    render->add_option("--output", config.output, "SVG path (default stdout)");

    auto* optimize = app.add_subcommand("optimize", "write the zone order and segment counts");
    add_input(optimize);
    add_kind(optimize);
    optimize->add_option("--output", config.output, "report path (default stdout)");

    auto* metrics = app.add_subcommand("metrics", "segment counts and bounding boxes for both kinds (TSV)");
    add_input(metrics);

    auto* generate = app.add_subcommand("generate", "write a random zones file");
    generate->add_option("--sets", config.n_sets, "number of sets")->check(CLI::Range(std::size_t{1}, kMaxSets));
    generate->add_option("--zones", config.n_zones, "number of zones")->check(CLI::PositiveNumber);
    generate->add_option("--seed", config.seed, "random seed");
    generate->add_option("--output", config.output, "zones file path (default stdout)");

    auto* serve = app.add_subcommand("serve", "run the JSON-over-HTTP session service");
    serve->add_option("--port", config.port, "TCP port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", config.host, "bind address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::kSuccess : exit_code::kParse;
    }

    config.input_format = format == "items" ? InputFormat::Items
                          : format == "zones" ? InputFormat::Zones
                                              : InputFormat::Auto;
    config.kind = parse_diagram_kind(kind);
    config.optimizer = parse_optimizer_mode(optimizer);

    if (*render) config.subcommand = Subcommand::Render;
    else if (*optimize) config.subcommand = Subcommand::Optimize;
    else if (*metrics) config.subcommand = Subcommand::Metrics;
    else if (*generate) config.subcommand = Subcommand::Generate;
    else config.subcommand = Subcommand::Serve;
    return run(config, out, err);
}

} // namespace hoop
