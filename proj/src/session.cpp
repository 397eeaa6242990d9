#include "hoop/session.hpp"

#include "hoop/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hoop {

std::string_view to_string(DiagramKind kind) { return kind == DiagramKind::Hoop ? "hoop" : "linear"; }

DiagramKind parse_diagram_kind(std::string_view text) {
    if (text == "hoop") return DiagramKind::Hoop;
    if (text == "linear") return DiagramKind::Linear;
    throw Error(ErrorCode::Parse, "unknown diagram kind '" + std::string(text) + "'");
}

Topology topology_of(DiagramKind kind) { return kind == DiagramKind::Hoop ? Topology::Cyclic : Topology::Linear; }

std::string_view to_string(OptimizerMode mode) {
    switch (mode) {
    case OptimizerMode::Auto: return "auto";
    case OptimizerMode::None: return "none";
    case OptimizerMode::Heuristic: return "heuristic";
    case OptimizerMode::Exact: return "exact";
    }
    return "auto";
}

OptimizerMode parse_optimizer_mode(std::string_view text) {
    if (text == "auto") return OptimizerMode::Auto;
    if (text == "none") return OptimizerMode::None;
    if (text == "heuristic") return OptimizerMode::Heuristic;
    if (text == "exact") return OptimizerMode::Exact;
    throw Error(ErrorCode::Parse, "unknown optimizer '" + std::string(text) + "'");
}

namespace {

struct EventName {
    EventKind kind;
    std::string_view name;
};

constexpr EventName kEventNames[] = {
    {EventKind::HoverSet, "hover-set"},
    {EventKind::HoverZone, "hover-zone"},
    {EventKind::HoverNone, "hover-none"},
    {EventKind::ClickReorderSet, "click-reorder-set"},
    {EventKind::ClickBringToFront, "click-bring-to-front"},
    {EventKind::RotateLeft, "rotate-left"},
    {EventKind::RotateRight, "rotate-right"},
    {EventKind::Reset, "reset"},
};

std::vector<Move> moves_between(const std::vector<std::size_t>& before, const std::vector<std::size_t>& after) {
    std::vector<std::size_t> old_position(before.size());
    for (std::size_t p = 0; p < before.size(); ++p) old_position[before[p]] = p;
    std::vector<Move> moves;
    for (std::size_t p = 0; p < after.size(); ++p) {
        if (old_position[after[p]] != p) moves.push_back({after[p], old_position[after[p]], p});
    }
    std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) { return a.element < b.element; });
    return moves;
}

Transition rearrangement(std::string name, const Arrangement& before, const Arrangement& after) {
    return {std::move(name), moves_between(before.zone_order, after.zone_order),
            moves_between(before.set_order, after.set_order), kAnimationDurationMs};
}

} // namespace

std::string_view to_string(EventKind kind) {
    for (const auto& e : kEventNames) {
        if (e.kind == kind) return e.name;
    }
    return "hover-none";
}

EventKind parse_event_kind(std::string_view text) {
    for (const auto& e : kEventNames) {
        if (e.name == text) return e.kind;
    }
    throw Error(ErrorCode::Parse, "unknown event kind '" + std::string(text) + "'");
}

Arrangement initial_arrangement(const SetSystem& canonical, Topology topology, OptimizerMode mode,
                                std::uint64_t seed, std::size_t exact_threshold) {
    switch (mode) {
    case OptimizerMode::None: return identity_arrangement(canonical, topology);
    case OptimizerMode::Heuristic: return optimize_heuristic(canonical, topology, seed);
    case OptimizerMode::Exact: return optimize_exact(canonical, topology, exact_threshold);
    case OptimizerMode::Auto:
        return canonical.zone_count() <= exact_threshold ? optimize_exact(canonical, topology, exact_threshold)
                                                         : optimize_heuristic(canonical, topology, seed);
    }
    return identity_arrangement(canonical, topology);
}

SessionState create_session(const SetSystem& system, DiagramKind kind, const SessionOptions& options) {
    SessionState state;
    state.system = canonicalize(system);
    state.diagram_kind = kind;
    state.style = options.style;
    state.exact_threshold = options.exact_threshold;
    state.base_arrangement = initial_arrangement(state.system, topology_of(kind), options.optimizer, options.seed,
                                                 options.exact_threshold);
    state.current_arrangement = state.base_arrangement;
    return state;
}

HitTarget probe(const SessionState& state, Point point) {
    if (state.diagram_kind == DiagramKind::Hoop) {
        return hit_test_hoop(layout_hoop(state.system, state.current_arrangement, state.style), point);
    }
    return hit_test_linear(layout_linear(state.system, state.current_arrangement, state.style), point);
}

SegmentStats current_stats(const SessionState& state) {
    return segment_counts(state.system, state.current_arrangement);
}

std::string render_current(const SessionState& state) {
    if (state.diagram_kind == DiagramKind::Hoop) {
        return render_svg(layout_hoop(state.system, state.current_arrangement, state.style), state.highlight);
    }
    return render_svg(layout_linear(state.system, state.current_arrangement, state.style), state.highlight);
}

ApplyResult apply(const SessionState& state, const InteractionCommand& cmd, std::int64_t timestamp_ms) {
    ApplyResult result{state, {}};
    auto& next = result.state;
    const auto& before = state.current_arrangement;

    auto log = [&](EventKind kind, std::optional<std::size_t> target) {
        next.event_log.push_back({timestamp_ms, kind, target});
    };

    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, command::Probe>) {
                result.transition.command = "probe";
                const auto target = probe(state, c.point);
                if (target == state.highlight.target) return;
                next.highlight.target = target;
                switch (target.kind) {
                case HitTarget::Kind::Set: log(EventKind::HoverSet, target.index); break;
                case HitTarget::Kind::Zone: log(EventKind::HoverZone, target.index); break;
                case HitTarget::Kind::None: log(EventKind::HoverNone, std::nullopt); break;
                }
            } else if constexpr (std::is_same_v<T, command::BringToFront>) {
                next.current_arrangement = bring_set_to_front(before, c.set);
                result.transition = rearrangement("bring_to_front", before, next.current_arrangement);
                log(EventKind::ClickBringToFront, c.set);
            } else if constexpr (std::is_same_v<T, command::ReorderSet>) {
                next.current_arrangement = reorder_for_set(state.system, before, c.set, state.exact_threshold);
                result.transition = rearrangement("reorder_set", before, next.current_arrangement);
                log(EventKind::ClickReorderSet, c.set);
            } else if constexpr (std::is_same_v<T, command::Rotate>) {
                next.current_arrangement = rotate(before, c.direction);
                result.transition = rearrangement("rotate", before, next.current_arrangement);
                log(c.direction == Direction::Left ? EventKind::RotateLeft : EventKind::RotateRight, std::nullopt);
            } else {
                next.current_arrangement = state.base_arrangement;
                next.highlight = {};
                result.transition = rearrangement("reset", before, next.current_arrangement);
                log(EventKind::Reset, std::nullopt);
            }
        },
        cmd);
    return result;
}

std::string export_log(const SessionState& state) {
    auto events = state.event_log;
    std::stable_sort(events.begin(), events.end(),
                     [](const InteractionEvent& a, const InteractionEvent& b) { return a.timestamp_ms < b.timestamp_ms; });
    std::ostringstream os;
    os << "timestamp_ms\tkind\ttarget\n";
    for (const auto& e : events) {
        os << e.timestamp_ms << '\t' << to_string(e.kind) << '\t';
        if (e.target) os << *e.target;
        os << '\n';
    }
    return os.str();
}

std::vector<InteractionEvent> parse_log(std::string_view text) {
    std::vector<InteractionEvent> events;
    bool header = true;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (header) {
            if (line != "timestamp_ms\tkind\ttarget") throw Error(ErrorCode::Parse, "log header missing");
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string_view::npos ? tab1 : line.find('\t', tab1 + 1);
        if (tab2 == std::string_view::npos) {
            throw Error(ErrorCode::Parse, "log line " + std::to_string(line_no) + ": expected three fields");
        }
        InteractionEvent e;
        const auto ts = line.substr(0, tab1);
        if (std::from_chars(ts.data(), ts.data() + ts.size(), e.timestamp_ms).ec != std::errc{}) {
            throw Error(ErrorCode::Parse, "log line " + std::to_string(line_no) + ": bad timestamp");
        }
        e.kind = parse_event_kind(line.substr(tab1 + 1, tab2 - tab1 - 1));
        const auto target = line.substr(tab2 + 1);
        if (!target.empty()) {
            std::size_t value = 0;
            if (std::from_chars(target.data(), target.data() + target.size(), value).ec != std::errc{}) {
                throw Error(ErrorCode::Parse, "log line " + std::to_string(line_no) + ": bad target");
            }
            e.target = value;
        }
        events.push_back(e);
    }
    return events;
}

} // namespace hoop
