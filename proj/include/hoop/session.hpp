#pragma once

#include "hoop/geometry.hpp"
#include "hoop/ordering.hpp"
#include "hoop/render.hpp"
#include "hoop/set_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hoop {

enum class DiagramKind { Hoop, Linear };
enum class OptimizerMode { Auto, None, Heuristic, Exact };

std::string_view to_string(DiagramKind kind);
DiagramKind parse_diagram_kind(std::string_view text);
Topology topology_of(DiagramKind kind);

std::string_view to_string(OptimizerMode mode);
OptimizerMode parse_optimizer_mode(std::string_view text);

enum class EventKind {
    HoverSet,
    HoverZone,
    HoverNone,
    ClickReorderSet,
    ClickBringToFront,
    RotateLeft,
    RotateRight,
    Reset,
};

std::string_view to_string(EventKind kind);
EventKind parse_event_kind(std::string_view text);

struct InteractionEvent {
    std::int64_t timestamp_ms = 0;
    EventKind kind = EventKind::HoverNone;
    std::optional<std::size_t> target;

    bool operator==(const InteractionEvent&) const = default;
};

namespace command {
struct Probe {
    Point point;
};
struct BringToFront {
    std::size_t set = 0;
};
struct ReorderSet {
    std::size_t set = 0;
};
struct Rotate {
    Direction direction = Direction::Left;
};
struct Reset {};
} // namespace command

using InteractionCommand =
    std::variant<command::Probe, command::BringToFront, command::ReorderSet, command::Rotate, command::Reset>;

struct Move {
    std::size_t element = 0; // zone or set index
    std::size_t from = 0;    // position before
    std::size_t to = 0;      // position after

    bool operator==(const Move&) const = default;
};

inline constexpr int kAnimationDurationMs = 1000;

struct Transition {
    std::string command; // probe | bring_to_front | reorder_set | rotate | reset
    std::vector<Move> zone_moves;
    std::vector<Move> set_moves;
    int animation_duration_ms = 0;

    bool operator==(const Transition&) const = default;
};

struct SessionOptions {
    OptimizerMode optimizer = OptimizerMode::Auto;
    std::uint64_t seed = 1; // same default as the CLI
    std::size_t exact_threshold = kDefaultExactThreshold;
    StyleConfig style;
};

struct SessionState {
    SetSystem system; // canonical
    Arrangement base_arrangement;
    Arrangement current_arrangement;
    DiagramKind diagram_kind = DiagramKind::Hoop;
    HighlightState highlight;
    std::vector<InteractionEvent> event_log;
    StyleConfig style;
    std::size_t exact_threshold = kDefaultExactThreshold;
};

struct ApplyResult {
    SessionState state;
    Transition transition;
};

/// Arrangement the session (and the CLI) starts from: Auto runs the exact
/// search when the zone count allows it and the heuristic otherwise.
Arrangement initial_arrangement(const SetSystem& canonical, Topology topology, OptimizerMode mode,
                                std::uint64_t seed, std::size_t exact_threshold = kDefaultExactThreshold);

/// Canonicalises the system and computes the base arrangement.
SessionState create_session(const SetSystem& system, DiagramKind kind, const SessionOptions& options = {});

/// Pure: the input state is never modified. Throws InvalidIndex for set
/// indices out of range.
ApplyResult apply(const SessionState& state, const InteractionCommand& command, std::int64_t timestamp_ms);

HitTarget probe(const SessionState& state, Point point);
SegmentStats current_stats(const SessionState& state);
std::string render_current(const SessionState& state);

/// Tab-separated, header `timestamp_ms\tkind\ttarget`, one record per
/// event in chronological order; an absent target is an empty field.
std::string export_log(const SessionState& state);
std::vector<InteractionEvent> parse_log(std::string_view text);

} // namespace hoop
