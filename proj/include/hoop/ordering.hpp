#pragma once

#include "hoop/set_model.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace hoop {

/// Cyclic is the Hoop Diagram (zones wrap at 12 o'clock); linear is the
/// Linear Diagram.
enum class Topology { Cyclic, Linear };

enum class Direction { Left, Right };

std::string_view to_string(Topology topology);
Topology parse_topology(std::string_view text);

struct Arrangement {
    std::vector<std::size_t> zone_order; // position -> zone index
    std::vector<std::size_t> set_order;  // position -> set index; 0 is outermost / top
    Topology topology = Topology::Cyclic;

    bool operator==(const Arrangement&) const = default;
};

struct SegmentStats {
    std::vector<std::size_t> runs_per_set;
    std::size_t total = 0;

    bool operator==(const SegmentStats&) const = default;
};

inline constexpr std::size_t kDefaultExactThreshold = 10;

/// Zones and sets in index order.
Arrangement identity_arrangement(const SetSystem& system, Topology topology);

bool is_permutation_of_range(const std::vector<std::size_t>& order, std::size_t n);

/// Throws DimensionMismatch when the arrangement does not fit the system.
void check_dimensions(const SetSystem& system, const Arrangement& arrangement);

SegmentStats segment_counts(const SetSystem& system, const Arrangement& arrangement);

/// Minimum total over every zone order. Cyclic search fixes zone 0 first
/// and skips mirror images. Ties go to the lexicographically smallest
/// zone_order. Throws ThresholdExceeded when the system has more than
/// `threshold` zones.
Arrangement optimize_exact(const SetSystem& system, Topology topology,
                           std::size_t threshold = kDefaultExactThreshold);

/// Nearest-neighbour tours on Hamming distance between zones followed by
/// 2-opt descent. Linear topology closes the tour through an empty anchor
/// zone. Never worse than the identity order.
Arrangement optimize_heuristic(const SetSystem& system, Topology topology, std::uint64_t seed);

/// Zones containing the set move to positions 0..k-1 and the rest follow;
/// the order inside both blocks minimises the remaining segments.
Arrangement reorder_for_set(const SetSystem& system, const Arrangement& arrangement, std::size_t set_index,
                            std::size_t threshold = kDefaultExactThreshold);

/// The set moves to position 0 of set_order; the others keep their
/// relative order.
Arrangement bring_set_to_front(const Arrangement& arrangement, std::size_t set_index);

/// Right moves every zone one position later, the last becoming first.
Arrangement rotate(const Arrangement& arrangement, Direction direction);

} // namespace hoop
