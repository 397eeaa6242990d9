#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hoop {

/// Bit i set means set index i belongs to the zone.
using ZoneMask = std::uint32_t;

inline constexpr std::size_t kMaxSets = 16;

struct MembershipItem {
    std::string id;
    std::vector<std::string> interests;
};

struct MembershipTable {
    std::vector<MembershipItem> items;
};

/// Named sets plus the exact intersections (zones) present in the data.
struct SetSystem {
    std::vector<std::string> set_names;
    std::vector<ZoneMask> zones;
    std::vector<std::uint32_t> zone_weights;

    std::size_t set_count() const { return set_names.size(); }
    std::size_t zone_count() const { return zones.size(); }

    bool operator==(const SetSystem&) const = default;
};

struct Derivation {
    SetSystem system;
    std::size_t skipped_items = 0; // items with an empty interest list
};

/// Zones are the distinct exact interest combinations, in order of first
/// appearance; set names are sorted.
Derivation zones_from_memberships(const MembershipTable& table);

/// Empty result means the system satisfies every invariant.
std::vector<std::string> validate(const SetSystem& system);

/// Throws Validation when validate() reports anything.
void require_valid(const SetSystem& system);

/// Alphabetical set names, zones ordered by descending cardinality then
/// lexicographically by ascending member indices.
SetSystem canonicalize(const SetSystem& system);

std::vector<std::size_t> zone_members(ZoneMask zone);
int zone_size(ZoneMask zone);
bool zone_contains(ZoneMask zone, std::size_t set_index);

/// "Dogs+Poker" style label, members in set-index order.
std::string zone_label(const SetSystem& system, ZoneMask zone);

// Input format A: one `item_id: label, label, ...` line per item, '#' comments.
MembershipTable parse_items(std::string_view text);

// Input format B: { "sets": [...], "zones": [{ "members": [...], "weight": n }] }.
SetSystem parse_zones_json(std::string_view text);
std::string to_zones_json(const SetSystem& system);

} // namespace hoop
