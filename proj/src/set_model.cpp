#include "hoop/set_model.hpp"

#include "hoop/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace hoop {

std::vector<std::size_t> zone_members(ZoneMask zone) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; zone != 0; ++i, zone >>= 1) {
        if (zone & 1u) out.push_back(i);
    }
    return out;
}

int zone_size(ZoneMask zone) { return std::popcount(zone); }

bool zone_contains(ZoneMask zone, std::size_t set_index) {
    return set_index < 32 && ((zone >> set_index) & 1u) != 0;
}

std::string zone_label(const SetSystem& system, ZoneMask zone) {
    std::string out;
    for (auto idx : zone_members(zone)) {
        if (!out.empty()) out += '+';
        out += idx < system.set_names.size() ? system.set_names[idx] : "#" + std::to_string(idx);
    }
    return out;
}

Derivation zones_from_memberships(const MembershipTable& table) {
    std::unordered_set<std::string> seen_ids;
    std::set<std::string> labels;
    for (const auto& item : table.items) {
        if (!seen_ids.insert(item.id).second) {
            throw Error(ErrorCode::DuplicateItem, "duplicate item id '" + item.id + "'");
        }
        labels.insert(item.interests.begin(), item.interests.end());
    }
    if (labels.empty()) {
        throw Error(ErrorCode::EmptyTable, "no item has any interest");
    }
    if (labels.size() > kMaxSets) {
        throw Error(ErrorCode::Validation, "at most " + std::to_string(kMaxSets) + " sets are supported, got " +
                                               std::to_string(labels.size()));
    }

    Derivation out;
    out.system.set_names.assign(labels.begin(), labels.end());
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < out.system.set_names.size(); ++i) index_of[out.system.set_names[i]] = i;

    std::unordered_map<ZoneMask, std::size_t> zone_slot;
    for (const auto& item : table.items) {
        if (item.interests.empty()) {
            ++out.skipped_items;
            continue;
        }
        ZoneMask mask = 0;
        for (const auto& label : item.interests) {
            const ZoneMask bit = ZoneMask{1} << index_of.at(label);
            if (mask & bit) {
                throw Error(ErrorCode::Parse, "item '" + item.id + "' lists interest '" + label + "' twice");
            }
            mask |= bit;
        }
        auto [it, inserted] = zone_slot.try_emplace(mask, out.system.zones.size());
        if (inserted) {
            out.system.zones.push_back(mask);
            out.system.zone_weights.push_back(1);
        } else {
            ++out.system.zone_weights[it->second];
        }
    }
    return out;
}

std::vector<std::string> validate(const SetSystem& system) {
    std::vector<std::string> report;
    const auto n = system.set_count();
    if (n == 0) report.push_back("system has no sets");
    if (n > kMaxSets) report.push_back("more than " + std::to_string(kMaxSets) + " sets");

    std::set<std::string_view> names;
    for (const auto& name : system.set_names) {
        if (name.empty()) report.push_back("empty set name");
        else if (!names.insert(name).second) report.push_back("duplicate set name '" + name + "'");
    }

    if (system.zones.empty()) report.push_back("system has no zones");
    const ZoneMask in_range = n >= 32 ? ~ZoneMask{0} : ((ZoneMask{1} << n) - 1);
    std::set<ZoneMask> distinct;
    ZoneMask covered = 0;
    for (std::size_t z = 0; z < system.zones.size(); ++z) {
        const auto zone = system.zones[z];
        if (zone == 0) report.push_back("zone " + std::to_string(z) + " is empty");
        if ((zone & ~in_range) != 0) report.push_back("zone " + std::to_string(z) + " references an unknown set index");
        if (zone != 0 && !distinct.insert(zone).second) {
            report.push_back("duplicate zone {" + zone_label(system, zone) + "}");
        }
        covered |= zone;
    }
    for (std::size_t s = 0; s < n && s < 32; ++s) {
        if (!zone_contains(covered, s)) report.push_back("set '" + system.set_names[s] + "' appears in no zone");
    }

    if (system.zone_weights.size() != system.zones.size()) {
        report.push_back("zone_weights has " + std::to_string(system.zone_weights.size()) + " entries for " +
                         std::to_string(system.zones.size()) + " zones");
    }
    for (std::size_t z = 0; z < system.zone_weights.size(); ++z) {
        if (system.zone_weights[z] < 1) report.push_back("zone " + std::to_string(z) + " has weight 0");
    }
    return report;
}

void require_valid(const SetSystem& system) {
    const auto report = validate(system);
    if (report.empty()) return;
    std::string message = "invalid set system:";
    for (const auto& line : report) message += " " + line + ";";
    message.pop_back();
    throw Error(ErrorCode::Validation, message);
}

SetSystem canonicalize(const SetSystem& system) {
    require_valid(system);
    const auto n = system.set_count();

    std::vector<std::size_t> by_name(n);
    for (std::size_t i = 0; i < n; ++i) by_name[i] = i;
    std::sort(by_name.begin(), by_name.end(),
              [&](std::size_t a, std::size_t b) { return system.set_names[a] < system.set_names[b]; });
    std::vector<std::size_t> new_index(n);
    for (std::size_t i = 0; i < n; ++i) new_index[by_name[i]] = i;

    struct Entry {
        ZoneMask mask;
        std::uint32_t weight;
        std::vector<std::size_t> members;
    };
    std::vector<Entry> entries;
    for (std::size_t z = 0; z < system.zones.size(); ++z) {
        ZoneMask mask = 0;
        for (auto old : zone_members(system.zones[z])) mask |= ZoneMask{1} << new_index[old];
        entries.push_back({mask, system.zone_weights[z], zone_members(mask)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        return a.members < b.members;
    });

    SetSystem out;
    for (auto old : by_name) out.set_names.push_back(system.set_names[old]);
    for (const auto& e : entries) {
        out.zones.push_back(e.mask);
        out.zone_weights.push_back(e.weight);
    }
    return out;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

} // namespace

MembershipTable parse_items(std::string_view text) {
    MembershipTable table;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'item_id: label, ...'");
        }
        MembershipItem item;
        item.id = std::string(trim(line.substr(0, colon)));
        if (item.id.empty()) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": empty item id");

        auto rest = line.substr(colon + 1);
        std::set<std::string, std::less<>> seen;
        while (!trim(rest).empty()) {
            const auto comma = rest.find(',');
            const auto label = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            if (label.empty()) throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": empty label");
            if (!seen.emplace(label).second) {
                throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": label '" + std::string(label) +
                                                  "' repeated");
            }
            item.interests.emplace_back(label);
        }
        table.items.push_back(std::move(item));
    }
    return table;
}

SetSystem parse_zones_json(std::string_view text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("zones document: ") + e.what());
    }

    SetSystem system;
    try {
        for (const auto& name : doc.at("sets")) system.set_names.push_back(name.get<std::string>());
        std::map<std::string, std::size_t> index_of;
        for (std::size_t i = 0; i < system.set_names.size(); ++i) index_of.emplace(system.set_names[i], i);
        for (const auto& zone : doc.at("zones")) {
            ZoneMask mask = 0;
            for (const auto& member : zone.at("members")) {
                const auto name = member.get<std::string>();
                const auto it = index_of.find(name);
                if (it == index_of.end()) throw Error(ErrorCode::Parse, "zone member '" + name + "' is not a set");
                if (it->second >= 32) throw Error(ErrorCode::Parse, "too many sets");
                mask |= ZoneMask{1} << it->second;
            }
            const auto weight = zone.value("weight", std::int64_t{1});
            if (weight < 0 || weight > std::int64_t{UINT32_MAX}) throw Error(ErrorCode::Parse, "zone weight out of range");
            system.zones.push_back(mask);
            system.zone_weights.push_back(static_cast<std::uint32_t>(weight));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("zones document: ") + e.what());
    }
    return system;
}

std::string to_zones_json(const SetSystem& system) {
    nlohmann::ordered_json doc;
    doc["sets"] = system.set_names;
    auto zones = nlohmann::ordered_json::array();
    for (std::size_t z = 0; z < system.zones.size(); ++z) {
        nlohmann::ordered_json zone;
        auto members = nlohmann::ordered_json::array();
        for (auto idx : zone_members(system.zones[z])) members.push_back(system.set_names.at(idx));
        zone["members"] = std::move(members);
        zone["weight"] = z < system.zone_weights.size() ? system.zone_weights[z] : 1u;
        zones.push_back(std::move(zone));
    }
    doc["zones"] = std::move(zones);
    return doc.dump(2) + "\n";
}

} // namespace hoop
