#include "hoop/ordering.hpp"

#include "hoop/error.hpp"
#include "rng.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>

namespace hoop {

std::string_view to_string(Topology topology) {
    return topology == Topology::Cyclic ? "cyclic" : "linear";
}

Topology parse_topology(std::string_view text) {
    if (text == "cyclic" || text == "hoop") return Topology::Cyclic;
    if (text == "linear") return Topology::Linear;
    throw Error(ErrorCode::Parse, "unknown topology '" + std::string(text) + "'");
}

Arrangement identity_arrangement(const SetSystem& system, Topology topology) {
    Arrangement out;
    out.zone_order.resize(system.zone_count());
    out.set_order.resize(system.set_count());
    std::iota(out.zone_order.begin(), out.zone_order.end(), std::size_t{0});
    std::iota(out.set_order.begin(), out.set_order.end(), std::size_t{0});
    out.topology = topology;
    return out;
}

bool is_permutation_of_range(const std::vector<std::size_t>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (auto v : order) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

void check_dimensions(const SetSystem& system, const Arrangement& arrangement) {
    if (!is_permutation_of_range(arrangement.zone_order, system.zone_count())) {
        throw Error(ErrorCode::DimensionMismatch, "zone_order is not a permutation of the " +
                                                      std::to_string(system.zone_count()) + " zones");
    }
    if (!is_permutation_of_range(arrangement.set_order, system.set_count())) {
        throw Error(ErrorCode::DimensionMismatch, "set_order is not a permutation of the " +
                                                      std::to_string(system.set_count()) + " sets");
    }
}

SegmentStats segment_counts(const SetSystem& system, const Arrangement& arrangement) {
    check_dimensions(system, arrangement);
    const auto m = arrangement.zone_order.size();
    SegmentStats stats;
    stats.runs_per_set.assign(system.set_count(), 0);
    for (std::size_t s = 0; s < system.set_count(); ++s) {
        bool everywhere = m > 0;
        std::size_t runs = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const bool here = zone_contains(system.zones[arrangement.zone_order[i]], s);
            everywhere = everywhere && here;
            if (!here) continue;
            bool continues = false;
            if (i > 0) continues = zone_contains(system.zones[arrangement.zone_order[i - 1]], s);
            else if (arrangement.topology == Topology::Cyclic) {
                continues = zone_contains(system.zones[arrangement.zone_order[m - 1]], s);
            }
            if (!continues) ++runs;
        }
        if (arrangement.topology == Topology::Cyclic && everywhere) runs = 1;
        stats.runs_per_set[s] = runs;
        stats.total += runs;
    }
    return stats;
}

namespace {

using Cost = std::size_t;
constexpr Cost kNoBound = std::numeric_limits<Cost>::max();

// New segments started when `next` follows `prev`.
inline Cost entering(ZoneMask next, ZoneMask prev) { return static_cast<Cost>(std::popcount(next & ~prev)); }

inline Cost hamming(ZoneMask a, ZoneMask b) { return static_cast<Cost>(std::popcount(a ^ b)); }

// Sum of segment starts along the order; the cyclic variant also charges
// the wrap from the last zone back to the first. Equals the segment total
// except for sets present in every zone of a cyclic order.
Cost order_cost(const std::vector<ZoneMask>& masks, const std::vector<std::size_t>& order, bool cyclic) {
    if (order.empty()) return 0;
    Cost cost = 0;
    ZoneMask prev = cyclic ? masks[order.back()] : 0;
    for (auto z : order) {
        cost += entering(masks[z], prev);
        prev = masks[z];
    }
    return cost;
}

// Depth-first branch and bound over zone orders. Positions [0, k) only
// take zones flagged in `leading`; the rest fill [k, m). Zones are tried
// in ascending index order and only strict improvements are kept, so the
// first optimum found is the lexicographically smallest one.
class OrderSearch {
public:
    OrderSearch(const std::vector<ZoneMask>& masks, bool cyclic, std::vector<bool> leading, bool quotient_symmetry)
        : masks_(masks), cyclic_(cyclic), leading_(std::move(leading)), quotient_(quotient_symmetry),
          m_(masks.size()) {
        k_ = static_cast<std::size_t>(std::count(leading_.begin(), leading_.end(), true));
        min_enter_.assign(m_, 0);
        for (std::size_t r = 0; r < m_; ++r) {
            // A linear order may open with the empty anchor; a cyclic one
            // of a single zone follows itself.
            Cost best = cyclic_ ? (m_ == 1 ? 0 : kNoBound) : static_cast<Cost>(std::popcount(masks_[r]));
            for (std::size_t q = 0; q < m_; ++q) {
                if (q != r) best = std::min(best, entering(masks_[r], masks_[q]));
            }
            min_enter_[r] = best;
        }
    }

    // `upper` is a cost already known to be achievable; searching starts
    // just above it so an order of equal cost is still found.
    std::vector<std::size_t> run(Cost upper) {
        best_cost_ = upper == kNoBound ? kNoBound : upper + 1;
        best_.clear();
        order_.clear();
        used_.assign(m_, false);
        if (quotient_ && m_ > 0) {
            place(0, 0);
        } else {
            descend(0);
        }
        return best_;
    }

    Cost best_cost() const { return best_cost_; }

private:
    void place(std::size_t zone, Cost partial) {
        const ZoneMask prev = order_.empty() ? 0 : masks_[order_.back()];
        const Cost step = order_.empty() && cyclic_ ? 0 : entering(masks_[zone], prev);
        used_[zone] = true;
        order_.push_back(zone);
        descend(partial + step);
        order_.pop_back();
        used_[zone] = false;
    }

    void descend(Cost partial) {
        const auto pos = order_.size();
        if (pos == m_) {
            Cost cost = partial;
            if (cyclic_ && m_ > 0) cost += entering(masks_[order_.front()], masks_[order_.back()]);
            if (quotient_ && m_ >= 3 && order_.back() < order_[1]) return;
            if (cost < best_cost_) {
                best_cost_ = cost;
                best_ = order_;
            }
            return;
        }
        if (lower_bound(partial) >= best_cost_) return;
        const bool want_leading = pos < k_;
        for (std::size_t z = 0; z < m_; ++z) {
            if (used_[z] || leading_[z] != want_leading) continue;
            place(z, partial);
        }
    }

    Cost lower_bound(Cost partial) const {
        Cost per_zone = 0;
        ZoneMask remaining = 0;
        for (std::size_t z = 0; z < m_; ++z) {
            if (used_[z]) continue;
            per_zone += min_enter_[z];
            remaining |= masks_[z];
        }
        if (cyclic_ && !order_.empty()) per_zone += min_enter_[order_.front()];
        const ZoneMask last = order_.empty() ? 0 : masks_[order_.back()];
        // Sets present in every zone cost nothing on a cycle, so this only
        // holds once some zone is placed.
        const Cost fresh = cyclic_ && order_.empty() ? 0 : static_cast<Cost>(std::popcount(remaining & ~last));
        return partial + std::max(per_zone, fresh);
    }

    const std::vector<ZoneMask>& masks_;
    bool cyclic_;
    std::vector<bool> leading_;
    bool quotient_;
    std::size_t m_;
    std::size_t k_ = 0;
    std::vector<Cost> min_enter_;

    Cost best_cost_ = kNoBound;
    std::vector<std::size_t> best_;
    std::vector<std::size_t> order_;
    std::vector<bool> used_;
};

// ---- heuristic -------------------------------------------------------

using Tour = std::vector<std::size_t>;

struct TourProblem {
    std::vector<ZoneMask> nodes; // zones, plus the empty anchor last for linear

    Cost distance(std::size_t a, std::size_t b) const { return hamming(nodes[a], nodes[b]); }

    Cost length(const Tour& tour) const {
        Cost total = 0;
        for (std::size_t i = 0; i < tour.size(); ++i) total += distance(tour[i], tour[(i + 1) % tour.size()]);
        return total;
    }
};

Tour nearest_neighbour(const TourProblem& problem, std::size_t start) {
    const auto n = problem.nodes.size();
    Tour tour{start};
    std::vector<bool> visited(n, false);
    visited[start] = true;
    while (tour.size() < n) {
        std::size_t pick = n;
        Cost pick_cost = kNoBound;
        for (std::size_t c = 0; c < n; ++c) {
            if (visited[c]) continue;
            const auto d = problem.distance(tour.back(), c);
            if (d < pick_cost) {
                pick = c;
                pick_cost = d;
            }
        }
        visited[pick] = true;
        tour.push_back(pick);
    }
    return tour;
}

void two_opt(const TourProblem& problem, Tour& tour) {
    const auto n = tour.size();
    if (n < 4) return;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 2 < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                const auto a = tour[i], b = tour[i + 1], c = tour[j], d = tour[(j + 1) % n];
                const auto before = problem.distance(a, b) + problem.distance(c, d);
                const auto after = problem.distance(a, c) + problem.distance(b, d);
                if (after < before) {
                    std::reverse(tour.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                 tour.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    improved = true;
                }
            }
        }
    }
}

// Rotates the tour to start at `head` and picks the direction whose
// remaining sequence is lexicographically smaller.
std::vector<std::size_t> normalise(const Tour& tour, std::size_t head, bool drop_head) {
    const auto n = tour.size();
    const auto at = static_cast<std::size_t>(std::find(tour.begin(), tour.end(), head) - tour.begin());
    std::vector<std::size_t> forward, backward;
    for (std::size_t i = 0; i < n; ++i) {
        forward.push_back(tour[(at + i) % n]);
        backward.push_back(tour[(at + n - i) % n]);
    }
    if (drop_head) {
        forward.erase(forward.begin());
        backward.erase(backward.begin());
    }
    return std::min(forward, backward);
}

bool fits_budget(std::size_t k, std::size_t rest, std::size_t threshold) {
    auto factorial = [](std::size_t n) {
        double f = 1;
        for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
        return f;
    };
    return factorial(k) * factorial(rest) <= factorial(threshold);
}

void check_set(const Arrangement& arrangement, std::size_t set_index) {
    if (set_index >= arrangement.set_order.size()) {
        throw Error(ErrorCode::InvalidIndex, "set index " + std::to_string(set_index) + " out of range (" +
                                                 std::to_string(arrangement.set_order.size()) + " sets)");
    }
}

} // namespace

Arrangement optimize_exact(const SetSystem& system, Topology topology, std::size_t threshold) {
    const auto m = system.zone_count();
    if (m > threshold) {
        throw Error(ErrorCode::ThresholdExceeded, std::to_string(m) + " zones exceed the exact-search threshold of " +
                                                      std::to_string(threshold) + "; use the heuristic optimizer");
    }
    auto out = identity_arrangement(system, topology);
    if (m <= 1) return out;
    const bool cyclic = topology == Topology::Cyclic;
    OrderSearch search(system.zones, cyclic, std::vector<bool>(m, false), cyclic);
    out.zone_order = search.run(order_cost(system.zones, out.zone_order, cyclic));
    return out;
}

Arrangement optimize_heuristic(const SetSystem& system, Topology topology, std::uint64_t seed) {
    auto out = identity_arrangement(system, topology);
    const auto m = system.zone_count();
    if (m <= 2) return out;

    const bool linear = topology == Topology::Linear;
    TourProblem problem{system.zones};
    if (linear) problem.nodes.push_back(0);
    const auto n = problem.nodes.size();
    const std::size_t head = linear ? m : 0;

    std::vector<Tour> starts;
    starts.push_back(nearest_neighbour(problem, head));
    Tour baseline(n);
    std::iota(baseline.begin(), baseline.end(), std::size_t{0});
    starts.push_back(baseline);
    for (std::size_t s = 0; s < n; ++s) {
        if (s != head) starts.push_back(nearest_neighbour(problem, s));
    }
    std::mt19937_64 rng(seed);
    for (int r = 0; r < 8; ++r) {
        Tour t = baseline;
        detail::shuffle(t, rng);
        starts.push_back(std::move(t));
    }

    Cost best_len = kNoBound;
    std::vector<std::size_t> best_order;
    for (auto& tour : starts) {
        two_opt(problem, tour);
        const auto len = problem.length(tour);
        auto order = normalise(tour, head, linear);
        if (len < best_len || (len == best_len && order < best_order)) {
            best_len = len;
            best_order = std::move(order);
        }
    }
    out.zone_order = std::move(best_order);
    return out;
}

Arrangement reorder_for_set(const SetSystem& system, const Arrangement& arrangement, std::size_t set_index,
                            std::size_t threshold) {
    check_dimensions(system, arrangement);
    check_set(arrangement, set_index);
    const auto m = system.zone_count();
    const bool cyclic = arrangement.topology == Topology::Cyclic;

    std::vector<bool> leading(m);
    std::vector<std::size_t> first, rest;
    for (auto z : arrangement.zone_order) {
        leading[z] = zone_contains(system.zones[z], set_index);
        (leading[z] ? first : rest).push_back(z);
    }
    std::vector<std::size_t> start = first;
    start.insert(start.end(), rest.begin(), rest.end());
    const auto start_cost = order_cost(system.zones, start, cyclic);

    Arrangement out = arrangement;
    if (fits_budget(first.size(), rest.size(), threshold)) {
        OrderSearch search(system.zones, cyclic, leading, false);
        auto best = search.run(start_cost);
        out.zone_order = search.best_cost() == start_cost ? start : std::move(best);
        return out;
    }

    // Too large to enumerate: first-improvement descent with reversals
    // and swaps that stay inside a block.
    auto order = start;
    auto cost = start_cost;
    const std::size_t k = first.size();
    auto try_moves = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = i + 1; j < hi; ++j) {
                for (int kind = 0; kind < 2; ++kind) {
                    auto candidate = order;
                    if (kind == 0) {
                        std::reverse(candidate.begin() + static_cast<std::ptrdiff_t>(i),
                                     candidate.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    } else {
                        std::swap(candidate[i], candidate[j]);
                    }
                    const auto c = order_cost(system.zones, candidate, cyclic);
                    if (c < cost) {
                        order = std::move(candidate);
                        cost = c;
                        return true;
                    }
                }
            }
        }
        return false;
    };
    while (try_moves(0, k) || try_moves(k, m)) {
    }
    out.zone_order = std::move(order);
    return out;
}

Arrangement bring_set_to_front(const Arrangement& arrangement, std::size_t set_index) {
    check_set(arrangement, set_index);
    Arrangement out = arrangement;
    const auto it = std::find(out.set_order.begin(), out.set_order.end(), set_index);
    std::rotate(out.set_order.begin(), it, it + 1);
    return out;
}

Arrangement rotate(const Arrangement& arrangement, Direction direction) {
    Arrangement out = arrangement;
    if (out.zone_order.size() < 2) return out;
    if (direction == Direction::Right) {
        std::rotate(out.zone_order.rbegin(), out.zone_order.rbegin() + 1, out.zone_order.rend());
    } else {
        std::rotate(out.zone_order.begin(), out.zone_order.begin() + 1, out.zone_order.end());
    }
    return out;
}

} // namespace hoop
