#pragma once

#include "hoop/geometry.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hoop {

enum class Emphasis { DimOthers, Outline };

std::string_view to_string(Emphasis emphasis);
Emphasis parse_emphasis(std::string_view text);

struct HighlightState {
    HitTarget target;
    Emphasis emphasis = Emphasis::DimOthers; // ignored while target is none

    bool operator==(const HighlightState&) const = default;
};

inline constexpr double kDimOpacity = 0.2;

/// Throws PaletteExhausted when the palette has no entry for the position.
const std::string& color_for_set(std::size_t alphabetical_position, const std::vector<std::string>& palette);

/// Element order: guidelines, spokes (or dividers), coloured runs by set,
/// legend. Coloured runs carry class="run".
std::string render_svg(const HoopGeometry& geometry, const HighlightState& highlight = {});
std::string render_svg(const LinearGeometry& geometry, const HighlightState& highlight = {});

} // namespace hoop
