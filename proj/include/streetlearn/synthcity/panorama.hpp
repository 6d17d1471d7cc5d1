#pragma once

#include <array>

#include "streetlearn/image.hpp"
#include "streetlearn/panograph/street_graph.hpp"
#include "streetlearn/synthcity/city.hpp"

namespace streetlearn::synthcity {

// Equirectangular convention shared with the projector: column 0 starts at
// bearing -180, the image center column looks North, rows run linearly from
// elevation +90 (top) to -90 (bottom).
double column_to_bearing(double column, int width);
double bearing_to_column(double bearing_deg, int width);

// Fixed colors of the procedural scene.
inline constexpr Rgb kRoadColor{58, 58, 64};
inline constexpr Rgb kNorthMarkerColor{230, 20, 20};
inline constexpr double kCorridorHalfWidthDeg = 9.0;
inline constexpr double kPanelWidthDeg = 15.0;
inline constexpr double kNorthMarkerHalfWidthDeg = 1.0;
inline constexpr double kNorthMarkerHeightDeg = 3.0;

// Three facade colors per block, derived from a hash of (seed, block).
std::array<Rgb, 3> block_palette(const CityParams& params, BlockId block);

// Sky gradient above the horizon, ground below; road corridors along every
// incident edge; block-colored facades between them; a red marker due North
// on the horizon. Throws GraphError for an unknown node.
Image render_panorama(const StreetGraph& graph, NodeIndex node, const CityParams& params);
Image render_panorama(const StreetGraph& graph, std::string_view node_id, const CityParams& params);

}  // namespace streetlearn::synthcity
