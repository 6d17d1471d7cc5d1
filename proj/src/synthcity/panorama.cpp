#include "streetlearn/synthcity/panorama.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "streetlearn/random.hpp"

namespace streetlearn::synthcity {

double column_to_bearing(double column, int width) { return column / width * 360.0 - 180.0; }

double bearing_to_column(double bearing_deg, int width) {
  return (signed_angle_deg(bearing_deg) + 180.0) / 360.0 * width;
}

std::array<Rgb, 3> block_palette(const CityParams& params, BlockId block) {
  std::uint64_t h = hash_combine(hash_combine(params.seed ^ 0x5a17c0de, static_cast<std::uint64_t>(block.x)),
                                 static_cast<std::uint64_t>(block.y));
  std::array<Rgb, 3> palette;
  for (auto& c : palette) {
    h = splitmix64(h);
    // Saturated mid-range colors keep facades apart from sky, ground and road.
    c = {static_cast<std::uint8_t>(90 + (h & 0x7f)), static_cast<std::uint8_t>(70 + ((h >> 8) & 0x7f)),
         static_cast<std::uint8_t>(30 + ((h >> 16) & 0x7f))};
  }
  return palette;
}

namespace {

Rgb lerp(Rgb a, Rgb b, double t) {
  auto mix = [t](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (static_cast<double>(y) - x) * t));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

constexpr Rgb kHorizonSky{205, 222, 240};
constexpr Rgb kZenithSky{70, 120, 205};
constexpr Rgb kNearGround{150, 138, 120};
constexpr Rgb kNadirGround{96, 88, 76};

void put(std::uint8_t* px, Rgb c) {
  px[0] = c.r;
  px[1] = c.g;
  px[2] = c.b;
}

}  // namespace

Image render_panorama(const StreetGraph& graph, NodeIndex node, const CityParams& params) {
  if (node < 0 || static_cast<std::size_t>(node) >= graph.size()) throw GraphError("render_panorama: unknown node");
  const int height = params.pano_height;
  const int width = params.pano_width();
  Image img(width, height);

  const auto edge_bearings = graph.neighbor_bearings(node);
  const BlockId block = home_block(params, graph.position(node));
  const auto palette = block_palette(params, block);
  const std::uint64_t block_hash =
      hash_combine(hash_combine(params.seed, static_cast<std::uint64_t>(block.x)), static_cast<std::uint64_t>(block.y));

  // Per-column scene layout.
  std::vector<char> corridor(static_cast<std::size_t>(width), 0);
  std::vector<char> north_marker(static_cast<std::size_t>(width), 0);
  std::vector<double> facade_top(static_cast<std::size_t>(width), 0.0);
  std::vector<Rgb> facade(static_cast<std::size_t>(width));
  for (int c = 0; c < width; ++c) {
    const double bearing = column_to_bearing(c + 0.5, width);
    for (double eb : edge_bearings) {
      if (std::abs(signed_angle_deg(bearing - eb)) <= kCorridorHalfWidthDeg) corridor[static_cast<std::size_t>(c)] = 1;
    }
    north_marker[static_cast<std::size_t>(c)] = std::abs(bearing) <= kNorthMarkerHalfWidthDeg;
    const auto panel = static_cast<std::uint64_t>(std::floor(normalize_deg(bearing) / kPanelWidthDeg));
    facade[static_cast<std::size_t>(c)] = palette[panel % palette.size()];
    facade_top[static_cast<std::size_t>(c)] = 14.0 + static_cast<double>(hash_combine(block_hash, panel) % 24);
  }

  for (int r = 0; r < height; ++r) {
    const double elevation = 90.0 - (r + 0.5) / height * 180.0;
    std::uint8_t* row = img.at(0, r);
    if (elevation >= 0.0) {
      const Rgb sky = lerp(kHorizonSky, kZenithSky, elevation / 90.0);
      const bool marker_row = elevation < kNorthMarkerHeightDeg;
      for (int c = 0; c < width; ++c) {
        const auto k = static_cast<std::size_t>(c);
        Rgb color = sky;
        if (marker_row && north_marker[k]) {
          color = kNorthMarkerColor;
        } else if (!corridor[k] && elevation < facade_top[k]) {
          color = facade[k];
        }
        put(row + 3 * k, color);
      }
    } else {
      const Rgb ground = lerp(kNearGround, kNadirGround, -elevation / 90.0);
      for (int c = 0; c < width; ++c) {
        const auto k = static_cast<std::size_t>(c);
        put(row + 3 * k, corridor[k] ? kRoadColor : ground);
      }
    }
  }
  return img;
}

Image render_panorama(const StreetGraph& graph, std::string_view node_id, const CityParams& params) {
  return render_panorama(graph, graph.index_of(node_id), params);
}

}  // namespace streetlearn::synthcity
