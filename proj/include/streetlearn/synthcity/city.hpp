#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn::synthcity {

// Parameters of a procedurally generated city: a jittered grid of streets
// with panoramas every ~node_spacing meters.
struct CityParams {
  std::uint64_t seed = 1;
  int blocks_x = 4;
  int blocks_y = 4;
  double block_len = 80.0;     // meters between intersections
  double node_spacing = 10.0;  // meters between consecutive panoramas
  double irregularity = 0.0;   // intersection jitter as a fraction in [0, 1]
  LatLng origin{40.70, -74.01};
  int pano_height = 512;       // panorama width is twice this
  double altitude_base = 0.0;        // meters
  double altitude_gradient = 0.0;    // meters of altitude per meter northwards
  std::string city = "synthcity";

  int pano_width() const { return 2 * pano_height; }

  // Throws std::invalid_argument for unusable parameters.
  void validate() const;
};

nlohmann::json to_json(const CityParams& params);
CityParams city_params_from_json(const nlohmann::json& j);

// Deterministic in params. Node ids are derived from the seed and the grid
// position: "s<seed>-x<i>y<j>" for intersections, "s<seed>-h<i>.<j>.<k>" and
// "s<seed>-v<i>.<j>.<k>" for the k-th panorama along the street leaving
// intersection (i, j) eastwards or northwards.
StreetGraph generate_city(const CityParams& params);

// Block cell whose palette a panorama at p uses: the grid cell containing p,
// clamped to the city (ties on a street line go north/east).
struct BlockId {
  int x = 0;
  int y = 0;

  friend bool operator==(const BlockId&, const BlockId&) = default;
};
BlockId home_block(const CityParams& params, LatLng p);

// Writes the graph plus one PNG per node as an slpack directory.
void write_city_slpack(const StreetGraph& graph, const CityParams& params, const std::string& root,
                       bool with_images = true);

}  // namespace streetlearn::synthcity
