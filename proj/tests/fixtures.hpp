#pragma once

#include <memory>

#include "streetlearn/engine/environment.hpp"
#include "streetlearn/engine/pano_source.hpp"
#include "streetlearn/games/registry.hpp"
#include "streetlearn/synthcity/city.hpp"

// In-memory city environment with procedurally rendered panoramas.
inline std::unique_ptr<streetlearn::Environment> city_env(const streetlearn::synthcity::CityParams& params,
                                                          const streetlearn::EnvConfig& config) {
  using namespace streetlearn;
  auto graph = std::make_shared<const StreetGraph>(synthcity::generate_city(params));
  auto source = std::make_shared<ProceduralPanoSource>(graph, params);
  return std::make_unique<Environment>(graph, source, make_game(config.game, config.game_config), config);
}

inline streetlearn::synthcity::CityParams small_city(std::uint64_t seed = 1, int blocks = 4) {
  streetlearn::synthcity::CityParams p;
  p.seed = seed;
  p.blocks_x = p.blocks_y = blocks;
  p.irregularity = 0.3;
  p.pano_height = 128;
  return p;
}
