#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/game.hpp"

namespace streetlearn {

// Invisible coins on a seeded subset of nodes; each pays 1 once per episode.
class CoinField {
 public:
  // Places round(fraction * |nodes|) coins on distinct nodes.
  void scatter(const StreetGraph& graph, double fraction, Rng& rng);
  // 1 on the first visit to a coin node this episode, else 0.
  double collect(NodeIndex node);

  std::size_t placed() const { return placed_; }
  std::size_t remaining() const { return remaining_; }
  bool has_coin(NodeIndex node) const;

 private:
  std::vector<char> coins_;
  std::size_t placed_ = 0;
  std::size_t remaining_ = 0;
};

struct CoinGameConfig {
  double coin_fraction = 0.1;

  static CoinGameConfig from_json(const nlohmann::json& j);
};

class CoinGame final : public Game {
 public:
  explicit CoinGame(CoinGameConfig config) : config_(config) {}

  std::string_view name() const override { return "coin_game"; }
  AgentPose new_episode(GameHost& host) override;
  StepOutcome on_step(GameHost& host, const AgentPose& pose) override;
  void annotate(nlohmann::json& info) const override;

  const CoinField& coins() const { return coins_; }

 private:
  CoinGameConfig config_;
  CoinField coins_;
  double last_coin_reward_ = 0.0;
};

// Uniformly random node and yaw.
AgentPose random_start(GameHost& host);

}  // namespace streetlearn
