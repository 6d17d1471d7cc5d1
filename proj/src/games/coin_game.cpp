#include "streetlearn/games/coin_game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace streetlearn {

void CoinField::scatter(const StreetGraph& graph, double fraction, Rng& rng) {
  coins_.assign(graph.size(), 0);
  const auto count = static_cast<std::size_t>(std::lround(std::clamp(fraction, 0.0, 1.0) * graph.size()));
  // Partial Fisher-Yates over node indices.
  std::vector<NodeIndex> order(graph.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.index(order.size() - i);
    std::swap(order[i], order[j]);
    coins_[static_cast<std::size_t>(order[i])] = 1;
  }
  placed_ = count;
  remaining_ = count;
}

double CoinField::collect(NodeIndex node) {
  if (node < 0 || static_cast<std::size_t>(node) >= coins_.size() || !coins_[static_cast<std::size_t>(node)]) {
    return 0.0;
  }
  coins_[static_cast<std::size_t>(node)] = 0;
  --remaining_;
  return 1.0;
}

bool CoinField::has_coin(NodeIndex node) const {
  return node >= 0 && static_cast<std::size_t>(node) < coins_.size() && coins_[static_cast<std::size_t>(node)];
}

CoinGameConfig CoinGameConfig::from_json(const nlohmann::json& j) {
  CoinGameConfig c;
  c.coin_fraction = j.value("coin_fraction", c.coin_fraction);
  if (!(c.coin_fraction >= 0.0 && c.coin_fraction <= 1.0)) throw std::invalid_argument("coin_fraction must be in [0, 1]");
  return c;
}

AgentPose random_start(GameHost& host) {
  AgentPose pose;
  pose.pano = static_cast<NodeIndex>(host.rng().index(host.graph().size()));
  pose.yaw = host.rng().uniform(0.0, 360.0);
  return pose;
}

AgentPose CoinGame::new_episode(GameHost& host) {
  const AgentPose start = random_start(host);
  coins_.scatter(host.graph(), config_.coin_fraction, host.rng());
  last_coin_reward_ = 0.0;
  return start;
}

StepOutcome CoinGame::on_step(GameHost&, const AgentPose& pose) {
  last_coin_reward_ = coins_.collect(pose.pano);
  return {last_coin_reward_, false};
}

void CoinGame::annotate(nlohmann::json& info) const {
  info["coin_reward"] = last_coin_reward_;
  info["coins_remaining"] = coins_.remaining();
}

}  // namespace streetlearn
