#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "streetlearn/games/coin_game.hpp"
#include "streetlearn/games/courier_game.hpp"
#include "streetlearn/games/goal_sampling.hpp"
#include "streetlearn/games/instruction_game.hpp"
#include "streetlearn/games/oracle.hpp"
#include "streetlearn/games/registry.hpp"

using namespace streetlearn;

namespace {

// Host without rendering: thumbnails are 4x4 images tagged with the node.
class StubHost final : public GameHost {
 public:
  explicit StubHost(const StreetGraph& g, std::uint64_t seed = 1) : graph_(g), rng_(seed) {}
  const StreetGraph& graph() const override { return graph_; }
  Rng& rng() override { return rng_; }
  Image render_view(NodeIndex node, double yaw) override {
    Image img(4, 4);
    img.pixels[0] = static_cast<std::uint8_t>(node);
    img.pixels[1] = static_cast<std::uint8_t>(std::lround(yaw) % 256);
    return img;
  }
  int episode_step() const override { return step; }
  std::int64_t total_steps() const override { return total; }

  int step = 0;
  std::int64_t total = 0;

 private:
  const StreetGraph& graph_;
  Rng rng_;
};

std::vector<std::string> numbered(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "p%03d", i);
    ids.emplace_back(buf);
  }
  return ids;
}

// Walks the game's current target path one hop per step, returning rewards.
std::vector<StepOutcome> walk_to_target(Game& game, StubHost& host, AgentPose& pose, int max_steps) {
  std::vector<StepOutcome> out;
  for (int i = 0; i < max_steps; ++i) {
    const ShortestPaths* paths = game.target_paths();
    const NodeIndex next = paths->next(pose.pano);
    if (next != kNoNode) pose.pano = next;
    ++host.step;
    ++host.total;
    out.push_back(game.on_step(host, pose));
    if (out.back().done || out.back().reward != 0.0) break;
  }
  return out;
}

}  // namespace

TEST_SUITE("games") {
  TEST_CASE("registry names") {
    CHECK(game_names().size() == 6);
    for (const std::string& n : game_names()) CHECK(make_game(n, nlohmann::json::object())->name() == n);
    CHECK_THROWS_AS(make_game("maze_game", nlohmann::json::object()), std::invalid_argument);
    CHECK_THROWS_AS(make_game("courier_game", {{"goal_radius", "far"}}), std::invalid_argument);
    CHECK_THROWS_AS(make_game("courier_game", {{"goal_mode", "held_out"}}), std::invalid_argument);
    CHECK_THROWS_AS(make_game("courier_game", {{"warp", 1}}), std::invalid_argument);
  }

  TEST_CASE("coin field pays once per episode") {
    const StreetGraph g = oracle::line_graph(numbered(20));
    Rng rng(3);
    CoinField coins;
    coins.scatter(g, 0.25, rng);
    CHECK(coins.placed() == 5);
    NodeIndex with_coin = kNoNode;
    for (NodeIndex i = 0; i < 20; ++i)
      if (coins.has_coin(i)) with_coin = i;
    REQUIRE(with_coin != kNoNode);
    CHECK(coins.collect(with_coin) == 1.0);
    CHECK(coins.collect(with_coin) == 0.0);
    CHECK(coins.remaining() == 4);
    coins.scatter(g, 0.25, rng);
    CHECK(coins.remaining() == 5);

    // Collected rewards never exceed the coins placed.
    CoinGame game(CoinGameConfig{0.3});
    StubHost host(g);
    AgentPose pose = game.new_episode(host);
    double total = 0;
    for (int s = 0; s < 200; ++s) {
      pose.pano = static_cast<NodeIndex>(host.rng().index(20));
      total += game.on_step(host, pose).reward;
    }
    CHECK(total <= static_cast<double>(game.coins().placed()));
    CHECK(total == static_cast<double>(game.coins().placed() - game.coins().remaining()));
  }

  TEST_CASE("goal mask tiles 2x2 groups") {
    const GoalMask mask(0.01);
    std::set<std::pair<std::int64_t, std::int64_t>> held;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const LatLng p{40.0 + 0.01 * a + 0.005, -74.0 + 0.01 * b + 0.005};
        if (mask.held_out(p)) held.insert(mask.cell(p));
      }
    CHECK(held.size() == 4);
    const GoalMask shifted(0.01, 1, 0);
    int differ = 0;
    for (int a = 0; a < 4; ++a) {
      const LatLng p{40.0 + 0.01 * a + 0.005, -74.0 + 0.005};
      differ += mask.held_out(p) != shifted.held_out(p);
    }
    CHECK(differ > 0);
  }

  TEST_CASE("goal sampling constraints") {
    const StreetGraph g = synthcity::generate_city(small_city(2, 8));
    Rng rng(11);
    GoalConstraints train;
    train.mask = GoalMask(0.002);
    GoalConstraints held = train;
    held.mode = GoalMode::kHeldOut;
    for (int i = 0; i < 500; ++i) {
      const NodeIndex agent = static_cast<NodeIndex>(rng.index(g.size()));
      const NodeIndex a = sample_goal(g, agent, train, rng);
      const NodeIndex b = sample_goal(g, agent, held, rng);
      CHECK_FALSE(train.mask->held_out(g.position(a)));
      CHECK(held.mask->held_out(g.position(b)));
      CHECK(oracle::chord_distance_m(g.position(agent), g.position(a)) > train.goal_radius_m);
    }

    GoalConstraints capped;
    capped.max_distance_m = 300.0;
    for (int i = 0; i < 500; ++i) {
      const NodeIndex agent = static_cast<NodeIndex>(rng.index(g.size()));
      const NodeIndex goal = sample_goal(g, agent, capped, rng);
      CHECK(oracle::chord_distance_m(g.position(agent), g.position(goal)) <= 300.0 + 1e-6);
    }

    // A single eligible node is always chosen; none is an error.
    const StreetGraph line = oracle::line_graph(numbered(12));
    GoalConstraints one;
    one.goal_radius_m = 105.0;
    for (int i = 0; i < 20; ++i) CHECK(sample_goal(line, 0, one, rng) == 11);
    one.goal_radius_m = 200.0;
    CHECK_THROWS_AS(sample_goal(line, 0, one, rng), GoalSamplingError);
  }

  TEST_CASE("curriculum schedule is monotonic") {
    CurriculumSchedule s;
    s.phase1_max_m = 500;
    s.phase1_steps = 1000;
    s.growth_steps = 10000;
    s.full_range_m = 5000;
    CHECK(s.max_range(0) == 500);
    CHECK(s.max_range(999) == 500);
    double prev = 0;
    for (std::int64_t t = 0; t < 20000; t += 137) {
      const double r = s.max_range(t);
      CHECK(r >= prev);
      CHECK(r <= 5000);
      prev = r;
    }
    CHECK(s.max_range(11000) == 5000);
    CHECK(s.max_range(6000) == doctest::Approx(2750));
  }

  TEST_CASE("courier pays the shortest-path length") {
    const StreetGraph g = synthcity::generate_city(small_city(4, 5));
    CourierGame game(CourierConfig{});
    StubHost host(g, 21);
    AgentPose pose = game.new_episode(host);
    std::vector<NodeIndex> positions;
    double total = 0;
    for (int goal = 0; goal < 15; ++goal) {
      const GoalAssignment a = game.episode_goals().back();
      const auto dist = oracle::dijkstra_hops(g, a.goal);
      CHECK(a.path_panos == dist[static_cast<std::size_t>(a.from)]);
      CHECK(a.goal_value == static_cast<double>(a.path_panos));
      CHECK(a.initial_distance_m > 100.0);
      double got = 0;
      for (int s = 0; s < 500 && got == 0; ++s) {
        pose.pano = game.target_paths()->next(pose.pano);
        ++host.step;
        positions.push_back(pose.pano);
        got = game.on_step(host, pose).reward;
      }
      CHECK(got == a.goal_value);
      total += got;
      CHECK(game.episode_goals()[static_cast<std::size_t>(goal)].reached);
    }
    std::vector<oracle::LedgerGoal> ledger;
    for (const GoalAssignment& a : game.episode_goals()) ledger.push_back({a.goal, a.from});
    const oracle::LedgerResult r = oracle::replay_ledger(g, ledger, positions, 100.0);
    CHECK(r.reached == 15);
    CHECK(r.total == total);
  }

  TEST_CASE("courier: no reward away from the goal, meters mode, early shaping") {
    const StreetGraph g = oracle::line_graph(numbered(40));
    StubHost host(g, 2);
    CourierGame game(CourierConfig{});
    AgentPose pose = game.new_episode(host);
    const NodeIndex goal = game.target();
    const AgentPose start = pose;
    for (int s = 0; s < 50; ++s) {
      ++host.step;
      CHECK(game.on_step(host, pose).reward == 0.0);
    }
    CHECK(game.target() == goal);
    CHECK(pose == start);

    CourierConfig meters;
    meters.reward_unit = CourierRewardUnit::kMeters;
    meters.reward_per_meter = 0.5;
    meters.early_rewards = true;
    CourierGame m(meters);
    StubHost h2(g, 5);
    AgentPose p = m.new_episode(h2);
    const GoalAssignment a = m.episode_goals().back();
    CHECK(a.goal_value == doctest::Approx(0.5 * 10.0 * a.path_panos).epsilon(1e-3));
    double shaping = 0;
    int shaped = 0;
    double goal_reward = 0;
    for (int s = 0; s < 100 && goal_reward == 0; ++s) {
      p.pano = m.target_paths()->next(p.pano);
      ++h2.step;
      const double r = m.on_step(h2, p).reward;
      nlohmann::json info;
      m.annotate(info);
      if (info["shaping_reward"].get<double>() > 0) {
        ++shaped;
        shaping += r;
        const double d = haversine_m(g.position(p.pano), g.position(a.goal));
        CHECK(r == doctest::Approx(0.5 * a.goal_value * (1 - d / 200.0)));
      }
      goal_reward = info["goal_reward"].get<double>();
    }
    CHECK(goal_reward == a.goal_value);
    CHECK(shaped <= 1);
    if (a.initial_distance_m > 200.0) CHECK(shaped == 1);
  }

  TEST_CASE("curriculum courier: early goals stay within 500 m") {
    const StreetGraph g = synthcity::generate_city(small_city(6, 12));
    auto game = make_game("curriculum_courier_game", nlohmann::json::object());
    auto& courier = dynamic_cast<CourierGame&>(*game);
    StubHost host(g, 8);
    for (int e = 0; e < 200; ++e) {
      game->new_episode(host);
      const GoalAssignment& a = courier.episode_goals().back();
      CHECK(oracle::chord_distance_m(g.position(a.from), g.position(a.goal)) <= 500.0 + 1e-6);
    }
    host.total = 10'000'000;
    double longest = 0;
    for (int e = 0; e < 200; ++e) {
      game->new_episode(host);
      longest = std::max(longest, courier.episode_goals().back().initial_distance_m);
    }
    CHECK(longest > 500.0);
  }

  TEST_CASE("oracle action") {
    CHECK(oracle_action(45.0) == ActionTuple{22.5, 0, 0, 0});
    CHECK(oracle_action(-45.0) == ActionTuple{-22.5, 0, 0, 0});
    CHECK(oracle_action(10.0) == ActionTuple{0, 0, 1, 0});
    CHECK(oracle_action(-22.5) == ActionTuple{0, 0, 1, 0});

    const StreetGraph star = oracle::star_graph({0.0, 90.0});
    const ShortestPaths to_east = shortest_paths_to(star, "n1");
    const NodeIndex c = star.index_of("c");
    CHECK(oracle_policy(star, to_east, c, 0.0) == ActionTuple{22.5, 0, 0, 0});
    CHECK(oracle_policy(star, to_east, c, 80.0) == ActionTuple{0, 0, 1, 0});
    CHECK_THROWS_AS(oracle_policy(star, to_east, star.index_of("n1"), 0.0), std::invalid_argument);

    std::vector<PanoRecord> recs(3);
    recs[0].id = "a";
    recs[1].id = "b";
    recs[2].id = "z";
    recs[0].lat = recs[1].lat = recs[2].lat = 40.0;
    recs[0].lng = -74.0;
    recs[1].lng = -73.9999;
    recs[2].lng = -73.99;
    recs[0].neighbors = {"b"};
    const StreetGraph split = StreetGraph::build(recs);
    const ShortestPaths to_z = shortest_paths_to(split, "z");
    CHECK_THROWS_AS(oracle_policy(split, to_z, split.index_of("a"), 0.0), GoalUnreachableError);
  }

  TEST_CASE("instruction text") {
    CHECK(instruction_text(0.0, 43.0) == "Go straight for 40 meters");
    CHECK(instruction_text(90.0, 120.0) == "Turn right at the next intersection and continue for 120 meters");
    CHECK(instruction_text(-90.0, 3.0) == "Turn left at the next intersection and continue for 10 meters");
    CHECK(instruction_text(179.0, 55.0) == "Turn around and continue for 60 meters");
  }

  TEST_CASE("instruction routes") {
    const StreetGraph line = oracle::line_graph(numbered(30));
    StubHost host(line);
    const ViewRenderer render = [&](NodeIndex n, double yaw) { return host.render_view(n, yaw); };
    const InstructionRoute one = build_instruction_route(line, 0, 20, 1, render);
    REQUIRE(one.instructions.size() == 1);
    CHECK(one.instructions[0].find("straight") != std::string::npos);
    CHECK(one.thumbnails.size() == 2);
    CHECK(one.targets == std::vector<NodeIndex>{10, 20});
    CHECK(one.path.size() == 21);

    const InstructionRoute three = build_instruction_route(line, 0, 20, 3, render);
    CHECK(three.thumbnails.size() == 4);
    CHECK(three.targets == std::vector<NodeIndex>{5, 10, 15, 20});
    CHECK(three.thumbnails[0].pixels[0] == 5);
    CHECK_THROWS_AS(build_instruction_route(line, 3, 3, 1, render), std::invalid_argument);
    CHECK_THROWS_AS(build_instruction_route(line, 0, 2, 3, render), std::invalid_argument);
    CHECK(build_instruction_route(line, 0, 20, 3, ViewRenderer{}).thumbnails.empty());

    // A right turn on an L-shaped route.
    const StreetGraph g = synthcity::generate_city(small_city(1, 3));
    const NodeIndex a = g.index_of("s1-x0y0");
    const NodeIndex b = g.index_of("s1-x2y2");
    const InstructionRoute l = build_instruction_route(g, a, b, 1, render);
    CHECK(l.instructions.size() == 1);
  }

  TEST_CASE("instruction game variants") {
    const StreetGraph line = oracle::line_graph(numbered(60));
    for (InstructionVariant v : {InstructionVariant::kGoal, InstructionVariant::kIncremental,
                                 InstructionVariant::kStepByStep}) {
      InstructionGame game(v, InstructionConfig{});
      StubHost host(line, 4);
      AgentPose pose = game.new_episode(host);
      const int hops = static_cast<int>(game.route().path.size()) - 1;
      CHECK(hops >= 20);
      CHECK(game.route().targets.size() == 4);
      CHECK(game.route().thumbnails.size() == 4);

      Observation obs;
      ChannelSet want;
      want.add(Channel::kInstructions);
      want.add(Channel::kThumbnails);
      game.fill_observation(obs, want);
      if (v == InstructionVariant::kStepByStep) {
        CHECK(obs.instructions->size() == 1);
        CHECK(obs.thumbnails->size() == 2);
      } else {
        CHECK(obs.instructions->size() == 3);
        CHECK(obs.thumbnails->size() == 4);
      }

      std::vector<double> rewards;
      bool done = false;
      for (int s = 0; s < 300 && !done; ++s) {
        const std::vector<StepOutcome> leg = walk_to_target(game, host, pose, 300);
        for (const StepOutcome& o : leg)
          if (o.reward != 0) rewards.push_back(o.reward);
        done = leg.back().done;
      }
      CHECK(done);
      if (v == InstructionVariant::kGoal) {
        CHECK(rewards == std::vector<double>{10.0});
      } else {
        CHECK(rewards == std::vector<double>{1.0, 1.0, 1.0, 10.0});
      }
      if (v == InstructionVariant::kStepByStep) {
        Observation late;
        game.fill_observation(late, want);
        CHECK(late.instructions->front() == game.route().instructions.back());
      }
    }
  }

  TEST_CASE("instruction game needs long enough routes") {
    const StreetGraph tiny = oracle::line_graph(numbered(8));
    InstructionGame game(InstructionVariant::kGoal, InstructionConfig{});
    StubHost host(tiny);
    CHECK_THROWS_AS(game.new_episode(host), GoalSamplingError);
  }

  TEST_CASE("coin game through the environment") {
    EnvConfig c;
    c.game = "coin_game";
    c.game_config = {{"coin_fraction", 0.5}};
    c.observations = {"target_latlng", "instructions"};
    auto env = city_env(small_city(), c);
    env->reset();
    double total = 0;
    std::set<std::string> visited;
    for (int i = 0; i < 300; ++i) {
      const StepResult r = env->step(static_cast<std::size_t>(i % 3 == 0 ? 3 : 0));
      total += r.reward;
      visited.insert(r.info["pano_id"].get<std::string>());
      CHECK(r.observation.instructions->empty());
    }
    CHECK(total <= static_cast<double>(visited.size()));
  }
}
