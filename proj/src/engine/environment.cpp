#include "streetlearn/engine/environment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace streetlearn {

EnvConfig EnvConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> known{"graph_path", "game",       "observations", "frame_size",
                                           "fov",        "episode_length", "seed",     "auto_reset",
                                           "cache_bytes", "game_config"};
  if (!j.is_object()) throw std::invalid_argument("environment config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown environment config key: " + key);
  }
  EnvConfig c;
  try {
    c.graph_path = j.value("graph_path", c.graph_path);
    c.game = j.value("game", c.game);
    c.observations = j.value("observations", c.observations);
    c.frame_size = j.value("frame_size", c.frame_size);
    c.fov = j.value("fov", c.fov);
    c.episode_length = j.value("episode_length", c.episode_length);
    c.seed = j.value("seed", c.seed);
    c.auto_reset = j.value("auto_reset", c.auto_reset);
    c.cache_bytes = j.value("cache_bytes", c.cache_bytes);
    if (j.contains("game_config")) c.game_config = j.at("game_config");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad environment config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json EnvConfig::to_json() const {
  return {{"graph_path", graph_path}, {"game", game},     {"observations", observations},
          {"frame_size", frame_size}, {"fov", fov},       {"episode_length", episode_length},
          {"seed", seed},             {"auto_reset", auto_reset}, {"cache_bytes", cache_bytes},
          {"game_config", game_config}};
}

void EnvConfig::validate() const {
  if (frame_size < 1 || frame_size > 4096) throw std::invalid_argument("frame_size must be in [1, 4096]");
  if (!(fov >= kMinFovDeg && fov <= kMaxFovDeg)) throw std::invalid_argument("fov must be in [30, 120]");
  if (episode_length < 1) throw std::invalid_argument("episode_length must be positive");
  (void)ChannelSet::parse(observations);
}

Environment::Environment(std::shared_ptr<const StreetGraph> graph, std::shared_ptr<const PanoSource> source,
                         std::unique_ptr<Game> game, EnvConfig config)
    : graph_(std::move(graph)),
      game_(std::move(game)),
      config_(std::move(config)),
      cache_(std::move(source), config_.cache_bytes),
      rng_(config_.seed) {
  config_.validate();
  if (!graph_ || graph_->empty()) throw std::invalid_argument("environment needs a non-empty graph");
  if (!game_) throw std::invalid_argument("environment needs a game");
  channels_ = ChannelSet::parse(config_.observations);
}

void Environment::reseed(std::uint64_t seed) {
  rng_ = Rng(seed);
  total_steps_ = 0;
  episode_index_ = 0;
  episode_step_ = 0;
  was_reset_ = false;
  episode_active_ = false;
  info_ = nlohmann::json::object();
}

Observation Environment::reset() {
  begin_episode();
  info_ = make_info(0.0);
  return observe();
}

void Environment::begin_episode() {
  const AgentPose start = game_->new_episode(*this);
  pose_ = start;
  pose_.yaw = normalize_deg(start.yaw);
  pose_.pitch = 0.0;
  pose_.fov = config_.fov;
  episode_step_ = 0;
  ++episode_index_;
  was_reset_ = true;
  episode_active_ = true;
}

StepResult Environment::step(std::size_t discrete_action) { return step(actions_.at(discrete_action)); }

StepResult Environment::step(const ActionTuple& action) {
  if (!was_reset_) throw NotResetError("not-reset");
  if (!episode_active_) throw NotResetError("episode-ended");
  action.validate();

  pose_ = apply_action(pose_, action, *graph_);
  ++episode_step_;
  ++total_steps_;
  const StepOutcome outcome = game_->on_step(*this, pose_);

  StepResult result;
  result.reward = outcome.reward;
  result.done = outcome.done || episode_step_ >= config_.episode_length;
  info_ = make_info(outcome.reward);
  if (result.done) {
    episode_active_ = false;
    info_["episode_done"] = true;
    if (config_.auto_reset) {
      begin_episode();
      info_["reset"] = true;
      info_["reset_info"] = make_info(0.0);
    }
  }
  result.observation = observe();
  result.info = info_;
  return result;
}

std::optional<double> Environment::bearing_to_next_pano() const {
  const ShortestPaths* paths = game_->target_paths();
  if (paths == nullptr || pose_.pano == paths->goal || !paths->reachable(pose_.pano)) return std::nullopt;
  const NodeIndex next = paths->next(pose_.pano);
  const auto nbs = graph_->neighbors(pose_.pano);
  const auto it = std::find(nbs.begin(), nbs.end(), next);
  const double bearing = graph_->neighbor_bearings(pose_.pano)[static_cast<std::size_t>(it - nbs.begin())];
  return signed_angle_deg(bearing - pose_.yaw);
}

nlohmann::json Environment::make_info(double reward) const {
  const PanoRecord& here = graph_->node(pose_.pano);
  nlohmann::json info = {{"episode", episode_index_},
                         {"step", episode_step_},
                         {"total_steps", total_steps_},
                         {"pano_id", here.id},
                         {"lat", here.lat},
                         {"lng", here.lng},
                         {"yaw", pose_.yaw},
                         {"pitch", pose_.pitch},
                         {"fov", pose_.fov},
                         {"reward", reward}};
  game_->annotate(info);
  if (const NodeIndex target = game_->target(); target != kNoNode) {
    const PanoRecord& t = graph_->node(target);
    info["target_id"] = t.id;
    info["target_lat"] = t.lat;
    info["target_lng"] = t.lng;
  }
  if (const auto bearing = bearing_to_next_pano()) {
    info["bearing_to_next_pano"] = *bearing;
    info["next_pano_id"] = graph_->node(game_->target_paths()->next(pose_.pano)).id;
  }
  return info;
}

const Image& Environment::pano_at(NodeIndex node) {
  if (node != loaded_node_ || !loaded_pano_) {
    loaded_pano_ = cache_.get(graph_->node(node));
    loaded_node_ = node;
  }
  return *loaded_pano_;
}

Image Environment::render_view(NodeIndex node, double yaw) {
  const ViewSpec view{normalize_deg(yaw), 0.0, config_.fov, config_.frame_size};
  if (node == loaded_node_ && loaded_pano_) return projector_.project(*loaded_pano_, view);
  return projector_.project(*cache_.get(graph_->node(node)), view);
}

Observation Environment::observe() {
  Observation o;
  const PanoRecord& here = graph_->node(pose_.pano);
  if (channels_.has(Channel::kViewImage)) {
    o.view_image.emplace();
    projector_.project_into(pano_at(pose_.pano), ViewSpec{pose_.yaw, pose_.pitch, pose_.fov, config_.frame_size},
                            *o.view_image);
  }
  if (channels_.has(Channel::kGraphImage)) {
    if (!graph_renderer_) graph_renderer_.emplace(*graph_, config_.frame_size);
    o.graph_image = graph_renderer_->render(pose_, game_->target());
  }
  if (channels_.has(Channel::kPitch)) o.pitch = pose_.pitch;
  if (channels_.has(Channel::kYaw)) o.yaw = pose_.yaw;
  if (channels_.has(Channel::kYawLabel)) o.yaw_label = discretize_yaw(pose_.yaw);
  if (channels_.has(Channel::kMetadata)) o.metadata = here;
  if (channels_.has(Channel::kLatlng)) o.latlng = here.position();
  if (channels_.has(Channel::kLatlngLabel)) o.latlng_label = discretize_latlng(here.position(), graph_->bounds());

  // Games without a target report an empty record and (0, 0).
  const NodeIndex target = game_->target();
  if (channels_.has(Channel::kTargetMetadata)) o.target_metadata = target != kNoNode ? graph_->node(target) : PanoRecord{};
  if (channels_.has(Channel::kTargetLatlng)) o.target_latlng = target != kNoNode ? graph_->position(target) : LatLng{};
  if (channels_.has(Channel::kTargetLatlngLabel)) {
    o.target_latlng_label = target != kNoNode ? discretize_latlng(graph_->position(target), graph_->bounds()) : 0;
  }
  if (channels_.has(Channel::kNeighbors)) o.neighbors = neighbors_vector(pose_, *graph_);
  if (channels_.has(Channel::kGroundTruthDirection)) o.ground_truth_direction = bearing_to_next_pano().value_or(0.0);

  game_->fill_observation(o, channels_);
  if (channels_.has(Channel::kThumbnails) && !o.thumbnails) o.thumbnails.emplace();
  if (channels_.has(Channel::kInstructions) && !o.instructions) o.instructions.emplace();
  return o;
}

}  // namespace streetlearn
