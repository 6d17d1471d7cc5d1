#include "streetlearn/service/session.hpp"

#include <stdexcept>

#include "streetlearn/engine/observation.hpp"
#include "streetlearn/games/registry.hpp"
#include "streetlearn/service/protocol.hpp"

namespace streetlearn::wire {
namespace {

// "discrete": index, or "action": [rotate_yaw, rotate_pitch, move_forward, zoom]
// (an object with those keys is accepted too).
ActionTuple parse_action(const nlohmann::json& msg, const DiscreteActionSet& set) {
  const bool has_discrete = msg.contains("discrete");
  if (has_discrete == msg.contains("action")) throw std::invalid_argument("step needs exactly one of action or discrete");
  const nlohmann::json& a = has_discrete ? msg["discrete"] : msg["action"];
  if (has_discrete) {
    if (!a.is_number_integer()) throw std::invalid_argument("discrete must be an integer");
    const auto i = a.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= set.size()) throw std::invalid_argument("action index out of range");
    return set.at(static_cast<std::size_t>(i));
  }
  if (a.is_array()) {
    if (a.size() != 4) throw std::invalid_argument("action must have 4 numbers");
    for (const auto& v : a) {
      if (!v.is_number()) throw std::invalid_argument("action must have 4 numbers");
    }
    return ActionTuple{a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>()};
  }
  if (!a.is_object()) throw std::invalid_argument("action must be an array of 4 numbers or an object");
  ActionTuple t;
  t.rotate_yaw = a.value("rotate_yaw", 0.0);
  t.rotate_pitch = a.value("rotate_pitch", 0.0);
  t.move_forward = a.value("move_forward", 0.0);
  t.zoom = a.value("zoom", 0.0);
  return t;
}

nlohmann::json action_json(const ActionTuple& a) {
  return {{"rotate_yaw", a.rotate_yaw}, {"rotate_pitch", a.rotate_pitch}, {"move_forward", a.move_forward},
          {"zoom", a.zoom}};
}

}  // namespace

Session::Session(EnvFactory factory) : factory_(std::move(factory)) {
  if (!factory_) factory_ = [](const EnvConfig& c) { return make_environment(c); };
}

Outgoing Session::message(nlohmann::json body, const nlohmann::json& reply_to) {
  body["id"] = next_id_++;
  body["reply_to"] = reply_to;
  return {false, body.dump()};
}

std::vector<Outgoing> Session::error(const std::string& code, const std::string& text, const nlohmann::json& reply_to) {
  return {message({{"type", "error"}, {"code", code}, {"message", text}}, reply_to)};
}

std::vector<Outgoing> Session::observation(const StepResult& r, const nlohmann::json& reply_to) {
  std::vector<Outgoing> out;
  std::vector<Outgoing> blobs;
  nlohmann::json images = nlohmann::json::array();
  auto add = [&](const char* channel, std::size_t index, const Image& img) {
    nlohmann::json entry = {{"channel", channel}, {"index", index}, {"width", img.width}, {"height", img.height}};
    if (mode_ == FrameMode::kBase64) {
      entry["data"] = base64_encode(std::string_view(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size()));
    } else {
      const std::uint32_t ref = next_ref_++;
      entry["ref"] = ref;
      blobs.push_back({true, encode_image_payload(ref, img)});
    }
    images.push_back(std::move(entry));
  };
  const Observation& o = r.observation;
  if (o.view_image) add("view_image", 0, *o.view_image);
  if (o.graph_image) add("graph_image", 0, *o.graph_image);
  if (o.thumbnails) {
    for (std::size_t i = 0; i < o.thumbnails->size(); ++i) add("thumbnails", i, (*o.thumbnails)[i]);
  }
  out.push_back(message({{"type", "obs"},
                         {"reward", r.reward},
                         {"done", r.done},
                         {"info", r.info},
                         {"observation", scalar_channels_json(o)},
                         {"images", std::move(images)}},
                        reply_to));
  for (auto& b : blobs) out.push_back(std::move(b));
  return out;
}

std::vector<Outgoing> Session::reject_binary() {
  return error("bad-request", "clients may only send JSON messages", nullptr);
}

std::vector<Outgoing> Session::handle(std::string_view text) {
  if (closed_) return {};
  nlohmann::json msg;
  try {
    msg = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    return error("bad-request", std::string("malformed JSON: ") + e.what(), nullptr);
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return error("bad-request", "message must be an object with a string \"type\"", nullptr);
  }
  const nlohmann::json reply_to = msg.contains("id") ? msg["id"] : nlohmann::json(nullptr);
  const std::string type = msg["type"].get<std::string>();

  if (type == "hello") {
    const std::string mode = msg.value("frame_mode", std::string("binary"));
    if (mode == "binary") {
      mode_ = FrameMode::kBinary;
    } else if (mode == "base64") {
      mode_ = FrameMode::kBase64;
    } else {
      return error("bad-request", "frame_mode must be \"binary\" or \"base64\"", reply_to);
    }
    nlohmann::json channels = nlohmann::json::array();
    for (Channel c : kAllChannels) channels.push_back(channel_name(c));
    return {message({{"type", "hello"},
                     {"version", kProtocolVersion},
                     {"frame_mode", mode},
                     {"games", game_names()},
                     {"channels", channels}},
                    reply_to)};
  }
  if (type == "configure") {
    try {
      const EnvConfig config = EnvConfig::from_json(msg.value("config", nlohmann::json::object()));
      env_ = factory_(config);
    } catch (const std::exception& e) {
      env_.reset();
      return error("config-error", e.what(), reply_to);
    }
    nlohmann::json actions = nlohmann::json::array();
    for (std::size_t i = 0; i < env_->action_set().size(); ++i) actions.push_back(action_json(env_->action_set().at(i)));
    return {message({{"type", "configure"},
                     {"ok", true},
                     {"actions", actions},
                     {"observations", env_->config().observations},
                     {"episode_length", env_->config().episode_length}},
                    reply_to)};
  }
  if (type == "reset") {
    if (!env_) return error("not-configured", "configure the environment first", reply_to);
    try {
      StepResult r;
      r.observation = env_->reset();
      r.info = env_->last_info();
      return observation(r, reply_to);
    } catch (const std::exception& e) {
      return error("internal", e.what(), reply_to);
    }
  }
  if (type == "step") {
    if (!env_) return error("not-configured", "configure the environment first", reply_to);
    try {
      const ActionTuple a = parse_action(msg, env_->action_set());
      return observation(env_->step(a), reply_to);
    } catch (const NotResetError& e) {
      return error(e.what(), "reset the environment before stepping", reply_to);
    } catch (const std::invalid_argument& e) {
      return error("bad-action", e.what(), reply_to);
    } catch (const nlohmann::json::exception& e) {
      return error("bad-action", e.what(), reply_to);
    } catch (const std::exception& e) {
      return error("internal", e.what(), reply_to);
    }
  }
  if (type == "bye") {
    closed_ = true;
    return {message({{"type", "bye"}}, reply_to)};
  }
  return error("unknown-type", "unknown message type: " + type, reply_to);
}

}  // namespace streetlearn::wire
