// streetlearn: build graphs, inspect them, benchmark and serve environments.

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "streetlearn/engine/pano_source.hpp"
#include "streetlearn/games/registry.hpp"
#include "streetlearn/panograph/graph_stats.hpp"
#include "streetlearn/panograph/region.hpp"
#include "streetlearn/panograph/slpack.hpp"
#include "streetlearn/service/bench.hpp"
#include "streetlearn/service/server.hpp"
#include "streetlearn/synthcity/city.hpp"

namespace fs = std::filesystem;
using namespace streetlearn;

namespace {

std::vector<double> parse_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(std::stod(item));
  return out;
}

void add_city_options(CLI::App* cmd, synthcity::CityParams& p) {
  cmd->add_option("--seed", p.seed, "City seed");
  cmd->add_option_function<std::string>(
         "--blocks",
         [&p](const std::string& v) {
           const auto x = v.find('x');
           if (x == std::string::npos) throw CLI::ValidationError("--blocks", "expected WxH, e.g. 4x4");
           try {
             p.blocks_x = std::stoi(v.substr(0, x));
             p.blocks_y = std::stoi(v.substr(x + 1));
           } catch (const std::exception&) {
             throw CLI::ValidationError("--blocks", "expected WxH, e.g. 4x4");
           }
           if (p.blocks_x < 1 || p.blocks_y < 1) throw CLI::ValidationError("--blocks", "need at least 1x1 blocks");
         },
         "City size in blocks, WxH");
  cmd->add_option("--block-len", p.block_len, "Meters between intersections");
  cmd->add_option("--spacing", p.node_spacing, "Meters between panoramas");
  cmd->add_option("--irregularity", p.irregularity, "Intersection jitter in [0, 1]");
  cmd->add_option("--pano-height", p.pano_height, "Panorama height in pixels");
  cmd->add_option("--city", p.city, "City name");
}

int cmd_generate(const synthcity::CityParams& params, const std::string& out, bool no_images) {
  const StreetGraph g = synthcity::generate_city(params);
  synthcity::write_city_slpack(g, params, out, !no_images);
  std::cout << stats_header() << "\n" << format_stats(compute_stats(g)) << "\n";
  return 0;
}

int cmd_carve(const std::string& in, const std::string& out, const std::string& center, int depth,
              const std::string& bbox, const std::string& polygon) {
  const Slpack pack = load_slpack(resolve_data_path(in));
  RegionSpec spec = RegionSpec::bfs(center, depth);
  if (!bbox.empty()) {
    const auto v = parse_numbers(bbox, ',');
    if (v.size() != 4) throw std::invalid_argument("--bbox wants min_lat,min_lng,max_lat,max_lng");
    spec = RegionSpec::bbox(LatLngBounds{v[0], v[1], v[2], v[3]});
  } else if (!polygon.empty()) {
    std::vector<LatLng> vertices;
    std::stringstream ss(polygon);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
      const auto v = parse_numbers(pair, ',');
      if (v.size() != 2) throw std::invalid_argument("--polygon wants lat,lng;lat,lng;...");
      vertices.push_back({v[0], v[1]});
    }
    spec = RegionSpec::polygon(std::move(vertices));
  } else if (center.empty()) {
    throw std::invalid_argument("give --bfs-center and --depth, --bbox or --polygon");
  }
  const CarvedRegion region = carve_region(pack.graph, spec);
  save_graph(region.graph, out, pack.manifest.city, pack.manifest.generator);
  if (fs::is_directory(pack.root / "images")) {
    fs::create_directories(fs::path(out) / "images");
    for (const PanoRecord& r : region.graph.nodes()) {
      fs::copy_file(slpack_image_path(pack.root, r.image_ref), slpack_image_path(out, r.image_ref),
                    fs::copy_options::overwrite_existing);
    }
  }
  std::cout << "carved " << region.graph.size() << " panoramas in " << region.component_count
            << " component(s) to " << out << "\n";
  return 0;
}

int cmd_stats(const std::string& graph) {
  const StreetGraph g = load_graph(resolve_data_path(graph));
  std::cout << stats_header() << "\n" << format_stats(compute_stats(g)) << "\n";
  return 0;
}

struct BenchArgs {
  std::string graph;
  synthcity::CityParams city;
  int episodes = 20;
  int episode_length = 1000;
  int frame_size = 84;
  std::string agent = "oracle";
  std::uint64_t seed = 0;
  double cache_mb = 1024;
  std::string game_config = "{}";
  bool json = false;
};

int cmd_oracle_bench(const BenchArgs& a) {
  EnvConfig config;
  config.game = "courier_game";
  config.frame_size = a.frame_size;
  config.episode_length = a.episode_length;
  config.seed = a.seed;
  config.auto_reset = false;
  config.cache_bytes = static_cast<std::size_t>(a.cache_mb * 1024.0 * 1024.0);
  config.game_config = nlohmann::json::parse(a.game_config);

  std::unique_ptr<Environment> env;
  if (!a.graph.empty()) {
    config.graph_path = a.graph;
    env = make_environment(config);
  } else {
    auto graph = std::make_shared<const StreetGraph>(synthcity::generate_city(a.city));
    auto source = std::make_shared<ProceduralPanoSource>(graph, a.city);
    env = std::make_unique<Environment>(graph, source, make_game(config.game, config.game_config), config);
  }
  BenchOptions opts;
  opts.episodes = a.episodes;
  opts.seed = a.seed;
  if (a.agent == "random") {
    opts.agent = BenchAgent::kRandom;
  } else if (a.agent != "oracle") {
    throw std::invalid_argument("--agent must be oracle or random");
  }
  const BenchReport r = run_oracle_bench(*env, opts);
  if (a.json) {
    nlohmann::json j = r.to_json();
    j["nodes"] = env->street_graph().size();
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "nodes            " << env->street_graph().size() << "\n"
            << "episodes         " << r.summary.episodes << "\n"
            << "goal_rewards     " << r.summary.mean_goal_rewards << "\n"
            << "fail_pct         " << 100.0 * r.summary.fail_pct << "%\n"
            << "t_half           " << (r.summary.t_half ? std::to_string(*r.summary.t_half) : "n/a") << "\n"
            << "goals            " << r.summary.goals_reached << " reached, " << r.summary.goals_failed
            << " failed, " << r.summary.goals_censored << " censored\n"
            << "steps_per_second " << r.steps_per_second << "\n";
  return 0;
}

extern "C" void on_signal(int) {
  // Only async-signal-safe work here: exit and let the OS close sockets.
  std::_Exit(0);
}

int cmd_play_server(const std::string& host, int port, const std::string& transport, const std::string& data) {
  if (!data.empty()) ::setenv("STREETLEARN_DATA", data.c_str(), 1);
  wire::ServerOptions opts;
  opts.host = host;
  opts.port = static_cast<std::uint16_t>(port);
  if (transport == "tcp") {
    opts.transport = wire::Transport::kTcp;
  } else if (transport != "ws") {
    throw std::invalid_argument("--transport must be ws or tcp");
  }
  wire::Server server(opts);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on " << host << ":" << server.port() << " (" << transport << ")" << std::endl;
  server.run();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"StreetLearn environment tools"};
  app.require_subcommand(1);

  synthcity::CityParams gen_params;
  std::string gen_out;
  bool no_images = false;
  auto* gen = app.add_subcommand("generate", "Generate a synthetic city as an slpack");
  add_city_options(gen, gen_params);
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_flag("--no-images", no_images, "Skip PNGs; panoramas are rendered on demand");

  std::string carve_in, carve_out, center, bbox, polygon;
  int depth = 0;
  auto* carve = app.add_subcommand("carve", "Cut a region out of a graph");
  carve->add_option("--graph", carve_in, "Input slpack")->required();
  carve->add_option("--out", carve_out, "Output slpack")->required();
  carve->add_option("--bfs-center", center, "BFS center pano id");
  carve->add_option("--depth", depth, "BFS depth in hops");
  carve->add_option("--bbox", bbox, "min_lat,min_lng,max_lat,max_lng");
  carve->add_option("--polygon", polygon, "lat,lng;lat,lng;...");

  std::string stats_graph;
  auto* stats = app.add_subcommand("stats", "Print graph statistics");
  stats->add_option("--graph", stats_graph, "Input slpack")->required();

  BenchArgs bench_args;
  bench_args.city.blocks_x = bench_args.city.blocks_y = 18;
  bench_args.city.irregularity = 0.3;
  bench_args.city.pano_height = 128;
  auto* bench = app.add_subcommand("oracle-bench", "Run the shortest-path oracle on courier episodes");
  bench->add_option("--graph", bench_args.graph, "Input slpack; omit to use an in-memory city");
  add_city_options(bench, bench_args.city);
  bench->add_option("--episodes", bench_args.episodes, "Episodes");
  bench->add_option("--episode-length", bench_args.episode_length, "Steps per episode");
  bench->add_option("--frame-size", bench_args.frame_size, "Observation size in pixels");
  bench->add_option("--agent", bench_args.agent, "oracle or random");
  bench->add_option("--env-seed", bench_args.seed, "Environment seed");
  bench->add_option("--cache-mb", bench_args.cache_mb, "Panorama cache budget in MiB");
  bench->add_option("--game-config", bench_args.game_config, "Courier game config as JSON");
  bench->add_flag("--json", bench_args.json, "Print the report as JSON");

  std::string host = "127.0.0.1", transport = "ws", data_dir;
  int port = 8765;
  auto* serve = app.add_subcommand("play-server", "Serve environments to remote clients");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port, 0 for any");
  serve->add_option("--transport", transport, "ws or tcp");
  serve->add_option("--data", data_dir, "Directory relative graph paths are resolved against");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_generate(gen_params, gen_out, no_images);
    if (*carve) return cmd_carve(carve_in, carve_out, center, depth, bbox, polygon);
    if (*stats) return cmd_stats(stats_graph);
    if (*bench) return cmd_oracle_bench(bench_args);
    if (*serve) return cmd_play_server(host, port, transport, data_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
