#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "streetlearn/panograph/shortest_path.hpp"
#include "streetlearn/panograph/slpack.hpp"
#include "test_util.hpp"

using namespace streetlearn;

namespace {

PanoRecord rec(const std::string& id, double lat, double lng, std::vector<std::string> nbs) {
  PanoRecord r;
  r.id = id;
  r.lat = lat;
  r.lng = lng;
  r.date = "2018-05-01";
  r.neighbors = std::move(nbs);
  return r;
}

void write_pack(const std::filesystem::path& root, const std::vector<std::string>& lines, int node_count) {
  std::filesystem::create_directories(root);
  spit(root / "manifest.json",
       "{\"format\":\"slpack\",\"version\":1,\"city\":\"t\",\"node_count\":" + std::to_string(node_count) +
           ",\"bounds\":{\"min_lat\":0,\"min_lng\":0,\"max_lat\":1,\"max_lng\":1}}");
  std::string body;
  for (const auto& l : lines) body += l + "\n";
  spit(root / "nodes.jsonl", body);
}

std::string node_line(const std::string& id, double lat, const std::string& nbs) {
  return "{\"id\":\"" + id + "\",\"lat\":" + std::to_string(lat) +
         ",\"lng\":-74.0,\"altitude\":0,\"pitch\":0,\"roll\":0,\"yaw\":0,\"date\":\"2018-01-01\",\"neighbors\":[" + nbs +
         "]}";
}

}  // namespace

TEST_SUITE("panograph") {
  TEST_CASE("build: minimal graph") {
    const StreetGraph g = StreetGraph::build({rec("A", 40.0, -74.0, {"B"}), rec("B", 40.0001, -74.0, {"A"})});
    CHECK(g.size() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.node(g.index_of("A")).image_ref == "A");
  }

  TEST_CASE("build: one-way listings are mirrored") {
    const StreetGraph g = StreetGraph::build({rec("A", 40.0, -74.0, {"B"}), rec("B", 40.0001, -74.0, {})});
    const auto& b = g.node(g.index_of("B"));
    CHECK(b.neighbors == std::vector<std::string>{"A"});
    CHECK(g.neighbors(g.index_of("B")).size() == 1);
    CHECK(g.num_edges() == 1);
  }

  TEST_CASE("build: invariant violations") {
    CHECK_THROWS_AS(StreetGraph::build({rec("", 0, 0, {})}), GraphError);
    CHECK_THROWS_AS(StreetGraph::build({rec("A", 0, 0, {}), rec("A", 1, 0, {})}), GraphError);
    CHECK_THROWS_AS(StreetGraph::build({rec("A", 91, 0, {})}), GraphError);
    CHECK_THROWS_AS(StreetGraph::build({rec("A", 0, 181, {})}), GraphError);
    CHECK_THROWS_AS(StreetGraph::build({rec("A", 0, 0, {"A"})}), GraphError);
    try {
      StreetGraph::build({rec("A", 0, 0, {"Z"})});
      FAIL("expected a dangling-id error");
    } catch (const GraphError& e) {
      CHECK(std::string(e.what()).find("Z") != std::string::npos);
      CHECK(std::string(e.what()).find("A") != std::string::npos);
    }
  }

  TEST_CASE("adjacency is symmetric and sorted") {
    Rng rng(5);
    const StreetGraph g = oracle::random_graph(rng, 300, 0.8, false);
    for (NodeIndex u = 0; u < static_cast<NodeIndex>(g.size()); ++u) {
      const auto nbs = g.neighbors(u);
      CHECK(std::is_sorted(nbs.begin(), nbs.end()));
      for (NodeIndex v : nbs) {
        const auto back = g.neighbors(v);
        CHECK(std::find(back.begin(), back.end(), u) != back.end());
      }
      const auto bearings = g.neighbor_bearings(u);
      for (std::size_t k = 0; k < nbs.size(); ++k) {
        CHECK(bearings[k] == initial_bearing_deg(g.position(u), g.position(nbs[k])));
      }
    }
    CHECK(g.component_count() == oracle::component_count(g));
  }

  TEST_CASE("spatial queries match brute force") {
    Rng rng(6);
    const StreetGraph g = oracle::random_graph(rng, 400, 0.5, true);
    for (int t = 0; t < 50; ++t) {
      const LatLng p{40.0 + rng.uniform(-0.002, 0.012), -74.0 + rng.uniform(-0.002, 0.012)};
      NodeIndex best = 0;
      for (NodeIndex i = 1; i < static_cast<NodeIndex>(g.size()); ++i) {
        if (haversine_m(p, g.position(i)) < haversine_m(p, g.position(best))) best = i;
      }
      CHECK(g.nearest(p) == best);
      const double r = rng.uniform(10, 400);
      std::vector<NodeIndex> expected;
      for (NodeIndex i = 0; i < static_cast<NodeIndex>(g.size()); ++i) {
        if (haversine_m(p, g.position(i)) <= r) expected.push_back(i);
      }
      CHECK(g.within_radius(p, r) == expected);
      const LatLngBounds box{p.lat - 0.002, p.lng - 0.003, p.lat + 0.002, p.lng + 0.003};
      std::vector<NodeIndex> inside;
      for (NodeIndex i = 0; i < static_cast<NodeIndex>(g.size()); ++i) {
        if (box.contains(g.position(i))) inside.push_back(i);
      }
      CHECK(g.within_bounds(box) == inside);
    }
  }

  TEST_CASE("slpack: load, mirror, dangling id") {
    TempDir tmp;
    write_pack(tmp / "ab", {node_line("A", 40.0, "\"B\""), node_line("B", 40.0001, "\"A\"")}, 2);
    StreetGraph g = load_graph(tmp / "ab");
    CHECK(g.size() == 2);
    CHECK(g.num_edges() == 1);

    write_pack(tmp / "oneway", {node_line("A", 40.0, "\"B\""), node_line("B", 40.0001, "")}, 2);
    g = load_graph(tmp / "oneway");
    CHECK(g.node(g.index_of("B")).neighbors == std::vector<std::string>{"A"});

    write_pack(tmp / "dangling", {node_line("A", 40.0, "\"Z\"")}, 1);
    try {
      load_graph(tmp / "dangling");
      FAIL("expected an error");
    } catch (const GraphError& e) {
      CHECK(std::string(e.what()).find("Z") != std::string::npos);
    }
  }

  TEST_CASE("slpack: malformed containers") {
    TempDir tmp;
    CHECK_THROWS_AS(load_graph(tmp / "missing"), GraphError);
    write_pack(tmp / "count", {node_line("A", 40.0, "")}, 3);
    CHECK_THROWS_AS(load_graph(tmp / "count"), GraphError);
    write_pack(tmp / "badline", {node_line("A", 40.0, ""), "{not json"}, 2);
    try {
      load_graph(tmp / "badline");
      FAIL("expected an error");
    } catch (const GraphError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::filesystem::create_directories(tmp / "badmanifest");
    spit(tmp / "badmanifest" / "manifest.json", "{\"format\":\"zip\"}");
    spit(tmp / "badmanifest" / "nodes.jsonl", "");
    CHECK_THROWS_AS(load_graph(tmp / "badmanifest"), GraphError);
    std::filesystem::create_directories(tmp / "nonodes");
    spit(tmp / "nonodes" / "manifest.json", "{\"format\":\"slpack\",\"version\":1,\"node_count\":0}");
    CHECK_THROWS_AS(load_graph(tmp / "nonodes"), GraphError);
  }

  TEST_CASE("slpack: save then load is the identity") {
    TempDir tmp;
    Rng rng(8);
    const StreetGraph g = oracle::random_graph(rng, 200, 0.7, false);
    save_graph(g, tmp / "rt", "roundtrip", nlohmann::json());
    const Slpack pack = load_slpack(tmp / "rt");
    CHECK(pack.manifest.city == "roundtrip");
    CHECK(pack.manifest.node_count == g.size());
    REQUIRE(pack.graph.size() == g.size());
    CHECK(pack.graph.num_edges() == g.num_edges());
    for (NodeIndex i = 0; i < static_cast<NodeIndex>(g.size()); ++i) {
      CHECK(pack.graph.node(i) == g.node(i));
    }
    // Field names and order are part of the format.
    const std::string first_line = slurp(tmp / "rt" / "nodes.jsonl").substr(0, 200);
    const std::vector<std::string> keys{"\"id\"", "\"lat\"", "\"lng\"", "\"altitude\"", "\"pitch\"",
                                        "\"roll\"", "\"yaw\"", "\"date\"", "\"neighbors\""};
    std::size_t pos = 0;
    for (const auto& k : keys) {
      const auto at = first_line.find(k, pos);
      CHECK(at != std::string::npos);
      pos = at;
    }
  }

  TEST_CASE("shortest paths: examples") {
    const StreetGraph line = oracle::line_graph({"A", "B", "C"});
    const ShortestPaths sp = shortest_paths_to(line, "C");
    CHECK(sp.hops(line.index_of("A")) == 2);
    CHECK(sp.hops(line.index_of("B")) == 1);
    CHECK(sp.hops(line.index_of("C")) == 0);
    CHECK(sp.path_from(line.index_of("A")) ==
          std::vector<NodeIndex>{line.index_of("A"), line.index_of("B"), line.index_of("C")});

    StreetGraph g = StreetGraph::build({rec("A", 40.0, -74.0, {"B"}), rec("B", 40.0001, -74.0, {}),
                                        rec("Z", 41.0, -74.0, {})});
    const ShortestPaths sz = shortest_paths_to(g, "A");
    CHECK_FALSE(sz.reachable(g.index_of("Z")));
    CHECK(sz.hops(g.index_of("Z")) == kUnreachable);
    CHECK(sz.next(g.index_of("Z")) == kNoNode);
    CHECK(sz.path_from(g.index_of("Z")).empty());
    CHECK_THROWS_AS(shortest_paths_to(g, "nope"), GraphError);
  }

  TEST_CASE("shortest paths: ties go to the smallest id") {
    // Square S-{P,Q}-G: both P and Q are one hop from G.
    const StreetGraph g = StreetGraph::build({rec("S", 40.0, -74.0, {"Q", "P"}), rec("P", 40.0001, -74.0, {"G"}),
                                              rec("Q", 40.0, -73.9999, {"G"}), rec("G", 40.0001, -73.9999, {})});
    const ShortestPaths sp = shortest_paths_to(g, "G");
    CHECK(g.node(sp.next(g.index_of("S"))).id == "P");
  }

  TEST_CASE("shortest paths equal Dijkstra on random graphs") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
      const StreetGraph g = oracle::random_graph(rng, 500, 0.3, t % 2 == 0);
      const auto goal = static_cast<NodeIndex>(rng.index(g.size()));
      const ShortestPaths sp = shortest_paths_to(g, goal);
      const auto ref = oracle::dijkstra_hops(g, goal);
      for (std::size_t v = 0; v < g.size(); ++v) {
        const std::int64_t got = sp.distance[v] == kUnreachable ? -1 : sp.distance[v];
        REQUIRE(got == ref[v]);
        const NodeIndex nx = sp.next_hop[v];
        if (ref[v] > 0) {
          REQUIRE(nx != kNoNode);
          CHECK(ref[static_cast<std::size_t>(nx)] == ref[v] - 1);
          // No smaller-id neighbor is also one hop closer.
          for (NodeIndex w : g.neighbors(static_cast<NodeIndex>(v))) {
            if (w < nx) CHECK(ref[static_cast<std::size_t>(w)] != ref[v] - 1);
          }
        } else {
          CHECK(nx == kNoNode);
        }
      }
    }
  }
}
