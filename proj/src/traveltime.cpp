#include "vaxalloc/traveltime.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "vaxalloc/errors.hpp"

namespace vaxalloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
  std::size_t to;
  double minutes;
};

class Graph {
 public:
  Graph(const RoadNetwork& network, const SpeedModel& speeds) : adjacency_(network.nodes.size()) {
    for (std::size_t i = 0; i < network.nodes.size(); ++i) index_.emplace(network.nodes[i], i);
    for (const auto& e : network.edges) {
      const std::size_t a = index_of(e.endpoint_a);
      const std::size_t b = index_of(e.endpoint_b);
      const double t = edge_time(e.length_km, e.surface, speeds);
      adjacency_[a].push_back({b, t});
      adjacency_[b].push_back({a, t});
    }
  }

  std::size_t index_of(std::string_view node) const {
    const auto it = index_.find(std::string(node));
    if (it == index_.end()) throw DomainError("unknown network node '" + std::string(node) + "'");
    return it->second;
  }

  std::vector<double> dijkstra(std::size_t source) const {
    std::vector<double> dist(adjacency_.size(), kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (const Arc& arc : adjacency_[v]) {
        const double candidate = d + arc.minutes;
        if (candidate < dist[arc.to]) {
          dist[arc.to] = candidate;
          queue.push({candidate, arc.to});
        }
      }
    }
    return dist;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<Arc>> adjacency_;
};

}  // namespace

void SpeedModel::validate() const {
  if (!(metalled_kmh > 0.0) || !(unmetalled_kmh > 0.0) || !std::isfinite(metalled_kmh) ||
      !std::isfinite(unmetalled_kmh)) {
    throw DomainError("road speeds must be positive");
  }
}

double TravelTimeMatrix::at(std::string_view centre_id, std::string_view union_council_id) const {
  for (std::size_t c = 0; c < centre_ids.size(); ++c) {
    if (centre_ids[c] != centre_id) continue;
    for (std::size_t u = 0; u < union_council_ids.size(); ++u) {
      if (union_council_ids[u] == union_council_id) return at(c, u);
    }
  }
  throw MissingEntry("no travel time for (" + std::string(centre_id) + ", " + std::string(union_council_id) + ")");
}

double edge_time(double length_km, Surface surface, const SpeedModel& speeds) {
  return length_km / speeds.speed(surface) * 60.0;
}

std::vector<double> shortest_times_from(const RoadNetwork& network, std::string_view from,
                                        const SpeedModel& speeds) {
  speeds.validate();
  const Graph graph(network, speeds);
  return graph.dijkstra(graph.index_of(from));
}

double shortest_time(const RoadNetwork& network, std::string_view from, std::string_view to,
                     const SpeedModel& speeds) {
  speeds.validate();
  const Graph graph(network, speeds);
  const std::size_t target = graph.index_of(to);
  const double t = graph.dijkstra(graph.index_of(from))[target];
  if (t == kInf) throw Unreachable(std::string(from), std::string(to));
  return t;
}

TravelTimeMatrix build_matrix(const District& district, const SpeedModel& speeds, unsigned workers) {
  speeds.validate();
  const Graph graph(district.network, speeds);

  TravelTimeMatrix matrix;
  for (const auto& c : district.centres) matrix.centre_ids.push_back(c.id);
  for (const auto& u : district.union_councils) matrix.union_council_ids.push_back(u.id);
  const std::size_t n_centres = district.centres.size();
  const std::size_t n_ucs = district.union_councils.size();
  matrix.minutes.assign(n_centres * n_ucs, 0.0);

  std::vector<std::size_t> uc_nodes;
  for (const auto& u : district.union_councils) uc_nodes.push_back(graph.index_of(u.network_node));

  auto fill_row = [&](std::size_t c) {
    const auto dist = graph.dijkstra(graph.index_of(district.centres[c].network_node));
    for (std::size_t u = 0; u < n_ucs; ++u) matrix.minutes[c * n_ucs + u] = dist[uc_nodes[u]];
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_centres));
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_centres; ++c) fill_row(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < n_centres; c = next++) fill_row(c);
      });
    }
  }

  for (std::size_t c = 0; c < n_centres; ++c) {
    for (std::size_t u = 0; u < n_ucs; ++u) {
      if (matrix.minutes[c * n_ucs + u] == kInf) {
        throw Unreachable(district.centres[c].network_node, district.union_councils[u].network_node);
      }
    }
  }
  return matrix;
}

std::string matrix_to_csv(const TravelTimeMatrix& matrix) {
  std::ostringstream out;
  out << "centre";
  for (const auto& u : matrix.union_council_ids) out << ',' << u;
  out << '\n';
  char buf[64];
  for (std::size_t c = 0; c < matrix.centre_ids.size(); ++c) {
    out << matrix.centre_ids[c];
    for (std::size_t u = 0; u < matrix.union_council_ids.size(); ++u) {
      std::snprintf(buf, sizeof buf, ",%.2f", matrix.at(c, u));
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace vaxalloc
