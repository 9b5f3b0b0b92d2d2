#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "vaxalloc/district.hpp"
#include "vaxalloc/errors.hpp"

namespace vaxalloc {
namespace {

// Maps raw mt19937_64 output directly; the std distributions are
// implementation-defined and would tie a seed to one standard library.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::string padded(const char* prefix, int value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%02d", prefix, value);
  return buf;
}

}  // namespace

District generate_synthetic(std::uint64_t seed, const SyntheticShape& shape) {
  if (shape.n_localities < 1 || shape.n_union_councils < 1 || shape.n_centres < 1) {
    throw DomainError("synthetic shape counts must be >= 1");
  }
  if (shape.infant_min < 0 || shape.preschool_min < 0 || shape.infant_max < shape.infant_min ||
      shape.preschool_max < shape.preschool_min) {
    throw DomainError("synthetic population ranges must be non-negative and ordered");
  }

  Draw draw(seed);
  District d;
  d.name = "synthetic district (seed " + std::to_string(seed) + ")";

  const int n_loc = shape.n_localities;
  std::vector<Point> hubs(n_loc);
  const double ring = n_loc > 1 ? 14.0 : 0.0;
  for (int k = 0; k < n_loc; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n_loc;
    hubs[k] = {ring * std::cos(angle), ring * std::sin(angle)};
    d.localities.push_back({"L" + std::to_string(k + 1), "Locality " + std::to_string(k + 1)});
  }

  std::vector<Point> positions;
  auto scatter = [&](Point hub, double radius) {
    const double r = radius * std::sqrt(draw.unit());
    const double t = 2.0 * std::numbers::pi * draw.unit();
    return Point{hub.x + r * std::cos(t), hub.y + r * std::sin(t)};
  };

  for (int j = 0; j < shape.n_union_councils; ++j) {
    const int loc = j % n_loc;
    const Point p = scatter(hubs[loc], 16.0);
    const std::string id = padded("UC", j + 1);
    UnionCouncil uc{id, "Union council " + std::to_string(j + 1), d.localities[loc].id, "N-" + id, {}};
    uc.population.emplace_back(std::string(kInfant), draw.integer(shape.infant_min, shape.infant_max));
    uc.population.emplace_back(std::string(kPreschool), draw.integer(shape.preschool_min, shape.preschool_max));
    d.network.nodes.push_back(uc.network_node);
    positions.push_back(p);
    d.union_councils.push_back(std::move(uc));
  }
  for (int i = 0; i < shape.n_centres; ++i) {
    const int loc = i % n_loc;
    const Point p = scatter(hubs[loc], 6.0);
    const std::string id = padded("VC", i + 1);
    d.centres.push_back({id, "Vaccination centre " + std::to_string(i + 1), d.localities[loc].id, "N-" + id});
    d.network.nodes.push_back("N-" + id);
    positions.push_back(p);
  }

  // Prim's tree over straight-line distance keeps the network connected; each
  // node is then also joined to its two nearest neighbours.
  const std::size_t n = positions.size();
  std::set<std::pair<std::size_t, std::size_t>> links;
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (pick == n || best[v] < best[pick])) pick = v;
    }
    in_tree[pick] = true;
    if (step > 0) links.insert({std::min(pick, parent[pick]), std::max(pick, parent[pick])});
    for (std::size_t v = 0; v < n; ++v) {
      const double dist = distance(positions[pick], positions[v]);
      if (!in_tree[v] && dist < best[v]) {
        best[v] = dist;
        parent[v] = pick;
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> order;
    for (std::size_t w = 0; w < n; ++w) {
      if (w != v) order.push_back(w);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = distance(positions[v], positions[a]);
      const double db = distance(positions[v], positions[b]);
      return da != db ? da < db : a < b;
    });
    for (std::size_t k = 0; k < std::min<std::size_t>(2, order.size()); ++k) {
      links.insert({std::min(v, order[k]), std::max(v, order[k])});
    }
  }
  for (const auto& [a, b] : links) {
    const double detour = 1.15 + 0.25 * draw.unit();
    // Coincident points still need a positive road length.
    const double km = std::max(0.5, std::round(distance(positions[a], positions[b]) * detour * 10.0) / 10.0);
    const Surface surface = draw.unit() < 0.3 ? Surface::Unmetalled : Surface::Metalled;
    d.network.edges.push_back({d.network.nodes[a], d.network.nodes[b], km, surface});
  }

  validate(d);
  return d;
}

}  // namespace vaxalloc
