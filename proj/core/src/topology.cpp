#include "cachecast/topology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cachecast {

void CellLayout::validate() const {
  if (!(cell_radius > 0.0)) throw std::invalid_argument("cell_radius must be > 0");
  if (!(pathloss_exponent > 0.0))
    throw std::invalid_argument("pathloss_exponent must be > 0");
  for (std::size_t i = 0; i < cache_nodes.size(); ++i) {
    const auto& n = cache_nodes[i];
    if (!(n.service_radius > 0.0))
      throw std::invalid_argument("cache service_radius must be > 0");
    const double d = std::hypot(n.position.x, n.position.y);
    if (d + n.service_radius > cell_radius + 1e-9)
      throw std::invalid_argument("cache disk " + std::to_string(i) +
                                  " extends outside the cell");
    for (std::size_t j = i + 1; j < cache_nodes.size(); ++j) {
      const auto& m = cache_nodes[j];
      if (distance(n.position, m.position) < n.service_radius + m.service_radius - 1e-9)
        throw std::invalid_argument("cache disks " + std::to_string(i) + " and " +
                                    std::to_string(j) + " overlap");
    }
  }
}

void UserDistribution::validate(const CellLayout& layout) const {
  if (kind == Kind::Uniform) return;
  double total = background_mass;
  if (background_mass < -1e-12) throw std::invalid_argument("background_mass must be >= 0");
  for (const auto& z : zones) {
    if (!(z.radius > 0.0)) throw std::invalid_argument("hot zone radius must be > 0");
    if (z.mass < 0.0) throw std::invalid_argument("hot zone mass must be >= 0");
    const double d = std::hypot(z.center.x, z.center.y);
    if (d + z.radius > layout.cell_radius + 1e-9)
      throw std::invalid_argument("hot zone extends outside the cell");
    total += z.mass;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("user distribution masses must sum to 1");
}

double pathloss_gain(double dist, double exponent) {
  const double d = std::max(dist, 1.0);  // reference distance d0 = 1 m
  return std::pow(d, -exponent);
}

double pathloss_gain(const Point2& a, const Point2& b, double exponent) {
  return pathloss_gain(distance(a, b), exponent);
}

std::optional<std::size_t> coverage_region_of(const Point2& p, const CellLayout& layout) {
  for (std::size_t c = 0; c < layout.cache_nodes.size(); ++c) {
    if (in_disk(p, layout.cache_nodes[c].position, layout.cache_nodes[c].service_radius))
      return c;
  }
  return std::nullopt;
}

UserLocation sample_user(const UserDistribution& dist, const CellLayout& layout,
                         RandomStream& rng) {
  Point2 p;
  if (dist.kind == UserDistribution::Kind::Uniform) {
    p = rng.point_in_disk({0.0, 0.0}, layout.cell_radius);
  } else {
    double u = rng.uniform();
    const HotZone* chosen = nullptr;
    for (const auto& z : dist.zones) {
      if (u < z.mass) {
        chosen = &z;
        break;
      }
      u -= z.mass;
    }
    p = chosen ? rng.point_in_disk(chosen->center, chosen->radius)
               : rng.point_in_disk({0.0, 0.0}, layout.cell_radius);
  }
  return {p, coverage_region_of(p, layout)};
}

double coverage_probability(const UserDistribution& dist, const CellLayout& layout) {
  double covered = 0.0;
  const double cell_area = M_PI * layout.cell_radius * layout.cell_radius;
  for (const auto& n : layout.cache_nodes) {
    const double disk_area = M_PI * n.service_radius * n.service_radius;
    covered += disk_area / cell_area;  // background / uniform component
  }
  if (dist.kind == UserDistribution::Kind::Uniform) return covered;

  double p = dist.background_mass * covered;
  for (const auto& z : dist.zones) {
    // Zone draws hit a cache disk with probability area(zone ∩ disk)/area(zone).
    // Exact only when each zone is disjoint from or contained in each disk;
    // experiment configs keep zones aligned with cache disks or clear of them.
    double frac = 0.0;
    for (const auto& n : layout.cache_nodes) {
      const double d = distance(z.center, n.position);
      if (d + z.radius <= n.service_radius + 1e-9) {
        frac += 1.0;  // zone inside disk
      } else if (d + n.service_radius <= z.radius + 1e-9) {
        frac += (n.service_radius * n.service_radius) / (z.radius * z.radius);
      } else if (d >= z.radius + n.service_radius) {
        // disjoint: contributes nothing
      } else {
        throw std::invalid_argument(
            "coverage_probability: hot zone partially overlaps a cache disk; "
            "no closed form");
      }
    }
    p += z.mass * std::min(frac, 1.0);
  }
  return p;
}

std::vector<CacheNode> place_caches_annulus(std::size_t count, double service_radius,
                                            double r_min, double r_max,
                                            double cell_radius, std::uint64_t seed,
                                            int max_attempts) {
  if (r_max + service_radius > cell_radius + 1e-9)
    throw std::invalid_argument("annulus outer radius leaves no room for service disks");
  if (r_min > r_max) throw std::invalid_argument("annulus r_min > r_max");
  RandomStream rng(seed);
  std::vector<CacheNode> nodes;
  nodes.reserve(count);
  int attempts = 0;
  while (nodes.size() < count) {
    if (++attempts > max_attempts)
      throw std::runtime_error(
          "place_caches_annulus: could not place disjoint cache disks; "
          "reduce count or service radius");
    const double r = std::sqrt(rng.uniform(r_min * r_min, r_max * r_max));
    const double a = rng.uniform(0.0, 2.0 * M_PI);
    const Point2 p{r * std::cos(a), r * std::sin(a)};
    bool ok = true;
    for (const auto& n : nodes) {
      if (distance(p, n.position) < 2.0 * service_radius) {
        ok = false;
        break;
      }
    }
    if (ok) nodes.push_back({p, service_radius});
  }
  return nodes;
}

}  // namespace cachecast
