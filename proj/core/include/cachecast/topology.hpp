#pragma once

#include <optional>
#include <vector>

#include "cachecast/geometry.hpp"
#include "cachecast/rng.hpp"

namespace cachecast {

struct CacheNode {
  Point2 position;
  double service_radius = 0.0;
};

/// Single-cell geometry: BS at the origin, disjoint cache coverage disks.
struct CellLayout {
  double cell_radius = 500.0;
  double pathloss_exponent = 3.5;
  std::vector<CacheNode> cache_nodes;

  std::size_t num_caches() const { return cache_nodes.size(); }

  /// Rejects overlapping or out-of-cell cache disks. Disks must lie fully
  /// inside the cell so coverage areas are exact disk areas.
  void validate() const;
};

/// Spatial law of requesting-user positions.
struct HotZone {
  Point2 center;
  double radius = 0.0;
  double mass = 0.0;  // probability of drawing from this zone
};

struct UserDistribution {
  enum class Kind { Uniform, HotzoneMixture };
  Kind kind = Kind::Uniform;
  std::vector<HotZone> zones;    // hotzone-mixture only
  double background_mass = 1.0;  // remaining mass, uniform over the cell

  void validate(const CellLayout& layout) const;

  /// Uniform law over the same cell; the learner's prior assumption.
  static UserDistribution uniform() { return {}; }
};

struct UserLocation {
  Point2 point;
  std::optional<std::size_t> serving_cache;  // none when in C_0
};

/// Distance-power-law gain with reference distance d0 = 1 m; distances below
/// d0 clamp to d0 so the gain never exceeds 1.
double pathloss_gain(const Point2& a, const Point2& b, double exponent);
double pathloss_gain(double dist, double exponent);

/// Index of the cache disk containing the point, or none. Boundary points
/// count as inside; ties (tangent disks) resolve to the lowest index.
std::optional<std::size_t> coverage_region_of(const Point2& p, const CellLayout& layout);

/// One i.i.d. user draw with its serving cache resolved.
UserLocation sample_user(const UserDistribution& dist, const CellLayout& layout,
                         RandomStream& rng);

/// Probability that a user draw lands inside some cache disk; exact under the
/// disjoint, fully-contained disk invariants.
double coverage_probability(const UserDistribution& dist, const CellLayout& layout);

/// Seeded cache placement: uniform angular positions on the [r_min, r_max]
/// annulus, rejected until disks are pairwise disjoint and inside the cell.
/// Throws std::runtime_error when no disjoint placement is found.
std::vector<CacheNode> place_caches_annulus(std::size_t count, double service_radius,
                                            double r_min, double r_max,
                                            double cell_radius, std::uint64_t seed,
                                            int max_attempts = 200000);

}  // namespace cachecast
