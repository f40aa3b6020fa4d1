#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cachecast/phy.hpp"
#include "cachecast/rng.hpp"
#include "cachecast/topology.hpp"

namespace cachecast {

/// Catalog entry: Poisson request intensity within a finite lifetime, payload
/// split into equal-size segments.
struct FileSpec {
  int file_id = 0;
  double arrival_rate = 1.0;   // lambda_f, requests/second, > 0
  double lifetime = 1.0;       // T_f, seconds, > 0
  double start_time = 0.0;     // t_f, seconds
  int num_segments = 1;        // N_f >= 1
  double segment_bits = 1.0;   // R_f^I > 0

  double end_time() const { return start_time + lifetime; }
  double mean_requests() const { return arrival_rate * lifetime; }
  void validate() const;
};

/// Log-normal shadowing with a symmetric dB clamp. The clamp bounds the worst
/// draw so peak-power feasibility can be guaranteed at config validation.
struct ShadowingModel {
  double sigma_db = 8.0;
  double clamp_sigmas = 4.0;

  double min_gain() const;
  double draw(RandomStream& rng) const;
  void validate() const;
};

/// One file request: arrival instant, user position, and the quasi-static
/// large-scale link states (user + every cache node) for this transmission.
struct RequestEvent {
  int file_id = 0;
  double arrival_time = 0.0;
  UserLocation user;
  LinkState user_link;
  std::vector<LinkState> cache_links;  // indexed by cache node
};

/// Poisson PMF (lambda T)^n e^{-lambda T} / n!, evaluated in the log domain.
double poisson_pmf(double mean, int n);

/// Smallest N with Poisson tail mass beyond N below `epsilon`.
int truncation_horizon(double mean, double epsilon);

/// One request draw at a given instant: user location plus fresh shadowing on
/// every link.
RequestEvent draw_request_event(const FileSpec& spec, double arrival_time,
                                const UserDistribution& dist,
                                const CellLayout& layout,
                                const ShadowingModel& shadowing,
                                double interference, RandomStream& rng);

/// Poisson number of arrivals over the file lifetime, i.i.d. arrival times
/// sorted ascending, fresh user location and shadowing draws per event.
std::vector<RequestEvent> generate_requests(const FileSpec& spec,
                                            const UserDistribution& dist,
                                            const CellLayout& layout,
                                            const ShadowingModel& shadowing,
                                            double interference,
                                            RandomStream& rng);

}  // namespace cachecast
