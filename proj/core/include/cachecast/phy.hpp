#pragma once

#include <stdexcept>

namespace cachecast {

/// Base-station physical-layer parameters.
///
/// Powers are linear watts; symbol_weight is the cost weight on the number of
/// transmission symbols (same currency as energy: weighted cost = P*N + w*N).
struct PhyConfig {
  int num_antennas = 8;        // N_T >= 1
  double stbc_rate = 0.5;      // alpha in (0, 1]
  double noise_power = 1e-13;  // sigma_z^2, watts
  double peak_power = 39.8;    // P_B, watts
  double symbol_weight = 1.0;  // w >= 0

  void validate() const;
};

/// Large-scale state of one BS->receiver link for one transmission event.
struct LinkState {
  double pathloss = 1.0;      // linear power gain, > 0
  double shadowing = 1.0;     // linear power gain, > 0
  double interference = 0.0;  // watts, >= 0

  double gain() const { return pathloss * shadowing; }
  void validate() const;
};

/// One segment to deliver: payload bits plus the link it must traverse.
struct SegmentDemand {
  double info_bits = 1.0;  // R^I, > 0
  LinkState link;
};

/// Closed-form transmission choice and its weighted cost.
struct TxPlan {
  double power = 0.0;    // watts, <= peak_power
  double symbols = 0.0;  // real-valued symbol count (rounded only by the
                         // simulation accounting, never inside the math)
  double energy() const { return power * symbols; }
  double weighted_cost(double symbol_weight) const {
    return energy() + symbol_weight * symbols;
  }
};

/// Principal-branch Lambert W on [0, inf): returns v with v*e^v = x.
/// Relative accuracy ~1e-15 (Halley iteration). Negative input is a domain
/// error; the scheduler only ever evaluates nonnegative arguments.
double lambert_w(double x);

/// Digamma at a positive integer: psi(n) = -gamma + H_{n-1}.
double digamma_int(int n);

/// Expected log2-SNR statistic of a link,
///   theta = E[log2(||h||^2 / (N_T (sigma^2 + I)))],
/// with ||h||^2 ~ Gamma(N_T, pathloss*shadowing). Evaluated in closed form
/// via the digamma function, so the scheduler sees no Monte Carlo noise.
double theta(const LinkState& link, const PhyConfig& cfg);

/// Per-symbol throughput under the high-SINR ergodic STBC model:
/// rate = alpha * (theta + log2 P). Negative values mean the link cannot be
/// served at that power.
double symbol_rate(double theta_value, double power, const PhyConfig& cfg);

/// True when the segment can be delivered at peak power at all.
bool link_feasible(double theta_value, const PhyConfig& cfg);

/// Minimal real symbol count so that N * alpha * (theta + log2 power) covers
/// the payload. Throws std::domain_error when the rate is nonpositive.
double decode_threshold_symbols(const SegmentDemand& demand, double power,
                                const PhyConfig& cfg);
double decode_threshold_symbols(double theta_value, double info_bits,
                                double power, const PhyConfig& cfg);

/// Weighted-cost-optimal (power, symbols) pair delivering `info_bits` to a
/// receiver with statistic `theta_value`:
///   P* = min{ w / W(2^theta w / e), P_B },   N* = R / (alpha (theta + log2 P*)).
/// For w = 0 the Lambert form degenerates 0/0; the continuous limit
/// P* = e * 2^{-theta} (the pure-energy optimum) is used instead.
/// Throws std::domain_error when theta + log2 P_B <= 0 (infeasible link).
TxPlan optimal_transmission(double theta_value, double info_bits,
                            const PhyConfig& cfg);
TxPlan optimal_transmission(const SegmentDemand& demand, const PhyConfig& cfg);

/// Weighted cost of the optimal plan; convenience for cost tables.
double optimal_cost(double theta_value, double info_bits, const PhyConfig& cfg);

}  // namespace cachecast
