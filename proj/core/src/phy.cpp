#include "cachecast/phy.hpp"

#include <cmath>

namespace cachecast {

namespace {
constexpr double kEulerGamma = 0.577215664901532860606512090082;
constexpr double kLn2 = 0.693147180559945309417232121458;
}  // namespace

void PhyConfig::validate() const {
  if (num_antennas < 1) throw std::invalid_argument("num_antennas must be >= 1");
  if (!(stbc_rate > 0.0) || stbc_rate > 1.0)
    throw std::invalid_argument("stbc_rate must be in (0, 1]");
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be > 0");
  if (!(peak_power > 0.0)) throw std::invalid_argument("peak_power must be > 0");
  if (symbol_weight < 0.0) throw std::invalid_argument("symbol_weight must be >= 0");
}

void LinkState::validate() const {
  if (!(pathloss > 0.0)) throw std::invalid_argument("pathloss must be > 0");
  if (!(shadowing > 0.0)) throw std::invalid_argument("shadowing must be > 0");
  if (interference < 0.0) throw std::invalid_argument("interference must be >= 0");
}

double lambert_w(double x) {
  if (std::isnan(x) || x < 0.0)
    throw std::domain_error("lambert_w: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  // Initial guess: series near 0, asymptotic log form for large x.
  double w;
  if (x < 1.0) {
    w = x * (1.0 - x + 1.5 * x * x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(std::max(l1, 1e-300));
    w = (l1 > 1.0) ? l1 - l2 + l2 / l1 : 0.5;
  }

  // Halley iteration on f(w) = w e^w - x.
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double digamma_int(int n) {
  if (n < 1) throw std::domain_error("digamma_int: argument must be >= 1");
  double h = 0.0;
  for (int k = 1; k < n; ++k) h += 1.0 / k;
  return -kEulerGamma + h;
}

double theta(const LinkState& link, const PhyConfig& cfg) {
  link.validate();
  const double mean_gain = link.gain();
  const double denom = cfg.num_antennas * (cfg.noise_power + link.interference);
  return (digamma_int(cfg.num_antennas) + std::log(mean_gain) - std::log(denom)) / kLn2;
}

double symbol_rate(double theta_value, double power, const PhyConfig& cfg) {
  return cfg.stbc_rate * (theta_value + std::log2(power));
}

bool link_feasible(double theta_value, const PhyConfig& cfg) {
  return theta_value + std::log2(cfg.peak_power) > 0.0;
}

double decode_threshold_symbols(double theta_value, double info_bits,
                                double power, const PhyConfig& cfg) {
  const double rate = symbol_rate(theta_value, power, cfg);
  if (!(rate > 0.0))
    throw std::domain_error("decode_threshold_symbols: nonpositive rate at this power");
  return info_bits / rate;
}

double decode_threshold_symbols(const SegmentDemand& demand, double power,
                                const PhyConfig& cfg) {
  return decode_threshold_symbols(theta(demand.link, cfg), demand.info_bits, power, cfg);
}

TxPlan optimal_transmission(double theta_value, double info_bits,
                            const PhyConfig& cfg) {
  if (!(info_bits > 0.0))
    throw std::invalid_argument("optimal_transmission: info_bits must be > 0");
  if (!link_feasible(theta_value, cfg))
    throw std::domain_error(
        "optimal_transmission: infeasible link (theta + log2 P_B <= 0)");

  const double w = cfg.symbol_weight;
  double power;
  if (w > 0.0) {
    const double log_arg = theta_value * kLn2 + std::log(w) - 1.0;
    double lw;
    if (log_arg > 700.0) {
      // 2^theta w / e overflows a double; solve W + ln W = ln x by Newton
      // in log space instead.
      lw = log_arg - std::log(log_arg);
      for (int it = 0; it < 8; ++it) {
        const double g = lw + std::log(lw) - log_arg;
        lw -= g * lw / (lw + 1.0);
      }
    } else {
      lw = lambert_w(std::exp(log_arg));
    }
    power = w / lw;
  } else {
    // lim_{w->0+} w / W(2^theta w / e) = e * 2^{-theta}.
    power = M_E * std::exp2(-theta_value);
  }
  if (power > cfg.peak_power) power = cfg.peak_power;

  TxPlan plan;
  plan.power = power;
  plan.symbols = decode_threshold_symbols(theta_value, info_bits, power, cfg);
  return plan;
}

TxPlan optimal_transmission(const SegmentDemand& demand, const PhyConfig& cfg) {
  return optimal_transmission(theta(demand.link, cfg), demand.info_bits, cfg);
}

double optimal_cost(double theta_value, double info_bits, const PhyConfig& cfg) {
  return optimal_transmission(theta_value, info_bits, cfg)
      .weighted_cost(cfg.symbol_weight);
}

}  // namespace cachecast
