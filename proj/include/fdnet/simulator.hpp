#pragma once

/// \file simulator.hpp
/// Monte Carlo ground truth for the marked Poisson network.
///
/// The typical receiver sits at the origin with its transmitter at (R, 0).
/// Other links are drawn from a PPP of density lambda restricted to a disk
/// whose radius bounds the neglected far-field interference, each with an
/// independent uniform partner angle and state. Fading is unit-mean
/// exponential, fresh per trial and per transmitter.
///
/// Every trial draws from its own generator seeded from (seed, stream,
/// trial), so estimates are bit-identical under any thread count.

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fdnet/model.hpp"
#include "fdnet/parallel.hpp"

namespace fdnet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class LinkState : std::uint8_t { Silent = 0, HD = 1, FD = 2 };

struct MarkedLink {
  Point2 position;
  Point2 mark_position;
  LinkState state = LinkState::Silent;
};

struct SimConfig {
  std::size_t trials = 100'000;
  std::uint64_t seed = 1;
  double truncation_epsilon = 1e-3;
  double confidence_level = 0.99;
  /// Debug switch: when false, FD interferers radiate from x only, which
  /// turns the pair process into an independent thinning.
  bool pair_interference = true;
};

struct EstimateWithCI {
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t trials = 0;

  bool low_trial_count() const noexcept { return trials <= 100; }
};

using TrialRng = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double unit_exponential(TrialRng& rng) {
  return std::exponential_distribution<double>(1.0)(rng);
}

inline double unit_uniform(TrialRng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double normal_quantile_two_sided(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * confidence);
}

}  // namespace detail

/// Generator for one trial of one named stream; independent of scheduling.
inline TrialRng trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  const std::uint64_t a = detail::splitmix64(seed ^ detail::splitmix64(stream));
  return TrialRng(detail::splitmix64(a ^ detail::splitmix64(trial + 0x632BE59BD9B4E019ULL)));
}

/// Radius beyond which the mean interference, scaled by theta R^alpha, is
/// below epsilon:  2 pi lambda (p1 + 2 p2) Rw^(2 - alpha) / (alpha - 2).
/// Returns 0 when no link transmits.
inline double window_radius(const NetworkConfig& cfg, const DuplexMix& mix, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("window_radius: epsilon must be positive");
  const double alpha = cfg.alpha();
  if (!(alpha > 2.0)) throw std::domain_error("window_radius: alpha must exceed 2");
  const double emitters = cfg.lambda() * (mix.p1() + 2.0 * mix.p2());
  if (emitters == 0.0) return 0.0;
  const double scale = 2.0 * std::numbers::pi * emitters * cfg.normalized_threshold() /
                       ((alpha - 2.0) * epsilon);
  return std::pow(scale, 1.0 / (alpha - 2.0));
}

/// Streams the links of one PPP realization in the disk of the given radius,
/// nearest first. Radii come from cumulative unit-exponential area arrivals,
/// so the count is Poisson(lambda pi radius^2) and positions are uniform.
/// The visitor returns false to stop early.
template <class Visitor>
void for_each_link(const NetworkConfig& cfg, const DuplexMix& mix, double radius,
                   TrialRng& rng, Visitor&& visit) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double max_area = std::numbers::pi * radius * radius;
  const double R = cfg.link_distance();
  double area = 0.0;
  while (true) {
    area += detail::unit_exponential(rng) / cfg.lambda();
    if (area > max_area) return;
    const double r = std::sqrt(area / std::numbers::pi);
    const double angle = two_pi * detail::unit_uniform(rng);
    const double u = detail::unit_uniform(rng);
    const double mark_angle = two_pi * detail::unit_uniform(rng);

    MarkedLink link;
    link.position = {r * std::cos(angle), r * std::sin(angle)};
    link.mark_position = {link.position.x + R * std::cos(mark_angle),
                          link.position.y + R * std::sin(mark_angle)};
    if (u < mix.p1()) {
      link.state = LinkState::HD;
    } else if (u < mix.p1() + mix.p2()) {
      link.state = LinkState::FD;
    }
    if (!visit(link)) return;
  }
}

inline std::vector<MarkedLink> sample_network(const NetworkConfig& cfg, const DuplexMix& mix,
                                              double radius, TrialRng& rng) {
  if (!(radius > 0.0)) throw std::invalid_argument("sample_network: radius must be positive");
  std::vector<MarkedLink> links;
  for_each_link(cfg, mix, radius, rng, [&](const MarkedLink& link) {
    links.push_back(link);
    return true;
  });
  return links;
}

namespace detail {

inline double path_gain(const Point2& p, double alpha) {
  return std::pow(p.x * p.x + p.y * p.y, -0.5 * alpha);
}

}  // namespace detail

/// SIR at the origin for the typical link (transmitter at (R, 0)) in the
/// given mode, i.e. h R^-alpha / (sum of faded interference + beta/K [FD]).
/// Returns +infinity when the denominator is zero.
inline double realize_sir(LinkMode mode, const std::vector<MarkedLink>& network,
                          const NetworkConfig& cfg, const SelfInterferenceModel& si,
                          TrialRng& rng, bool pair_interference = true) {
  if (mode == LinkMode::Unconditional) {
    throw std::invalid_argument("realize_sir: mode must be HD or FD");
  }
  const double alpha = cfg.alpha();
  const double signal = detail::unit_exponential(rng) * std::pow(cfg.link_distance(), -alpha);
  double interference = mode == LinkMode::FD ? si.beta() / si.K() : 0.0;
  for (const auto& link : network) {
    if (link.state == LinkState::Silent) continue;
    interference += detail::unit_exponential(rng) * detail::path_gain(link.position, alpha);
    if (link.state == LinkState::FD && pair_interference) {
      interference += detail::unit_exponential(rng) * detail::path_gain(link.mark_position, alpha);
    }
  }
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

namespace detail {

// One trial: streams the network nearest-first and stops as soon as the
// accumulated interference rules out success. Beta enters only through the
// budget, so the random draws do not depend on it.
inline bool trial_succeeds(LinkMode mode, const NetworkConfig& cfg, const DuplexMix& mix,
                           const SelfInterferenceModel& si, double radius, bool pair_interference,
                           TrialRng& rng) {
  const double alpha = cfg.alpha();
  const double signal = unit_exponential(rng) * std::pow(cfg.link_distance(), -alpha);
  const double self = mode == LinkMode::FD ? si.beta() / si.K() : 0.0;
  const double budget = signal / cfg.theta() - self;
  if (!(budget > 0.0)) return false;
  if (radius == 0.0) return true;
  double interference = 0.0;
  bool failed = false;
  for_each_link(cfg, mix, radius, rng, [&](const MarkedLink& link) {
    if (link.state == LinkState::Silent) return true;
    interference += unit_exponential(rng) * path_gain(link.position, alpha);
    if (link.state == LinkState::FD && pair_interference) {
      interference += unit_exponential(rng) * path_gain(link.mark_position, alpha);
    }
    failed = interference >= budget;
    return !failed;
  });
  return !failed;
}

inline constexpr std::size_t kTrialBlock = 1024;

// Counts successes over all trials; per-block integer counts summed in
// block order make the result independent of the worker count.
template <class TrialFn>
std::size_t count_successes(std::size_t trials, TrialFn&& trial) {
  const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::size_t> counts(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(trials, (b + 1) * kTrialBlock);
    std::size_t c = 0;
    for (std::size_t t = b * kTrialBlock; t < end; ++t) c += trial(t) ? 1 : 0;
    counts[b] = c;
  });
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

}  // namespace detail

/// Wilson score interval for `successes` out of `trials`, scaled by `weight`.
inline EstimateWithCI wilson_estimate(std::size_t successes, std::size_t trials,
                                      double confidence, double weight = 1.0) {
  if (trials == 0) throw std::invalid_argument("wilson_estimate: trials must be >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z = detail::normal_quantile_two_sided(confidence);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  EstimateWithCI est;
  est.estimate = weight * p;
  est.std_error = weight * std::sqrt(p * (1.0 - p) / n);
  est.ci_low = weight * std::max(0.0, std::min(p, centre - half));
  est.ci_high = weight * std::min(1.0, std::max(p, centre + half));
  est.trials = trials;
  return est;
}

inline constexpr std::uint64_t kStreamHD = 1;
inline constexpr std::uint64_t kStreamFD = 2;
inline constexpr std::uint64_t kStreamUnconditional = 3;

/// Monte Carlo estimate of P(SIR > theta). In Unconditional mode each trial
/// first picks the typical link's state (HD w.p. p1/(p1+p2)) and the mean
/// is weighted by p1 + p2, since a silent link never succeeds.
inline EstimateWithCI estimate_ps(const NetworkConfig& cfg, const DuplexMix& mix,
                                  const SelfInterferenceModel& si, LinkMode mode,
                                  const SimConfig& sim, std::uint64_t stream = 0) {
  if (sim.trials == 0) throw std::invalid_argument("estimate_ps: trials must be >= 1");
  const double radius = window_radius(cfg, mix, sim.truncation_epsilon);
  if (stream == 0) {
    stream = mode == LinkMode::HD ? kStreamHD : mode == LinkMode::FD ? kStreamFD
                                                                     : kStreamUnconditional;
  }

  if (mode == LinkMode::Unconditional) {
    const double active = mix.active();
    if (active == 0.0) return wilson_estimate(0, sim.trials, sim.confidence_level, 0.0);
    const double hd_share = mix.p1() / active;
    const std::size_t wins = detail::count_successes(sim.trials, [&](std::size_t t) {
      TrialRng rng = trial_rng(sim.seed, stream, t);
      const LinkMode typical =
          detail::unit_uniform(rng) < hd_share ? LinkMode::HD : LinkMode::FD;
      return detail::trial_succeeds(typical, cfg, mix, si, radius, sim.pair_interference, rng);
    });
    return wilson_estimate(wins, sim.trials, sim.confidence_level, active);
  }

  const std::size_t wins = detail::count_successes(sim.trials, [&](std::size_t t) {
    TrialRng rng = trial_rng(sim.seed, stream, t);
    return detail::trial_succeeds(mode, cfg, mix, si, radius, sim.pair_interference, rng);
  });
  return wilson_estimate(wins, sim.trials, sim.confidence_level);
}

/// Monte Carlo throughput L (lambda1 ps_HD + 2 lambda2 ps_FD), L = ln(1 + theta),
/// with the two conditional probabilities estimated on independent streams.
/// The interval is normal-approximation, estimate +- z * SE, clipped at 0.
inline EstimateWithCI estimate_throughput(const LinkDensities& dens, const NetworkConfig& cfg,
                                          const SelfInterferenceModel& si,
                                          const SimConfig& sim) {
  dens.validate();
  if (sim.trials == 0) throw std::invalid_argument("estimate_throughput: trials must be >= 1");
  const double total = dens.lambda1 + dens.lambda2;
  EstimateWithCI out;
  out.trials = sim.trials;
  if (total == 0.0) return out;

  const NetworkConfig net = cfg.with_lambda(total);
  const DuplexMix mix(0.0, dens.lambda1 / total, dens.lambda2 / total);
  const double spectral = std::log1p(cfg.theta());

  double value = 0.0;
  double variance = 0.0;
  if (dens.lambda1 > 0.0) {
    const auto hd = estimate_ps(net, mix, si, LinkMode::HD, sim);
    const double w = dens.lambda1 * spectral;
    value += w * hd.estimate;
    variance += w * w * hd.std_error * hd.std_error;
  }
  if (dens.lambda2 > 0.0) {
    const auto fd = estimate_ps(net, mix, si, LinkMode::FD, sim);
    const double w = 2.0 * dens.lambda2 * spectral;
    value += w * fd.estimate;
    variance += w * w * fd.std_error * fd.std_error;
  }
  const double z = detail::normal_quantile_two_sided(sim.confidence_level);
  out.estimate = value;
  out.std_error = std::sqrt(variance);
  out.ci_low = std::max(0.0, value - z * out.std_error);
  out.ci_high = value + z * out.std_error;
  return out;
}

}  // namespace fdnet
