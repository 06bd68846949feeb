#pragma once

/// \file analytic.hpp
/// Interference functionals H and F, success probabilities and their
/// closed-form bounds, horizontal gaps and the FD-vs-HD SIR loss.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numbers>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

#include "fdnet/model.hpp"
#include "fdnet/quadrature.hpp"

namespace fdnet {

inline constexpr double kDefaultPairTolerance = 1e-9;

/// pair_F_unit returns 2H for theta below this multiple of the tolerance.
inline constexpr double kPairAsymptoticScale = 1e-4;

namespace detail {

inline void require_alpha(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw std::domain_error("path-loss exponent must exceed 2");
  }
}

// Integrand of the pair functional with the subtraction 2pi - (1-A)(2pi-B)
// rearranged to A(2pi - B) + B, which is cancellation-free for large r:
//   A = s / (r^alpha + s),   B = int_0^{2pi} s / (d^alpha + s) dphi,
//   d^2 = r^2 + R^2 + 2 r R cos(phi) = (r - R)^2 + 4 r R cos^2(phi / 2).
// The second form has no cancellation when r and R are both large.
inline double pair_radial_integrand(double r, double s, double alpha, double R,
                                    double inner_tol) {
  const double half_alpha = 0.5 * alpha;
  const double diff2 = (r - R) * (r - R);
  auto angular = [&](double phi) {
    const double c = std::cos(0.5 * phi);
    const double d2 = diff2 + 4.0 * r * R * c * c;
    return s / (std::pow(d2, half_alpha) + s);
  };
  QuadratureOptions opts;
  opts.rel_tol = inner_tol;
  opts.abs_tol = 1e-300;
  // Even in phi about 0, so integrate half the period.
  const double b = 2.0 * integrate_finite(angular, 0.0, std::numbers::pi, opts).value;
  const double a = s / (std::pow(r, alpha) + s);
  return (a * (2.0 * std::numbers::pi - b) + b) * r;
}

inline double pair_integral(double s, double alpha, double R, double rel_tol) {
  const double inner_tol = std::max(1e-2 * rel_tol, 1e-13);
  auto radial = [&](double r) { return pair_radial_integrand(r, s, alpha, R, inner_tol); };
  // Beyond the knee at s^(1/alpha) and the partner offset R the integrand
  // decays like r^(1 - alpha).
  const PowerTail tail{alpha - 1.0, 2.0 * (std::pow(s, 1.0 / alpha) + R)};
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate_semi_infinite(radial, 0.0, tail, opts).value;
}

struct PairKey {
  std::uint64_t theta;
  std::uint64_t alpha;
  std::uint64_t tol;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    std::uint64_t h = k.theta * 0x9E3779B97F4A7C15ULL;
    h ^= k.alpha + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= k.tol + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class PairCache {
 public:
  std::optional<double> find(const PairKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const PairKey& key, double value) {
    std::unique_lock lock(mutex_);
    values_.emplace(key, value);
  }
  void clear() {
    std::unique_lock lock(mutex_);
    values_.clear();
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return values_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<PairKey, double, PairKeyHash> values_;
};

inline PairCache& pair_cache() {
  static PairCache cache;
  return cache;
}

}  // namespace detail

/// H(s, alpha) = pi^2 delta s^delta / sin(pi delta), delta = 2/alpha.
inline double spectral_H(double s, double alpha) {
  detail::require_alpha(alpha);
  if (!(s >= 0.0)) throw std::domain_error("spectral_H: s must be >= 0");
  const double delta = 2.0 / alpha;
  return std::numbers::pi * std::numbers::pi * delta * std::pow(s, delta) /
         std::sin(std::numbers::pi * delta);
}

/// The pair functional F(s, alpha, R) evaluated literally as the double
/// integral over (r, phi) with the given s and R. Not cached.
inline double pair_F_direct(double s, double alpha, double R,
                            double rel_tol = kDefaultPairTolerance) {
  detail::require_alpha(alpha);
  if (!(s >= 0.0)) throw std::domain_error("pair_F: s must be >= 0");
  if (!(R > 0.0)) throw std::domain_error("pair_F: R must be positive");
  if (s == 0.0) return 0.0;
  return detail::pair_integral(s, alpha, R, rel_tol);
}

/// F at unit link distance, in the form F(theta, alpha, 1) =
/// theta^delta * F(1, alpha, theta^(-1/alpha)) so the knee of the radial
/// integrand always sits at r = 1. Memoized on exact (theta, alpha, tol).
inline double pair_F_unit(double theta, double alpha, double rel_tol = kDefaultPairTolerance) {
  detail::require_alpha(alpha);
  if (!(theta >= 0.0)) throw std::domain_error("pair_F: theta must be >= 0");
  if (theta == 0.0) return 0.0;
  const detail::PairKey key{std::bit_cast<std::uint64_t>(theta),
                            std::bit_cast<std::uint64_t>(alpha),
                            std::bit_cast<std::uint64_t>(rel_tol)};
  auto& cache = detail::pair_cache();
  if (auto hit = cache.find(key)) return *hit;
  // Far-apart pair members interfere independently: F = 2H (1 - O(theta)).
  if (theta < kPairAsymptoticScale * rel_tol) return 2.0 * spectral_H(theta, alpha);
  const double offset = std::pow(theta, -1.0 / alpha);
  const double value =
      std::pow(theta, 2.0 / alpha) * detail::pair_integral(1.0, alpha, offset, rel_tol);
  cache.insert(key, value);
  return value;
}

/// F(s, alpha, R) = R^2 F(s R^-alpha, alpha, 1).
inline double pair_F(double s, double alpha, double R, double rel_tol = kDefaultPairTolerance) {
  detail::require_alpha(alpha);
  if (!(s >= 0.0)) throw std::domain_error("pair_F: s must be >= 0");
  if (!(R > 0.0)) throw std::domain_error("pair_F: R must be positive");
  return R * R * pair_F_unit(s * std::pow(R, -alpha), alpha, rel_tol);
}

inline void clear_pair_F_cache() { detail::pair_cache().clear(); }
inline std::size_t pair_F_cache_size() { return detail::pair_cache().size(); }

/// The two interference functionals at a configuration's theta R^alpha.
struct Functionals {
  double H;
  double F;
};

inline Functionals functionals(const NetworkConfig& cfg,
                               double rel_tol = kDefaultPairTolerance) {
  const double s = cfg.normalized_threshold();
  return {spectral_H(s, cfg.alpha()), pair_F(s, cfg.alpha(), cfg.link_distance(), rel_tol)};
}

/// exp(-theta R^alpha beta / K).
inline double kappa(const NetworkConfig& cfg, const SelfInterferenceModel& si) {
  return std::exp(-cfg.normalized_threshold() * si.beta() / si.K());
}

inline double ps_hd(const NetworkConfig& cfg, const DuplexMix& mix,
                    double rel_tol = kDefaultPairTolerance) {
  const double s = cfg.normalized_threshold();
  const double hd_term = cfg.lambda() * mix.p1() * spectral_H(s, cfg.alpha());
  const double fd_term =
      mix.p2() > 0.0 ? cfg.lambda() * mix.p2() * pair_F(s, cfg.alpha(), cfg.link_distance(), rel_tol)
                     : 0.0;
  return std::exp(-hd_term) * std::exp(-fd_term);
}

inline double ps_fd(const NetworkConfig& cfg, const DuplexMix& mix,
                    const SelfInterferenceModel& si, double rel_tol = kDefaultPairTolerance) {
  return kappa(cfg, si) * ps_hd(cfg, mix, rel_tol);
}

/// p1 * ps_hd + p2 * ps_fd; a silent typical link contributes zero.
inline double ps_unconditional(const NetworkConfig& cfg, const DuplexMix& mix,
                               const SelfInterferenceModel& si,
                               double rel_tol = kDefaultPairTolerance) {
  if (mix.active() == 0.0) return 0.0;
  return (mix.p1() + kappa(cfg, si) * mix.p2()) * ps_hd(cfg, mix, rel_tol);
}

inline double success_probability(LinkMode mode, const NetworkConfig& cfg, const DuplexMix& mix,
                                  const SelfInterferenceModel& si,
                                  double rel_tol = kDefaultPairTolerance) {
  switch (mode) {
    case LinkMode::HD: return ps_hd(cfg, mix, rel_tol);
    case LinkMode::FD: return ps_fd(cfg, mix, si, rel_tol);
    case LinkMode::Unconditional: return ps_unconditional(cfg, mix, si, rel_tol);
  }
  throw std::logic_error("unknown LinkMode");
}

struct SuccessBounds {
  double lower;
  std::optional<double> exact;
  double upper;
};

/// Closed-form sandwich: the FD pair interference is bounded between that of
/// two independent PPPs (lower) and that of co-located pairs (upper).
inline SuccessBounds ps_bounds(const NetworkConfig& cfg, const DuplexMix& mix,
                               const SelfInterferenceModel& si, LinkMode which,
                               bool with_exact = false,
                               double rel_tol = kDefaultPairTolerance) {
  const double H = spectral_H(cfg.normalized_threshold(), cfg.alpha());
  const double lam = cfg.lambda();
  double lower = std::exp(-lam * (mix.p1() + 2.0 * mix.p2()) * H);
  double upper = std::exp(-lam * (mix.p1() + mix.p2() * (1.0 + cfg.delta())) * H);
  double scale = 1.0;
  if (which == LinkMode::FD) scale = kappa(cfg, si);
  if (which == LinkMode::Unconditional) scale = mix.p1() + kappa(cfg, si) * mix.p2();
  lower *= scale;
  upper *= scale;
  std::optional<double> exact;
  if (with_exact) exact = success_probability(which, cfg, mix, si, rel_tol);
  return {lower, exact, upper};
}

/// Horizontal gap between the upper and lower bound curves.
inline double gap_closed_form(const DuplexMix& mix, double alpha) {
  detail::require_alpha(alpha);
  if (mix.active() == 0.0) {
    throw std::domain_error("gap_closed_form: no active links (p1 = p2 = 0)");
  }
  const double delta = 2.0 / alpha;
  const double ratio = (mix.p1() + 2.0 * mix.p2()) / (mix.p1() + mix.p2() * (1.0 + delta));
  return std::pow(ratio, 1.0 / delta);
}

/// A success-probability curve theta -> p_s(theta), strictly decreasing.
using SuccessCurve = std::function<double(double)>;

struct ThetaBracket {
  double lo = 1e-6;
  double hi = 1e6;
};

class InversionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Finds theta with curve(theta) = p by bisection in log(theta). The bracket
/// is widened by doubling each end (at most 60 times) until it straddles p.
inline double sir_inverse(const SuccessCurve& curve, double p, ThetaBracket bracket = {},
                          double log_tol = 1e-10) {
  if (!(p > 0.0 && p < 1.0)) throw InversionError("sir_inverse: p must lie in (0, 1)");
  if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) {
    throw InversionError("sir_inverse: need 0 < theta_lo < theta_hi");
  }
  constexpr int kMaxExpansions = 60;
  for (int i = 0; curve(bracket.lo) <= p; ++i) {
    if (i == kMaxExpansions) throw InversionError("sir_inverse: curve never rises above p");
    bracket.lo *= 0.5;
  }
  for (int i = 0; curve(bracket.hi) >= p; ++i) {
    if (i == kMaxExpansions) throw InversionError("sir_inverse: curve never falls below p");
    bracket.hi *= 2.0;
  }
  double lo = std::log(bracket.lo);
  double hi = std::log(bracket.hi);
  while (hi - lo > log_tol) {
    const double mid = 0.5 * (lo + hi);
    if (curve(std::exp(mid)) > p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

/// G(p) = curve1^-1(p) / curve2^-1(p).
inline double gap_numeric(const SuccessCurve& curve1, const SuccessCurve& curve2, double p,
                          ThetaBracket bracket = {}) {
  return sir_inverse(curve1, p, bracket) / sir_inverse(curve2, p, bracket);
}

/// theta -> p_s(theta) with every other parameter of cfg held fixed.
inline SuccessCurve success_curve(const NetworkConfig& cfg, const DuplexMix& mix,
                                  const SelfInterferenceModel& si, LinkMode mode,
                                  double rel_tol = kDefaultPairTolerance) {
  return [=](double theta) {
    return success_probability(mode, cfg.with_theta(theta), mix, si, rel_tol);
  };
}

enum class BoundSide { Lower, Upper };

inline SuccessCurve bound_curve(const NetworkConfig& cfg, const DuplexMix& mix,
                                const SelfInterferenceModel& si, LinkMode mode,
                                BoundSide side) {
  return [=](double theta) {
    const auto b = ps_bounds(cfg.with_theta(theta), mix, si, mode);
    return side == BoundSide::Lower ? b.lower : b.upper;
  };
}

/// HD-only network: exp(-lambda H(theta R^alpha)).
inline SuccessCurve hd_only_curve(const NetworkConfig& cfg) {
  return success_curve(cfg, DuplexMix::hd_only(), SelfInterferenceModel::perfect(), LinkMode::HD);
}

/// FD-only network: kappa(theta) exp(-lambda F(theta R^alpha)).
inline SuccessCurve fd_only_curve(const NetworkConfig& cfg, const SelfInterferenceModel& si,
                                  double rel_tol = kDefaultPairTolerance) {
  return success_curve(cfg, DuplexMix::fd_only(), si, LinkMode::FD, rel_tol);
}

/// gamma(x) = x^(1-delta) R^(alpha-2) beta sin(pi delta) / (lambda pi^2 delta K).
inline double sir_loss_gamma(double x, const NetworkConfig& cfg, const SelfInterferenceModel& si) {
  if (!(x >= 0.0)) throw std::domain_error("sir_loss_gamma: x must be >= 0");
  const double delta = cfg.delta();
  return std::pow(x, 1.0 - delta) * std::pow(cfg.link_distance(), cfg.alpha() - 2.0) *
         si.beta() * std::sin(std::numbers::pi * delta) /
         (cfg.lambda() * std::numbers::pi * std::numbers::pi * delta * si.K());
}

struct SirLossBounds {
  double theta_fd;
  double lower;
  double upper;
};

/// Bounds on theta_HD(p) / theta_FD(p) for FD-only vs HD-only networks.
/// cfg.theta() is ignored; theta_FD(p) is found by inverting the FD curve.
inline SirLossBounds sir_loss_bounds(double p, const NetworkConfig& cfg,
                                     const SelfInterferenceModel& si,
                                     double rel_tol = kDefaultPairTolerance) {
  const double theta_fd = sir_inverse(fd_only_curve(cfg, si, rel_tol), p);
  const double gamma = sir_loss_gamma(theta_fd, cfg, si);
  const double inv_delta = 1.0 / cfg.delta();
  return {theta_fd, std::pow(1.0 + cfg.delta() + gamma, inv_delta),
          std::pow(2.0 + gamma, inv_delta)};
}

}  // namespace fdnet
