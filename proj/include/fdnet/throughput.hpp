#pragma once

/// \file throughput.hpp
/// Area throughput of the mixed network, its HD-only / FD-only maxima, the
/// global maximum over (lambda1, lambda2) and the break-even SIPR.
///
/// Spectral efficiency is ln(1 + theta), i.e. nats per channel use; the base
/// cancels in every ratio and argmax below.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fdnet/analytic.hpp"
#include "fdnet/model.hpp"

namespace fdnet {

/// (lambda1 + 2 kappa lambda2) exp(-lambda1 H) exp(-lambda2 F) ln(1 + theta).
inline double throughput(const LinkDensities& dens, const NetworkConfig& cfg,
                         const SelfInterferenceModel& si,
                         double rel_tol = kDefaultPairTolerance) {
  dens.validate();
  const double s = cfg.normalized_threshold();
  const double H = spectral_H(s, cfg.alpha());
  const double fd_exponent =
      dens.lambda2 > 0.0 ? dens.lambda2 * pair_F(s, cfg.alpha(), cfg.link_distance(), rel_tol)
                         : 0.0;
  return (dens.lambda1 + 2.0 * kappa(cfg, si) * dens.lambda2) * std::exp(-dens.lambda1 * H) *
         std::exp(-fd_exponent) * std::log1p(cfg.theta());
}

/// Same quantity as the mode sum lambda1 ps_HD L + 2 lambda2 ps_FD L.
inline double throughput_mode_sum(const LinkDensities& dens, const NetworkConfig& cfg,
                                  const SelfInterferenceModel& si,
                                  double rel_tol = kDefaultPairTolerance) {
  dens.validate();
  const double total = dens.lambda1 + dens.lambda2;
  if (total == 0.0) return 0.0;
  const NetworkConfig net = cfg.with_lambda(total);
  const DuplexMix mix(0.0, dens.lambda1 / total, dens.lambda2 / total);
  const double spectral = std::log1p(cfg.theta());
  return dens.lambda1 * ps_hd(net, mix, rel_tol) * spectral +
         2.0 * dens.lambda2 * ps_fd(net, mix, si, rel_tol) * spectral;
}

struct ModeOptimum {
  double t;
  double density;
};

/// HD-only maximum ln(1 + theta) / (e H) at lambda1 = 1/H.
inline ModeOptimum t_hd_max(const NetworkConfig& cfg) {
  const double H = spectral_H(cfg.normalized_threshold(), cfg.alpha());
  return {std::log1p(cfg.theta()) / (std::numbers::e * H), 1.0 / H};
}

/// FD-only maximum 2 kappa ln(1 + theta) / (e F) at lambda2 = 1/F.
inline ModeOptimum t_fd_max(const NetworkConfig& cfg, const SelfInterferenceModel& si,
                            double rel_tol = kDefaultPairTolerance) {
  const double F = pair_F(cfg.normalized_threshold(), cfg.alpha(), cfg.link_distance(), rel_tol);
  return {2.0 * kappa(cfg, si) * std::log1p(cfg.theta()) / (std::numbers::e * F), 1.0 / F};
}

enum class Regime { FdOnly, HdOnly, BreakEven };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::FdOnly: return "FD_ONLY";
    case Regime::HdOnly: return "HD_ONLY";
    case Regime::BreakEven: return "BREAK_EVEN";
  }
  return "?";
}

/// At break-even every (lambda1, lambda2) >= 0 on lambda1 + slope lambda2 =
/// intercept is optimal.
struct OptimalLine {
  double intercept;  // 1/H
  double slope;      // 2 kappa
};

struct ThroughputOptimum {
  double t_max;
  Regime regime;
  LinkDensities optimal;
  OptimalLine line;
};

/// |F - 2 kappa H| <= kBreakEvenTolerance * F counts as break-even.
inline constexpr double kBreakEvenTolerance = 1e-9;

/// Global maximum of T over (lambda1, lambda2): all-FD when F < 2 kappa H,
/// all-HD when F > 2 kappa H.
inline ThroughputOptimum t_max(const NetworkConfig& cfg, const SelfInterferenceModel& si,
                               double rel_tol = kDefaultPairTolerance) {
  const auto [H, F] = functionals(cfg, rel_tol);
  const double k = kappa(cfg, si);
  const double spectral = std::log1p(cfg.theta());
  const OptimalLine line{1.0 / H, 2.0 * k};
  const double gap = F - 2.0 * k * H;
  if (std::abs(gap) <= kBreakEvenTolerance * F) {
    return {spectral / (std::numbers::e * H), Regime::BreakEven, {1.0 / H, 0.0}, line};
  }
  if (gap < 0.0) {
    return {2.0 * k * spectral / (std::numbers::e * F), Regime::FdOnly, {0.0, 1.0 / F}, line};
  }
  return {spectral / (std::numbers::e * H), Regime::HdOnly, {1.0 / H, 0.0}, line};
}

/// beta_c = K ln(2H/F) / (theta R^alpha). Since F/H does not depend on R,
/// beta_c is proportional to R^-alpha (slope -alpha of log beta_c vs log R).
inline double critical_beta(const NetworkConfig& cfg, double K,
                            double rel_tol = kDefaultPairTolerance) {
  if (!(K > 0.0)) throw std::invalid_argument("critical_beta: K must be positive");
  const auto [H, F] = functionals(cfg, rel_tol);
  if (!(F < 2.0 * H)) throw std::domain_error("critical_beta: requires F < 2H");
  return K * std::log(2.0 * H / F) / cfg.normalized_threshold();
}

struct ThroughputGain {
  double tg;
  double lower;  // kappa
  double upper;  // 2 kappa / (1 + delta)
};

/// TG = T_max^FD / T_max^HD = 2 kappa H / F.
inline ThroughputGain throughput_gain(const NetworkConfig& cfg, const SelfInterferenceModel& si,
                                      double rel_tol = kDefaultPairTolerance) {
  const auto [H, F] = functionals(cfg, rel_tol);
  const double k = kappa(cfg, si);
  return {2.0 * k * H / F, k, 2.0 * k / (1.0 + cfg.delta())};
}

}  // namespace fdnet
