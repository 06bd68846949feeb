#pragma once

/// \file model.hpp
/// Value types describing a mixed half-/full-duplex Poisson network.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fdnet {

/// Node density, SIR threshold (linear), link distance and path-loss exponent.
class NetworkConfig {
 public:
  NetworkConfig(double lambda, double theta, double link_distance, double alpha)
      : lambda_(lambda), theta_(theta), link_distance_(link_distance), alpha_(alpha) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("NetworkConfig: lambda must be positive");
    }
    if (!(theta > 0.0) || !std::isfinite(theta)) {
      throw std::invalid_argument("NetworkConfig: theta must be positive");
    }
    if (!(link_distance > 0.0) || !std::isfinite(link_distance)) {
      throw std::invalid_argument("NetworkConfig: link distance must be positive");
    }
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
      throw std::domain_error("NetworkConfig: alpha must exceed 2");
    }
  }

  double lambda() const noexcept { return lambda_; }
  double theta() const noexcept { return theta_; }
  double link_distance() const noexcept { return link_distance_; }
  double alpha() const noexcept { return alpha_; }
  double delta() const noexcept { return 2.0 / alpha_; }

  /// theta * R^alpha, the argument at which H and F are evaluated.
  double normalized_threshold() const noexcept {
    return theta_ * std::pow(link_distance_, alpha_);
  }

  NetworkConfig with_lambda(double v) const { return {v, theta_, link_distance_, alpha_}; }
  NetworkConfig with_theta(double v) const { return {lambda_, v, link_distance_, alpha_}; }
  NetworkConfig with_link_distance(double v) const { return {lambda_, theta_, v, alpha_}; }
  NetworkConfig with_alpha(double v) const { return {lambda_, theta_, link_distance_, v}; }

 private:
  double lambda_;
  double theta_;
  double link_distance_;
  double alpha_;
};

/// Link-state probabilities: silent, half-duplex, full-duplex.
class DuplexMix {
 public:
  /// p0 is implied as 1 - p1 - p2.
  DuplexMix(double p1, double p2) : DuplexMix(1.0 - p1 - p2, p1, p2) {}

  DuplexMix(double p0, double p1, double p2) : p0_(p0), p1_(p1), p2_(p2) {
    constexpr double kSlack = 1e-12;
    auto in_unit = [](double p) { return p >= -kSlack && p <= 1.0 + kSlack; };
    if (!in_unit(p0) || !in_unit(p1) || !in_unit(p2)) {
      throw std::invalid_argument("DuplexMix: probabilities must lie in [0, 1]");
    }
    if (std::abs(p0 + p1 + p2 - 1.0) > kSlack) {
      throw std::invalid_argument("DuplexMix: probabilities must sum to 1");
    }
    p0_ = std::max(0.0, p0);
    p1_ = std::max(0.0, p1);
    p2_ = std::max(0.0, p2);
  }

  static DuplexMix hd_only() { return {0.0, 1.0, 0.0}; }
  static DuplexMix fd_only() { return {0.0, 0.0, 1.0}; }

  double p0() const noexcept { return p0_; }
  double p1() const noexcept { return p1_; }
  double p2() const noexcept { return p2_; }
  double active() const noexcept { return p1_ + p2_; }

 private:
  double p0_;
  double p1_;
  double p2_;
};

/// Residual self-interference-to-power ratio beta and propagation constant K.
class SelfInterferenceModel {
 public:
  SelfInterferenceModel(double beta, double K) : beta_(beta), K_(K) {
    if (!(beta >= 0.0 && beta <= 1.0)) {
      throw std::invalid_argument("SelfInterferenceModel: beta must lie in [0, 1]");
    }
    if (!(K > 0.0) || !std::isfinite(K)) {
      throw std::invalid_argument("SelfInterferenceModel: K must be positive");
    }
  }

  static constexpr double kSpeedOfLight = 299'792'458.0;

  /// K = G_tx G_rx (c / (4 pi f_c))^2.
  static double propagation_constant(double gain_tx, double gain_rx, double carrier_hz,
                                     double speed_of_light = kSpeedOfLight) {
    if (!(gain_tx > 0.0) || !(gain_rx > 0.0) || !(carrier_hz > 0.0) || !(speed_of_light > 0.0)) {
      throw std::invalid_argument("propagation_constant: arguments must be positive");
    }
    const double wavelength_term = speed_of_light / (4.0 * std::numbers::pi * carrier_hz);
    return gain_tx * gain_rx * wavelength_term * wavelength_term;
  }

  static SelfInterferenceModel from_antennas(double beta, double gain_tx, double gain_rx,
                                             double carrier_hz,
                                             double speed_of_light = kSpeedOfLight) {
    return {beta, propagation_constant(gain_tx, gain_rx, carrier_hz, speed_of_light)};
  }

  static SelfInterferenceModel perfect(double K = 1.0) { return {0.0, K}; }

  double beta() const noexcept { return beta_; }
  double K() const noexcept { return K_; }

  SelfInterferenceModel with_beta(double v) const { return {v, K_}; }

 private:
  double beta_;
  double K_;
};

/// Densities of HD links (lambda * p1) and FD links (lambda * p2).
struct LinkDensities {
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  void validate() const {
    if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !std::isfinite(lambda1) ||
        !std::isfinite(lambda2)) {
      throw std::invalid_argument("LinkDensities: densities must be finite and >= 0");
    }
  }

  static LinkDensities from(const NetworkConfig& cfg, const DuplexMix& mix) {
    return {cfg.lambda() * mix.p1(), cfg.lambda() * mix.p2()};
  }
};

/// Which success probability is meant: conditional on the typical link being
/// HD or FD, or averaged over its state.
enum class LinkMode { HD, FD, Unconditional };

}  // namespace fdnet
