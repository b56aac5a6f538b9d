#pragma once

#include <cstddef>

#include <nlohmann/json_fwd.hpp>

#include "dynregret/losses.hpp"
#include "dynregret/point.hpp"
#include "dynregret/rng.hpp"

namespace dynregret {

/// Isotropic Gaussian gradient noise N(0, sigma^2 I_d).
class GaussianNoise {
 public:
  /// sigma = 0 is accepted and yields exact gradients.
  GaussianNoise(std::size_t dim, double sigma);

  std::size_t dim() const noexcept { return dim_; }
  double sigma() const noexcept { return sigma_; }
  /// Trace of the covariance, d sigma^2.
  double lambda_sq() const noexcept { return static_cast<double>(dim_) * sigma_ * sigma_; }
  /// 1 / (2 sigma^2); +inf at sigma = 0.
  double c_tilde() const noexcept;

  Point sample(Rng& rng) const;

  friend bool operator==(const GaussianNoise&, const GaussianNoise&) = default;

 private:
  std::size_t dim_;
  double sigma_;
};

/// gradient(w) + one noise draw.
Point noisy_gradient(const Loss& loss, const Point& w, const GaussianNoise& noise, Rng& rng);

void to_json(nlohmann::json& j, const GaussianNoise& noise);
/// Parses {type: "gaussian", sigma, d}.
GaussianNoise gaussian_noise_from_json(const nlohmann::json& j);

}  // namespace dynregret
