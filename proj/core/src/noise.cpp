#include "dynregret/noise.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

#include "dynregret/error.hpp"

namespace dynregret {

GaussianNoise::GaussianNoise(std::size_t dim, double sigma) : dim_(dim), sigma_(sigma) {
  if (dim == 0) throw InvalidArgument("noise dimension must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("noise sigma must be finite and >= 0");
}

double GaussianNoise::c_tilde() const noexcept {
  if (sigma_ == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * sigma_ * sigma_);
}

Point GaussianNoise::sample(Rng& rng) const {
  Point eps = Point::zeros(dim_);
  for (std::size_t i = 0; i < dim_; ++i) eps[i] = sigma_ * rng.normal();
  return eps;
}

Point noisy_gradient(const Loss& loss, const Point& w, const GaussianNoise& noise, Rng& rng) {
  require_same_dim(noise.dim(), w.dim(), "noisy gradient");
  Point g = loss.gradient(w);
  g += noise.sample(rng);
  return g;
}

void to_json(nlohmann::json& j, const GaussianNoise& noise) {
  j = {{"type", "gaussian"}, {"sigma", noise.sigma()}, {"d", noise.dim()}};
}

GaussianNoise gaussian_noise_from_json(const nlohmann::json& j) {
  try {
    const auto type = j.value("type", std::string("gaussian"));
    if (type != "gaussian") throw InvalidArgument("unsupported noise type '" + type + "'");
    return GaussianNoise(j.value("d", std::size_t{1}), j.at("sigma").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed noise descriptor: ") + e.what());
  }
}

}  // namespace dynregret
