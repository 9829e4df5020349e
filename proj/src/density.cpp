#include "otexplore/density.hpp"

#include <cmath>

#include "otexplore/errors.hpp"
#include "otexplore/point_set.hpp"

namespace otx {

double Domain::diagonal() const {
  return std::hypot(x_max - x_min, y_max - y_min);
}

void validate_mixture(const GaussianMixture& mix) {
  if (mix.components.empty())
    throw InvalidMixture("mixture has no components");
  double alpha_sum = 0.0;
  for (const GaussianComponent& c : mix.components) {
    if (c.alpha < 0.0) throw InvalidMixture("negative component weight");
    alpha_sum += c.alpha;
    cholesky2x2(c.cov);
  }
  if (std::abs(alpha_sum - 1.0) > 1e-9)
    throw InvalidMixture("component weights sum to " + std::to_string(alpha_sum));
}

std::array<double, 3> cholesky2x2(const std::array<double, 4>& cov) {
  const double a = cov[0], b = cov[1], c = cov[2], d = cov[3];
  const double scale = std::max({std::abs(a), std::abs(d), 1.0});
  if (std::abs(b - c) > 1e-9 * scale)
    throw InvalidMixture("covariance is not symmetric");
  if (a < -1e-9 * scale || d < -1e-9 * scale ||
      a * d - b * b < -1e-9 * scale * scale)
    throw InvalidMixture("covariance is not positive semi-definite");
  const double l00 = std::sqrt(std::max(a, 0.0));
  const double l10 = l00 > 0.0 ? b / l00 : 0.0;
  const double l11 = std::sqrt(std::max(d - l10 * l10, 0.0));
  return {l00, l10, l11};
}

bool SampleEnsemble::any_positive() const {
  for (double w : weights)
    if (w > kMassEps) return true;
  return false;
}

SampleEnsemble sample_mixture(const GaussianMixture& mix, std::size_t count,
                              Rng& rng) {
  validate_mixture(mix);
  if (count == 0) throw InvalidMixture("sample count must be at least 1");

  std::vector<std::array<double, 3>> factors;
  factors.reserve(mix.components.size());
  for (const GaussianComponent& c : mix.components)
    factors.push_back(cholesky2x2(c.cov));

  SampleEnsemble ens;
  ens.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform01();
    std::size_t ci = mix.components.size() - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < mix.components.size(); ++k) {
      acc += mix.components[k].alpha;
      if (u < acc) {
        ci = k;
        break;
      }
    }
    const double z0 = rng.normal();
    const double z1 = rng.normal();
    const auto& l = factors[ci];
    const Vec2 mean = mix.components[ci].mean;
    ens.points.push_back({mean.x + l[0] * z0, mean.y + l[1] * z0 + l[2] * z1});
  }
  ens.weights.assign(count, 1.0 / static_cast<double>(count));
  return ens;
}

void random_walk_step_samples(SampleEnsemble& ens, double diffusion_rate,
                              Rng& rng) {
  if (diffusion_rate < 0.0)
    throw InvalidMass("random_walk_step_samples: negative diffusion rate");
  for (Vec2& y : ens.points) {
    y.x += diffusion_rate * rng.uniform(-1.0, 1.0);
    y.y += diffusion_rate * rng.uniform(-1.0, 1.0);
  }
  ++ens.epoch;
}

void random_walk_step_positions(std::vector<Vec2>& positions,
                                const std::vector<char>& frozen,
                                double diffusion_rate, Rng& rng) {
  if (diffusion_rate < 0.0)
    throw InvalidMass("random_walk_step_positions: negative diffusion rate");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double dx = diffusion_rate * rng.uniform(-1.0, 1.0);
    const double dy = diffusion_rate * rng.uniform(-1.0, 1.0);
    if (i < frozen.size() && frozen[i]) continue;
    positions[i].x += dx;
    positions[i].y += dy;
  }
}

}  // namespace otx
