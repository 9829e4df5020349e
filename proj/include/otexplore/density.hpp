#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "otexplore/rng.hpp"
#include "otexplore/vec2.hpp"

namespace otx {

/// Closed axis-aligned rectangle. Advisory: used for visualization extents
/// and radius defaults, never to clamp the random walk.
struct Domain {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;

  double diagonal() const;
  bool valid() const { return x_max >= x_min && y_max >= y_min; }
};

struct GaussianComponent {
  double alpha = 1.0;
  Vec2 mean;
  /// Row-major 2x2 covariance [cxx, cxy, cyx, cyy]; symmetric PSD.
  std::array<double, 4> cov{1.0, 0.0, 0.0, 1.0};
};

struct GaussianMixture {
  std::vector<GaussianComponent> components;
};

/// Throws InvalidMixture if weights do not sum to 1, a weight is negative,
/// or a covariance is asymmetric or indefinite.
void validate_mixture(const GaussianMixture& mix);

/// Lower-triangular Cholesky factor of a 2x2 PSD covariance; tiny negative
/// eigenvalues are clamped to zero. Throws InvalidMixture otherwise.
std::array<double, 3> cholesky2x2(const std::array<double, 4>& cov);

/// The weighted sample representation {y_j, n_t(y_j)} of the reference PDF.
struct SampleEnsemble {
  std::vector<Vec2> points;
  std::vector<double> weights;
  std::size_t epoch = 0;

  std::size_t size() const { return points.size(); }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
  bool any_positive() const;
};

/// Draws count i.i.d. points from the mixture; every weight starts at
/// 1/count.
SampleEnsemble sample_mixture(const GaussianMixture& mix, std::size_t count,
                              Rng& rng);

/// Moves every sample by v·w with w uniform in [-1,1]^2. Weights are
/// untouched; the epoch advances.
void random_walk_step_samples(SampleEnsemble& ens, double diffusion_rate,
                              Rng& rng);

/// Same per-point displacement applied to an arbitrary position list;
/// positions whose frozen flag is set do not move. Draws are consumed for
/// frozen entries too, so detection order does not perturb the stream.
void random_walk_step_positions(std::vector<Vec2>& positions,
                                const std::vector<char>& frozen,
                                double diffusion_rate, Rng& rng);

}  // namespace otx
