#pragma once

#include <string>
#include <vector>

#include "otexplore/density.hpp"
#include "otexplore/vec2.hpp"

namespace otx {

/// Renders agent trajectories as polylines over the sample-point scatter.
std::string render_trajectories_svg(const Domain& domain,
                                    const std::vector<Vec2>& sample_points,
                                    const std::vector<std::vector<Vec2>>& trajectories);

void write_trajectories_svg(const std::string& path, const Domain& domain,
                            const std::vector<Vec2>& sample_points,
                            const std::vector<std::vector<Vec2>>& trajectories);

}  // namespace otx
