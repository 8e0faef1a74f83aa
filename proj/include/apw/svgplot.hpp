#pragma once

#include "apw/flow.hpp"

#include <string>

namespace apw {

/// Projection of a trajectory to the first two base coordinates on the unit
/// square, with polylines broken at fundamental-domain wraps and small marks
/// at the break points.  When the end point lies within tau of the start the
/// curve is annotated as closed.
void plot_trajectory(const Trajectory& traj, const std::string& svg_path, double tau = 1e-6);

/// Reads the CSV (schema t,x1..xm,fiber,s) and plots it.
void plot_trajectory_csv(const std::string& csv_path, const std::string& svg_path,
                         double tau = 1e-6);

}  // namespace apw
