#pragma once

#include "apw/collar.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace apw {

/// Floating-point state on the quotient: base torus coordinates, fiber
/// coordinate, frozen collar coordinate.
struct FlowPoint {
    std::vector<double> base;
    double fiber = 0.0;
    double s = 0.0;
};

struct Trajectory {
    int m = 0;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;  // x1..xm, fiber, s per sample
};

struct DetectionReport {
    bool stationary = false;
    bool closed = false;
    double period = 0.0;
    double min_return_distance = std::numeric_limits<double>::infinity();
    double tau = 1e-6;
    double horizon = 0.0;
    double step = 1e-3;
};

struct SimParams {
    double horizon = 100.0;
    double step = 1e-3;
    double tau = 1e-6;
    bool record = false;
    size_t record_stride = 0;  // 0: choose automatically (~20k samples)
    bool reduce = true;        // lattice reduction; disable only for testing
};

/// Deck transformation bookkeeping for the nontrivial bundle: shifting the
/// second base coordinate down by one adds k * x1 to the fiber; the first
/// base coordinate shifts freely.  With k = 0 this is the plain torus.
FlowPoint reduce_point(FlowPoint p, long long euler_k);

/// Distance on the quotient, minimized over nearby deck transformations.
double quotient_distance(const FlowPoint& a, const FlowPoint& b, long long euler_k);

/// Fixed-step RK4 integration of the slice field: base velocity c, fiber
/// velocity 1 - k * x2 * c1 (horizontal lift plus the unit fiber rotation).
/// A closed orbit is flagged when the trajectory, after once leaving a small
/// ball around the start, re-enters the tau-ball; the reported period refines
/// the dip with a parabolic fit of the squared distance.
DetectionReport simulate_direction(const std::vector<double>& c, long long euler_k,
                                   const FlowPoint& x0, const SimParams& params,
                                   Trajectory* trajectory = nullptr);

/// Simulates the collar slice field of the family at parameter u through the
/// given point.  At a critical slice of the bump profile the Hamiltonian
/// factor vanishes and the report is Stationary.
DetectionReport simulate_flow(const CollarFamily& fam, const ScalarK& u, const NilPoint& x0,
                              const BumpSpec& f, const SimParams& params,
                              Trajectory* trajectory = nullptr,
                              const TagValuation& valuation = TagValuation());

/// CSV with header t,x1,...,xm,fiber,s.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace apw
