#include "apw/flow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace apw {

namespace {

double wrap_unit(double x) {
    double w = x - std::floor(x);
    if (w >= 1.0) w -= 1.0;
    return w;
}

double wrap_nearest(double d) { return d - std::round(d); }

// field of the slice flow; x2 is taken from the (possibly unreduced) state
void eval_field(const std::vector<double>& c, long long k, const std::vector<double>& state,
                std::vector<double>& out) {
    size_t m = c.size();
    for (size_t i = 0; i < m; ++i) out[i] = c[i];
    double coupling = (k != 0 && m >= 2) ? -static_cast<double>(k) * state[1] * c[0] : 0.0;
    out[m] = 1.0 + coupling;
}

}  // namespace

FlowPoint reduce_point(FlowPoint p, long long euler_k) {
    size_t m = p.base.size();
    for (size_t i = 0; i < m; ++i) {
        double shift = std::floor(p.base[i]);
        if (shift == 0.0) continue;
        if (euler_k != 0 && i == 1) p.fiber += static_cast<double>(euler_k) * p.base[0] * shift;
        p.base[i] -= shift;
    }
    p.fiber = wrap_unit(p.fiber);
    return p;
}

double quotient_distance(const FlowPoint& a, const FlowPoint& b, long long euler_k) {
    size_t m = a.base.size();
    if (b.base.size() != m) throw std::invalid_argument("dimension mismatch");
    double ds = a.s - b.s;
    if (euler_k == 0) {
        double acc = ds * ds;
        for (size_t i = 0; i < m; ++i) {
            double d = wrap_nearest(a.base[i] - b.base[i]);
            acc += d * d;
        }
        double df = wrap_nearest(a.fiber - b.fiber);
        return std::sqrt(acc + df * df);
    }
    // minimize over deck transformations of b in a small window
    double best = std::numeric_limits<double>::infinity();
    for (int d1 = -1; d1 <= 1; ++d1) {
        for (int d2 = -1; d2 <= 1; ++d2) {
            double x1 = b.base[0] + d1;
            double x2 = b.base[1] + d2;
            double fib = b.fiber - static_cast<double>(euler_k) * b.base[0] * d2;
            double dx1 = a.base[0] - x1, dx2 = a.base[1] - x2;
            double df = wrap_nearest(a.fiber - fib);
            double dist = std::sqrt(dx1 * dx1 + dx2 * dx2 + df * df + ds * ds);
            best = std::min(best, dist);
        }
    }
    return best;
}

DetectionReport simulate_direction(const std::vector<double>& c, long long euler_k,
                                   const FlowPoint& x0, const SimParams& params,
                                   Trajectory* trajectory) {
    if (params.step <= 0 || params.horizon <= 0)
        throw std::invalid_argument("step and horizon must be positive");
    if (params.step >= params.horizon)
        throw std::invalid_argument("step must be smaller than the horizon");
    if (euler_k != 0 && c.size() != 2)
        throw std::invalid_argument("nontrivial bundles live over a 2-torus base");

    DetectionReport report;
    report.tau = params.tau;
    report.horizon = params.horizon;
    report.step = params.step;

    size_t m = c.size();
    size_t nsteps = static_cast<size_t>(std::llround(params.horizon / params.step));
    size_t stride = params.record_stride;
    if (stride == 0) stride = std::max<size_t>(1, nsteps / 20000);

    FlowPoint origin = reduce_point(x0, euler_k);
    std::vector<double> state(m + 1);
    for (size_t i = 0; i < m; ++i) state[i] = origin.base[i];
    state[m] = origin.fiber;

    if (trajectory) {
        trajectory->m = static_cast<int>(m);
        trajectory->times.clear();
        trajectory->rows.clear();
    }

    auto snapshot = [&](double t) {
        if (!trajectory) return;
        std::vector<double> row(m + 2);
        for (size_t i = 0; i < m; ++i) row[i] = state[i];
        row[m] = state[m];
        row[m + 1] = origin.s;
        trajectory->times.push_back(t);
        trajectory->rows.push_back(std::move(row));
    };
    snapshot(0.0);

    const double arm_radius = std::max(0.02, 8.0 * params.tau);
    bool armed = false;
    double h = params.step;
    std::vector<double> k1(m + 1), k2(m + 1), k3(m + 1), k4(m + 1), tmp(m + 1);

    double prev_dist = 0.0, prev_prev_dist = 0.0;
    bool have_prev = false, have_prev_prev = false;
    double prev_t = 0.0;

    for (size_t step = 1; step <= nsteps; ++step) {
        // classic RK4; the only state-dependence is the fiber coupling
        eval_field(c, euler_k, state, k1);
        for (size_t i = 0; i <= m; ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
        eval_field(c, euler_k, tmp, k2);
        for (size_t i = 0; i <= m; ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
        eval_field(c, euler_k, tmp, k3);
        for (size_t i = 0; i <= m; ++i) tmp[i] = state[i] + h * k3[i];
        eval_field(c, euler_k, tmp, k4);
        for (size_t i = 0; i <= m; ++i)
            state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        if (params.reduce) {
            FlowPoint p;
            p.base.assign(state.begin(), state.begin() + m);
            p.fiber = state[m];
            p.s = origin.s;
            p = reduce_point(p, euler_k);
            for (size_t i = 0; i < m; ++i) state[i] = p.base[i];
            state[m] = p.fiber;
        }

        double t = static_cast<double>(step) * h;
        if (trajectory && (step % stride == 0 || step == nsteps)) snapshot(t);

        FlowPoint here;
        here.base.assign(state.begin(), state.begin() + m);
        here.fiber = state[m];
        here.s = origin.s;
        double dist = quotient_distance(here, origin, euler_k);

        if (!armed) {
            if (dist > arm_radius) armed = true;
        } else {
            report.min_return_distance = std::min(report.min_return_distance, dist);
            if (have_prev && have_prev_prev && prev_dist < params.tau && prev_dist <= dist &&
                prev_dist <= prev_prev_dist) {
                // local minimum below tau at prev_t: refine with a parabola
                // through the squared distances
                double a = prev_prev_dist * prev_prev_dist;
                double b = prev_dist * prev_dist;
                double d = dist * dist;
                double denom = a - 2.0 * b + d;
                double offset = denom > 0 ? 0.5 * (a - d) / denom : 0.0;
                report.closed = true;
                report.period = prev_t + offset * h;
                return report;
            }
        }
        have_prev_prev = have_prev;
        prev_prev_dist = prev_dist;
        have_prev = true;
        prev_dist = dist;
        prev_t = t;
    }
    return report;
}

DetectionReport simulate_flow(const CollarFamily& fam, const ScalarK& u, const NilPoint& x0,
                              const BumpSpec& f, const SimParams& params, Trajectory* trajectory,
                              const TagValuation& valuation) {
    fam.validate();
    if (rat_abs(x0.s) >= fam.eps) throw std::invalid_argument("point lies outside the collar");
    DetectionReport report;
    report.tau = params.tau;
    report.horizon = params.horizon;
    report.step = params.step;
    if (f.derivative(x0.s) == 0) {
        // the Hamiltonian factor vanishes on this slice: fixed point
        report.stationary = true;
        return report;
    }
    auto c_exact = kernel_direction(fam, u, ScalarK(x0.s));
    std::vector<double> c(c_exact.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = to_double(c_exact[i], valuation);
    FlowPoint p;
    for (const auto& b : x0.base) p.base.push_back(to_double(b));
    p.fiber = to_double(x0.fiber);
    p.s = to_double(x0.s);
    return simulate_direction(c, fam.euler_k, p, params, trajectory);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t";
    for (int i = 1; i <= traj.m; ++i) out << ",x" << i;
    out << ",fiber,s\n";
    out.precision(17);
    for (size_t r = 0; r < traj.rows.size(); ++r) {
        out << traj.times[r];
        for (double v : traj.rows[r]) out << "," << v;
        out << "\n";
    }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_trajectory_csv(out, traj);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty trajectory file");
    std::vector<std::string> cols;
    std::stringstream hs(header);
    std::string cell;
    while (std::getline(hs, cell, ',')) cols.push_back(cell);
    if (cols.size() < 4 || cols.front() != "t" || cols.back() != "s" ||
        cols[cols.size() - 2] != "fiber")
        throw std::runtime_error("trajectory schema mismatch: expected t,x1..xm,fiber,s");
    for (size_t i = 1; i + 2 < cols.size(); ++i)
        if (cols[i] != "x" + std::to_string(i))
            throw std::runtime_error("trajectory schema mismatch at column " + cols[i]);
    Trajectory traj;
    traj.m = static_cast<int>(cols.size()) - 3;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != cols.size()) throw std::runtime_error("ragged trajectory row");
        traj.times.push_back(row[0]);
        traj.rows.push_back(std::vector<double>(row.begin() + 1, row.end()));
    }
    if (traj.rows.empty()) throw std::runtime_error("trajectory has no samples");
    return traj;
}

}  // namespace apw
