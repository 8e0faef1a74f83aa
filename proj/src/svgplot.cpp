#include "apw/svgplot.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace apw {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 40.0;

double px(double unit_coord) { return kMargin + unit_coord * (kCanvas - 2 * kMargin); }
double py(double unit_coord) { return kCanvas - kMargin - unit_coord * (kCanvas - 2 * kMargin); }

double wrap01(double x) {
    double w = x - std::floor(x);
    return w >= 1.0 ? w - 1.0 : w;
}

}  // namespace

void plot_trajectory(const Trajectory& traj, const std::string& svg_path, double tau) {
    if (traj.rows.empty()) throw std::runtime_error("trajectory has no samples");
    if (traj.m < 1) throw std::runtime_error("trajectory has no base coordinates");

    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("cannot write '" + svg_path + "'");

    // second coordinate: x2 when present, else the fiber
    size_t ycol = traj.m >= 2 ? 1 : static_cast<size_t>(traj.m);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
        << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
    out << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kCanvas - 2 * kMargin << "\" height=\"" << kCanvas - 2 * kMargin
        << "\" fill=\"white\" stroke=\"#444\"/>\n";

    std::ostringstream marks;
    out << "  <g fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\">\n";
    std::ostringstream poly;
    bool open = false;
    double prevx = 0, prevy = 0;
    for (size_t i = 0; i < traj.rows.size(); ++i) {
        double x = wrap01(traj.rows[i][0]);
        double y = wrap01(traj.rows[i][ycol]);
        bool wrapped = open && (std::abs(x - prevx) > 0.5 || std::abs(y - prevy) > 0.5);
        if (wrapped) {
            out << "    <polyline points=\"" << poly.str() << "\"/>\n";
            poly.str("");
            open = false;
            marks << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                  << "\" r=\"2\" fill=\"#d62728\"/>\n";
        }
        poly << px(x) << "," << py(y) << " ";
        open = true;
        prevx = x;
        prevy = y;
    }
    if (open) out << "    <polyline points=\"" << poly.str() << "\"/>\n";
    out << "  </g>\n";
    out << marks.str();

    // closure annotation: end point returns to the start
    double dx = wrap01(traj.rows.back()[0]) - wrap01(traj.rows.front()[0]);
    double dy = wrap01(traj.rows.back()[ycol]) - wrap01(traj.rows.front()[ycol]);
    dx -= std::round(dx);
    dy -= std::round(dy);
    if (std::sqrt(dx * dx + dy * dy) < std::max(tau, 1e-9) * 10) {
        out << "  <text x=\"" << kMargin << "\" y=\"" << kMargin - 12
            << "\" font-family=\"monospace\" font-size=\"14\" fill=\"#2ca02c\">closed orbit"
            << "</text>\n";
        out << "  <circle cx=\"" << px(wrap01(traj.rows.front()[0])) << "\" cy=\""
            << py(wrap01(traj.rows.front()[ycol]))
            << "\" r=\"4\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
}

void plot_trajectory_csv(const std::string& csv_path, const std::string& svg_path, double tau) {
    plot_trajectory(read_trajectory_csv(csv_path), svg_path, tau);
}

}  // namespace apw
