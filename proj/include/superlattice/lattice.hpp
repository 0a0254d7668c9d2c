#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace superlattice {

/// Scalar landscape U(r) on the lattice plane [J].
using Evaluator = std::function<double(const Eigen::Vector2d&)>;

struct UnitCell {
    Eigen::Vector2d a1 = Eigen::Vector2d::UnitX();
    Eigen::Vector2d a2 = Eigen::Vector2d::UnitY();
    Eigen::Vector2d origin = Eigen::Vector2d::Zero();

    UnitCell() = default;
    UnitCell(Eigen::Vector2d a1, Eigen::Vector2d a2, Eigen::Vector2d origin = Eigen::Vector2d::Zero());

    double area() const;
    double scale() const { return a1.norm(); }
    Eigen::Vector2d fractional(const Eigen::Vector2d& r) const;
    Eigen::Vector2d cartesian(const Eigen::Vector2d& f) const;
    /// Image of r inside [0,1)^2 in fractional coordinates.
    Eigen::Vector2d wrap(const Eigen::Vector2d& r) const;
    /// Shortest lattice-equivalent displacement.
    Eigen::Vector2d minimum_image(const Eigen::Vector2d& d) const;
    Eigen::Vector2d translation(int n1, int n2) const { return n1 * a1 + n2 * a2; }
};

/// Row-major samples: values[i * ny + j] = U(origin + (i/nx) a1 + (j/ny) a2).
struct PotentialGrid {
    UnitCell cell;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    double at(int i, int j) const;  // periodic indices
    Eigen::Vector2d point(int i, int j) const;
    double min() const;
    double max() const;
    double range() const { return max() - min(); }
};

PotentialGrid sample_grid(const Evaluator& U, const UnitCell& cell, int nx, int ny);

enum class PointKind { Minimum, Maximum, Saddle };
const char* to_string(PointKind kind);

struct CriticalPoint {
    Eigen::Vector2d position;
    double value = 0.0;
    PointKind kind = PointKind::Minimum;
    std::string label;
};

struct ExtremaOptions {
    double step_tolerance = 1e-10;    // x |a1|
    double merge_tolerance = 1e-6;    // x |a1|
    double hessian_step = 1e-4;       // x |a1|
    int max_steps = 10000;
};

/// Critical points of a periodic landscape, seeded from the grid and refined on
/// the continuous evaluator. Positions lie in the fundamental cell.
std::vector<CriticalPoint> find_extrema(const PotentialGrid& grid, const Evaluator& U, ExtremaOptions options = {});

/// Central-difference gradient and Hessian with step h.
Eigen::Vector2d fd_gradient(const Evaluator& U, const Eigen::Vector2d& r, double h);
Eigen::Matrix2d fd_hessian(const Evaluator& U, const Eigen::Vector2d& r, double h);
PointKind classify_hessian(const Eigen::Matrix2d& H);

/// Local minimum reached from `start` by the same refinement find_extrema uses.
CriticalPoint refine_minimum(const Evaluator& U, const Eigen::Vector2d& start, double initial_step, double scale,
                             ExtremaOptions options = {});

struct Waypoint {
    std::string label;
    Eigen::Vector2d position;
};

struct PathSample {
    double arclength = 0.0;  // [m]
    Eigen::Vector2d position;
    double value = 0.0;
    std::string label;  // set on samples that coincide with a waypoint
};

std::vector<PathSample> path_potential(const Evaluator& U, const std::vector<Waypoint>& waypoints,
                                       int samples_per_segment = 200);

struct BondBarrier {
    std::size_t site_a = 0;  // indices into the minima list
    std::size_t site_b = 0;
    std::array<int, 2> image{0, 0};  // site_b is taken at position_b + image translation
    Eigen::Vector2d position_a, position_b;
    Eigen::Vector2d saddle_position;
    double value_a = 0.0, value_b = 0.0;
    double saddle_value = 0.0;
    double barrier_a = 0.0, barrier_b = 0.0;

    double height() const { return saddle_value - 0.5 * (value_a + value_b); }
    double length() const { return (position_b - position_a).norm(); }
};

struct BarrierReport {
    std::vector<BondBarrier> bonds;
    std::vector<std::string> diagnostics;  // pairs for which no saddle was confirmed
};

/// Bonds between minima closer than adjacency_radius (periodic images included).
/// Each bond's saddle is the lowest saddle in the pair's perpendicular strip whose
/// descent paths end in the two minima.
BarrierReport bond_barriers(const Evaluator& U, const UnitCell& cell, const std::vector<CriticalPoint>& points,
                            double adjacency_radius);

enum class Geometry {
    DoubleWellLR,
    DoubleWellLL,
    DoubleWellLRt,
    IsolatedSquare,
    IsolatedTriangle,
    IsolatedHexagon,
    SimpleBravais,
    Unknown,
};
const char* to_string(Geometry g);

/// Groups minima through the low-barrier bond graph (threshold: geometric mean of
/// the smallest and largest bond heights) and names the resulting motif.
Geometry classify_geometry(const std::vector<CriticalPoint>& minima, const std::vector<BondBarrier>& bonds);

struct BisectionOptions {
    double relative_tolerance = 1e-9;
    int max_iterations = 60;
};

/// Bisection for f(phase) = target on [lo, hi].
double solve_phase_offset(const std::function<double(double)>& f, double target, double lo, double hi,
                          BisectionOptions options = {});

/// For each nominal site, the index of the nearest minimum (image-aware), with
/// that minimum's image closest to the nominal position.
struct SiteMatch {
    std::string label;
    std::size_t index = 0;
    Eigen::Vector2d position;  // image of the matched minimum nearest the nominal position
    double value = 0.0;
    double distance = 0.0;
};
std::vector<SiteMatch> match_sites(const UnitCell& cell, const std::vector<CriticalPoint>& minima,
                                   const std::vector<Waypoint>& nominal);

std::vector<CriticalPoint> select(const std::vector<CriticalPoint>& points, PointKind kind);

/// True when every value lies within tolerance * range of the first.
bool equal_depths(const std::vector<double>& values, double range, double tolerance = 1e-6);

}  // namespace superlattice
