#include "superlattice/lattice.hpp"

#include "superlattice/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

namespace superlattice {

// ---------------------------------------------------------------- UnitCell

UnitCell::UnitCell(Eigen::Vector2d a1_, Eigen::Vector2d a2_, Eigen::Vector2d origin_)
    : a1(std::move(a1_)), a2(std::move(a2_)), origin(std::move(origin_)) {
    if (!(std::abs(area()) > 1e-12 * a1.norm() * a2.norm()))
        throw ValidationError("unit cell vectors are linearly dependent");
}

double UnitCell::area() const { return a1.x() * a2.y() - a1.y() * a2.x(); }

Eigen::Vector2d UnitCell::fractional(const Eigen::Vector2d& r) const {
    Eigen::Matrix2d M;
    M << a1, a2;
    return M.inverse() * (r - origin);
}

Eigen::Vector2d UnitCell::cartesian(const Eigen::Vector2d& f) const { return origin + f.x() * a1 + f.y() * a2; }

Eigen::Vector2d UnitCell::wrap(const Eigen::Vector2d& r) const {
    Eigen::Vector2d f = fractional(r);
    for (int k = 0; k < 2; ++k) {
        f[k] -= std::floor(f[k]);
        if (f[k] >= 1.0) f[k] = 0.0;
    }
    return cartesian(f);
}

Eigen::Vector2d UnitCell::minimum_image(const Eigen::Vector2d& d) const {
    Eigen::Matrix2d M;
    M << a1, a2;
    Eigen::Vector2d f = M.inverse() * d;
    f = f.array() - f.array().round();
    Eigen::Vector2d best = M * f;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) {
            const Eigen::Vector2d c = M * (f + Eigen::Vector2d(i, j));
            if (c.norm() < best.norm()) best = c;
        }
    return best;
}

// ----------------------------------------------------------- PotentialGrid

double PotentialGrid::at(int i, int j) const {
    i = ((i % nx) + nx) % nx;
    j = ((j % ny) + ny) % ny;
    return values[static_cast<std::size_t>(i) * ny + j];
}

Eigen::Vector2d PotentialGrid::point(int i, int j) const {
    return cell.cartesian({static_cast<double>(i) / nx, static_cast<double>(j) / ny});
}

double PotentialGrid::min() const { return *std::min_element(values.begin(), values.end()); }
double PotentialGrid::max() const { return *std::max_element(values.begin(), values.end()); }

PotentialGrid sample_grid(const Evaluator& U, const UnitCell& cell, int nx, int ny) {
    if (nx < 8 || ny < 8) throw ValidationError(fmt::format("grid must be at least 8x8 (got {}x{})", nx, ny));
    PotentialGrid g{cell, nx, ny, {}};
    g.values.resize(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double v = U(g.point(i, j));
            if (!std::isfinite(v)) throw NumericalError(fmt::format("non-finite potential at grid point ({}, {})", i, j));
            g.values[static_cast<std::size_t>(i) * ny + j] = v;
        }
    return g;
}

const char* to_string(PointKind kind) {
    switch (kind) {
        case PointKind::Minimum: return "minimum";
        case PointKind::Maximum: return "maximum";
        case PointKind::Saddle: return "saddle";
    }
    return "?";
}

// ------------------------------------------------------ derivatives

Eigen::Vector2d fd_gradient(const Evaluator& U, const Eigen::Vector2d& r, double h) {
    Eigen::Vector2d g;
    for (int k = 0; k < 2; ++k) {
        Eigen::Vector2d e = Eigen::Vector2d::Zero();
        e[k] = h;
        g[k] = (-U(r + 2 * e) + 8 * U(r + e) - 8 * U(r - e) + U(r - 2 * e)) / (12 * h);
    }
    return g;
}

Eigen::Matrix2d fd_hessian(const Evaluator& U, const Eigen::Vector2d& r, double h) {
    const Eigen::Vector2d ex(h, 0), ey(0, h);
    const double u0 = U(r);
    Eigen::Matrix2d H;
    H(0, 0) = (U(r + ex) - 2 * u0 + U(r - ex)) / (h * h);
    H(1, 1) = (U(r + ey) - 2 * u0 + U(r - ey)) / (h * h);
    H(0, 1) = H(1, 0) = (U(r + ex + ey) - U(r + ex - ey) - U(r - ex + ey) + U(r - ex - ey)) / (4 * h * h);
    return H;
}

PointKind classify_hessian(const Eigen::Matrix2d& H) {
    const double det = H.determinant();
    if (det > 0) return H.trace() > 0 ? PointKind::Minimum : PointKind::Maximum;
    return PointKind::Saddle;
}

namespace {

Eigen::Vector2d central_gradient(const Evaluator& U, const Eigen::Vector2d& r, double h) {
    const Eigen::Vector2d ex(h, 0), ey(0, h);
    return {(U(r + ex) - U(r - ex)) / (2 * h), (U(r + ey) - U(r - ey)) / (2 * h)};
}

struct Refined {
    Eigen::Vector2d position;
    bool converged = false;
};

// Compass search over 8 directions, halving the step on failure.
Refined compass(const std::function<double(const Eigen::Vector2d&)>& f, Eigen::Vector2d x, double step,
                double tolerance, int max_steps, int& steps, const std::string& seed) {
    static const std::array<Eigen::Vector2d, 8> dirs = {
        Eigen::Vector2d(1, 0),  Eigen::Vector2d(-1, 0), Eigen::Vector2d(0, 1),
        Eigen::Vector2d(0, -1), Eigen::Vector2d(1, 1).normalized(), Eigen::Vector2d(-1, 1).normalized(),
        Eigen::Vector2d(1, -1).normalized(), Eigen::Vector2d(-1, -1).normalized()};
    double fx = f(x);
    while (step >= tolerance) {
        if (++steps > max_steps)
            throw NumericalError(fmt::format("refinement from seed {} did not converge in {} steps", seed, max_steps));
        double best = fx;
        Eigen::Vector2d best_x = x;
        for (const auto& d : dirs) {
            const Eigen::Vector2d t = x + step * d;
            const double ft = f(t);
            if (ft < best) {
                best = ft;
                best_x = t;
            }
        }
        if (best < fx) {
            x = best_x;
            fx = best;
        } else {
            step *= 0.5;
        }
    }
    return {x, true};
}

// Newton iteration on the finite-difference gradient; stays within max_travel of start.
Refined newton_polish(const Evaluator& U, Eigen::Vector2d x, double h, double tolerance, double max_travel,
                      int max_steps, int& steps) {
    const Eigen::Vector2d start = x;
    for (int it = 0; it < 100; ++it) {
        if (++steps > max_steps) return {x, false};
        const Eigen::Vector2d g = fd_gradient(U, x, h);
        const Eigen::Matrix2d H = fd_hessian(U, x, h);
        if (std::abs(H.determinant()) == 0.0) return {x, false};
        const Eigen::Vector2d dx = -H.ldlt().solve(g);
        if (!dx.allFinite()) return {x, false};
        x += dx;
        if ((x - start).norm() > max_travel) return {x, false};
        if (dx.norm() < tolerance) return {x, true};
    }
    return {x, false};
}

}  // namespace

CriticalPoint refine_minimum(const Evaluator& U, const Eigen::Vector2d& start, double initial_step, double scale,
                             ExtremaOptions options) {
    int steps = 0;
    const std::string seed = fmt::format("({:.6g}, {:.6g})", start.x(), start.y());
    Refined r = compass(U, start, initial_step, options.step_tolerance * scale, options.max_steps, steps, seed);
    const double h = options.hessian_step * scale;
    Refined p = newton_polish(U, r.position, h, options.step_tolerance * scale, 4 * initial_step, options.max_steps,
                              steps);
    const Eigen::Vector2d x = p.converged ? p.position : r.position;
    return {x, U(x), classify_hessian(fd_hessian(U, x, h)), {}};
}

std::vector<CriticalPoint> find_extrema(const PotentialGrid& grid, const Evaluator& U, ExtremaOptions options) {
    const UnitCell& cell = grid.cell;
    const double scale = cell.scale();
    const double spacing = std::min(cell.a1.norm() / grid.nx, cell.a2.norm() / grid.ny);
    const double h = options.hessian_step * scale;
    const double tol = options.step_tolerance * scale;
    const double range = grid.range();
    const int nx = grid.nx, ny = grid.ny;

    // Gradient magnitude on the grid, for saddle seeds.
    Eigen::Matrix2d M;
    M << cell.a1, cell.a2;
    const Eigen::Matrix2d MinvT = M.inverse().transpose();
    std::vector<double> g2(grid.values.size());
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const Eigen::Vector2d gf((grid.at(i + 1, j) - grid.at(i - 1, j)) * nx / 2.0,
                                     (grid.at(i, j + 1) - grid.at(i, j - 1)) * ny / 2.0);
            g2[static_cast<std::size_t>(i) * ny + j] = (MinvT * gf).squaredNorm();
        }
    auto g2at = [&](int i, int j) {
        i = ((i % nx) + nx) % nx;
        j = ((j % ny) + ny) % ny;
        return g2[static_cast<std::size_t>(i) * ny + j];
    };

    // Local-extremum test against the 8 neighbours: <= all, < at least one.
    auto is_local_min = [](auto&& value, int i, int j) {
        const double c = value(i, j);
        bool strict = false;
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
                if (di == 0 && dj == 0) continue;
                const double v = value(i + di, j + dj);
                if (v < c) return false;
                if (v > c) strict = true;
            }
        return strict;
    };
    auto U_grid = [&](int i, int j) { return grid.at(i, j); };
    auto negU_grid = [&](int i, int j) { return -grid.at(i, j); };

    enum class SeedKind { Min, Max, Saddle };
    struct Seed {
        int i, j;
        SeedKind kind;
    };
    std::vector<Seed> seeds;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            if (is_local_min(U_grid, i, j)) seeds.push_back({i, j, SeedKind::Min});
            else if (is_local_min(negU_grid, i, j)) seeds.push_back({i, j, SeedKind::Max});
            else if (is_local_min(g2at, i, j)) seeds.push_back({i, j, SeedKind::Saddle});
        }

    const Evaluator negU = [&](const Eigen::Vector2d& r) { return -U(r); };
    const Evaluator grad2 = [&](const Eigen::Vector2d& r) { return central_gradient(U, r, 1e-5 * scale).squaredNorm(); };

    std::vector<CriticalPoint> out;
    for (const Seed& s : seeds) {
        const std::string name = fmt::format("grid ({}, {})", s.i, s.j);
        int steps = 0;
        const Evaluator& objective = s.kind == SeedKind::Min ? U : (s.kind == SeedKind::Max ? negU : grad2);
        Refined r = compass(objective, grid.point(s.i, s.j), 0.5 * spacing, tol, options.max_steps, steps, name);
        Refined p = newton_polish(U, r.position, h, tol, 4 * spacing, options.max_steps, steps);
        if (steps > options.max_steps)
            throw NumericalError(fmt::format("refinement from seed {} did not converge in {} steps", name,
                                             options.max_steps));
        Eigen::Vector2d x = p.converged ? p.position : r.position;
        if (!p.converged && s.kind == SeedKind::Saddle) continue;

        // Reject points that are not stationary (spurious |grad U|^2 minima).
        const double grad = fd_gradient(U, x, h).norm();
        if (range > 0 && grad * scale > 1e-6 * range) continue;
        if (range == 0) continue;

        const PointKind kind = classify_hessian(fd_hessian(U, x, h));
        x = cell.wrap(x);
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const CriticalPoint& c) {
            return cell.minimum_image(c.position - x).norm() < options.merge_tolerance * scale;
        });
        if (duplicate) continue;
        out.push_back({x, U(x), kind, {}});
    }

    std::stable_sort(out.begin(), out.end(), [&](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.value < b.value;
    });
    return out;
}

// -------------------------------------------------------------- paths

std::vector<PathSample> path_potential(const Evaluator& U, const std::vector<Waypoint>& waypoints,
                                       int samples_per_segment) {
    if (waypoints.size() < 2) throw ValidationError("a path needs at least two waypoints");
    if (samples_per_segment < 2) throw ValidationError("samples per segment must be at least 2");
    std::vector<PathSample> out;
    out.push_back({0.0, waypoints.front().position, U(waypoints.front().position), waypoints.front().label});
    double s = 0.0;
    for (std::size_t w = 1; w < waypoints.size(); ++w) {
        const Eigen::Vector2d a = waypoints[w - 1].position, b = waypoints[w].position;
        const double len = (b - a).norm();
        if (len == 0.0) continue;
        const int n = samples_per_segment - 1;
        for (int k = 1; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            const Eigen::Vector2d r = a + t * (b - a);
            out.push_back({s + t * len, r, U(r), k == n ? waypoints[w].label : std::string{}});
        }
        s += len;
    }
    return out;
}

// ------------------------------------------------------------- barriers

namespace {

struct ImageRef {
    std::size_t index;
    std::array<int, 2> shift;
    double distance;
};

ImageRef nearest_image(const UnitCell& cell, const std::vector<CriticalPoint>& minima, const Eigen::Vector2d& r) {
    ImageRef best{0, {0, 0}, std::numeric_limits<double>::infinity()};
    for (std::size_t m = 0; m < minima.size(); ++m) {
        const Eigen::Vector2d f = cell.fractional(r) - cell.fractional(minima[m].position);
        const int r1 = static_cast<int>(std::lround(f.x())), r2 = static_cast<int>(std::lround(f.y()));
        for (int i = r1 - 1; i <= r1 + 1; ++i)
            for (int j = r2 - 1; j <= r2 + 1; ++j) {
                const double d = (minima[m].position + cell.translation(i, j) - r).norm();
                if (d < best.distance) best = {m, {i, j}, d};
            }
    }
    return best;
}

// Normalized steepest descent with an adaptive step.
Eigen::Vector2d descend(const Evaluator& U, Eigen::Vector2d x, double scale) {
    double step = 0.005 * scale;
    double ux = U(x);
    for (int it = 0; it < 20000 && step > 1e-8 * scale; ++it) {
        const Eigen::Vector2d g = central_gradient(U, x, 1e-6 * scale);
        const double gn = g.norm();
        if (gn == 0.0) break;
        const Eigen::Vector2d t = x - step * g / gn;
        const double ut = U(t);
        if (ut < ux) {
            x = t;
            ux = ut;
            step = std::min(step * 1.5, 0.02 * scale);
        } else {
            step *= 0.5;
        }
    }
    return x;
}

}  // namespace

BarrierReport bond_barriers(const Evaluator& U, const UnitCell& cell, const std::vector<CriticalPoint>& points,
                            double adjacency_radius) {
    const auto minima = select(points, PointKind::Minimum);
    const auto saddles = select(points, PointKind::Saddle);
    const double scale = cell.scale();
    const double h = 1e-4 * scale;
    BarrierReport report;

    for (std::size_t i = 0; i < minima.size(); ++i)
        for (std::size_t j = i; j < minima.size(); ++j)
            for (int n1 = -2; n1 <= 2; ++n1)
                for (int n2 = -2; n2 <= 2; ++n2) {
                    if (i == j && (n1 < 0 || (n1 == 0 && n2 <= 0))) continue;
                    const Eigen::Vector2d pa = minima[i].position;
                    const Eigen::Vector2d pb = minima[j].position + cell.translation(n1, n2);
                    const Eigen::Vector2d d = pb - pa;
                    const double len = d.norm();
                    if (!(len < adjacency_radius)) continue;

                    struct Candidate {
                        Eigen::Vector2d position;
                        double value;
                    };
                    std::vector<Candidate> cands;
                    for (const auto& s : saddles)
                        for (int m1 = -2; m1 <= 2; ++m1)
                            for (int m2 = -2; m2 <= 2; ++m2) {
                                const Eigen::Vector2d q = s.position + cell.translation(m1, m2);
                                const double t = (q - pa).dot(d) / (len * len);
                                if (t <= 0.0 || t >= 1.0) continue;
                                if (((q - pa) - t * d).norm() >= 0.5 * len) continue;
                                cands.push_back({q, s.value});
                            }
                    std::stable_sort(cands.begin(), cands.end(),
                                     [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

                    auto accept_saddle = [&](const Eigen::Vector2d& q, double value) {
                        const Eigen::Matrix2d H = fd_hessian(U, q, h);
                        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
                        if (!(es.eigenvalues()[0] < 0.0)) return false;
                        const Eigen::Vector2d v = es.eigenvectors().col(0);
                        const double kick = 0.02 * len;
                        const ImageRef e1 = nearest_image(cell, minima, descend(U, q + kick * v, scale));
                        const ImageRef e2 = nearest_image(cell, minima, descend(U, q - kick * v, scale));
                        const double accept = 0.05 * len;
                        if (e1.distance > accept || e2.distance > accept) return false;
                        const std::array<int, 2> want{n1, n2};
                        auto rel = [](const ImageRef& a, const ImageRef& b) {
                            return std::array<int, 2>{b.shift[0] - a.shift[0], b.shift[1] - a.shift[1]};
                        };
                        const bool forward = e1.index == i && e2.index == j && rel(e1, e2) == want;
                        const bool backward = e2.index == i && e1.index == j && rel(e2, e1) == want;
                        if (!forward && !backward) return false;
                        if (value < std::max(minima[i].value, minima[j].value)) return false;
                        BondBarrier b;
                        b.site_a = i;
                        b.site_b = j;
                        b.image = want;
                        b.position_a = pa;
                        b.position_b = pb;
                        b.saddle_position = q;
                        b.value_a = minima[i].value;
                        b.value_b = minima[j].value;
                        b.saddle_value = value;
                        b.barrier_a = value - b.value_a;
                        b.barrier_b = value - b.value_b;
                        report.bonds.push_back(b);
                        return true;
                    };

                    bool found = false;
                    for (const auto& c : cands)
                        if ((found = accept_saddle(c.position, c.value))) break;

                    // The grid can miss a shallow saddle. Seed one from the minimax
                    // profile across the strip (lowest point on each perpendicular
                    // line, highest such point along the bond) and polish it.
                    if (!found) {
                        constexpr int kAlong = 48, kAcross = 48;
                        const Eigen::Vector2d nrm(-d.y() / len, d.x() / len);
                        Eigen::Vector2d seed = pa;
                        double seed_value = -std::numeric_limits<double>::infinity();
                        for (int a = 1; a < kAlong; ++a) {
                            const Eigen::Vector2d base = pa + (static_cast<double>(a) / kAlong) * d;
                            Eigen::Vector2d low = base;
                            double low_value = std::numeric_limits<double>::infinity();
                            for (int c = -kAcross / 2; c <= kAcross / 2; ++c) {
                                const Eigen::Vector2d r = base + (static_cast<double>(c) / kAcross) * len * nrm;
                                const double ur = U(r);
                                if (ur < low_value) {
                                    low_value = ur;
                                    low = r;
                                }
                            }
                            if (low_value > seed_value) {
                                seed_value = low_value;
                                seed = low;
                            }
                        }
                        int steps = 0;
                        const Refined p = newton_polish(U, seed, h, 1e-10 * scale, 0.25 * len, 200, steps);
                        if (p.converged) found = accept_saddle(p.position, U(p.position));
                    }
                    if (!found)
                        report.diagnostics.push_back(fmt::format(
                            "no saddle confirmed between minimum {} and minimum {} (image {},{}) in its strip", i, j,
                            n1, n2));
                }
    return report;
}

// ------------------------------------------------------ classification

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::DoubleWellLR: return "DoubleWellLR";
        case Geometry::DoubleWellLL: return "DoubleWellLL";
        case Geometry::DoubleWellLRt: return "DoubleWellLRt";
        case Geometry::IsolatedSquare: return "IsolatedSquare";
        case Geometry::IsolatedTriangle: return "IsolatedTriangle";
        case Geometry::IsolatedHexagon: return "IsolatedHexagon";
        case Geometry::SimpleBravais: return "SimpleBravais";
        case Geometry::Unknown: return "Unknown";
    }
    return "Unknown";
}

Geometry classify_geometry(const std::vector<CriticalPoint>& minima, const std::vector<BondBarrier>& bonds) {
    const std::size_t n = minima.size();
    if (n == 1) return Geometry::SimpleBravais;
    if (n == 0 || bonds.empty()) return Geometry::Unknown;

    double hmin = std::numeric_limits<double>::infinity(), hmax = -hmin;
    for (const auto& b : bonds) {
        hmin = std::min(hmin, b.height());
        hmax = std::max(hmax, b.height());
    }
    const double spread = hmax - hmin;
    if (!(spread > 1e-6 * std::max(std::abs(hmax), std::abs(hmin)))) return Geometry::Unknown;
    const double threshold = (hmin > 0 ? std::sqrt(hmin * hmax) : 0.5 * (hmin + hmax)) - 1e-6 * spread;

    // Union-find carrying each node's lattice offset relative to its parent.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<std::array<int, 2>> offset(n, {0, 0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) -> std::size_t {
        if (parent[x] == x) return x;
        const std::size_t root = find(parent[x]);
        const auto& po = offset[parent[x]];
        if (parent[x] != root) {
            offset[x] = {offset[x][0] + po[0], offset[x][1] + po[1]};
        }
        parent[x] = root;
        return root;
    };
    auto root_offset = [&](std::size_t x) {
        find(x);
        return offset[x];
    };

    std::vector<bool> percolates(n, false);
    std::vector<const BondBarrier*> low;
    for (const auto& b : bonds) {
        if (!(b.height() < threshold)) continue;
        low.push_back(&b);
        const std::size_t ra = find(b.site_a), rb = find(b.site_b);
        const auto oa = root_offset(b.site_a), ob = root_offset(b.site_b);
        if (ra == rb) {
            if (ob[0] - oa[0] != b.image[0] || ob[1] - oa[1] != b.image[1]) percolates[ra] = true;
            continue;
        }
        parent[rb] = ra;
        offset[rb] = {oa[0] + b.image[0] - ob[0], oa[1] + b.image[1] - ob[1]};
        percolates[ra] = percolates[ra] || percolates[rb];
    }

    std::vector<std::size_t> size(n, 0), edges(n, 0);
    for (std::size_t x = 0; x < n; ++x) ++size[find(x)];
    for (const auto* b : low) ++edges[find(b->site_a)];

    std::size_t motif = 0;
    for (std::size_t x = 0; x < n; ++x) {
        if (find(x) != x) continue;
        if (percolates[x]) return Geometry::Unknown;
        if (motif == 0) motif = size[x];
        if (size[x] != motif) return Geometry::Unknown;
        if (motif >= 3 && edges[x] < motif) return Geometry::Unknown;  // open chain, not a ring
    }

    switch (motif) {
        case 4: return Geometry::IsolatedSquare;
        case 3: return Geometry::IsolatedTriangle;
        case 6: return Geometry::IsolatedHexagon;
        case 2: break;
        default: return Geometry::Unknown;
    }

    // Dimers: orientation of the pairing bond, modulo 180 degrees.
    std::optional<Geometry> kind;
    for (const auto* b : low) {
        const Eigen::Vector2d d = b->position_b - b->position_a;
        double deg = std::atan2(d.y(), d.x()) * 180.0 / std::numbers::pi;
        deg = std::fmod(deg + 360.0, 180.0);
        Geometry g;
        if (deg < 15.0 || deg > 165.0) g = Geometry::DoubleWellLR;
        else if (std::abs(deg - 60.0) < 15.0) g = Geometry::DoubleWellLL;
        else if (std::abs(deg - 120.0) < 15.0) g = Geometry::DoubleWellLRt;
        else return Geometry::Unknown;
        if (kind && *kind != g) return Geometry::Unknown;
        kind = g;
    }
    return kind.value_or(Geometry::Unknown);
}

// ------------------------------------------------------------- solver

double solve_phase_offset(const std::function<double(double)>& f, double target, double lo, double hi,
                          BisectionOptions options) {
    if (!(lo < hi)) throw ValidationError("bracket must satisfy lo < hi");
    double flo = f(lo) - target, fhi = f(hi) - target;
    if (!std::isfinite(flo) || !std::isfinite(fhi)) throw NumericalError("depth difference is not finite on the bracket");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw BracketError(fmt::format("no sign change on [{:.9g}, {:.9g}]: f-target = {:.6g} and {:.6g}", lo, hi,
                                       flo, fhi));
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < options.max_iterations; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid) - target;
        if (!std::isfinite(fm)) throw NumericalError("depth difference is not finite inside the bracket");
        if (fm == 0.0 || std::abs(fm) < options.relative_tolerance * std::abs(target)) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

// ---------------------------------------------------------------- sites

std::vector<SiteMatch> match_sites(const UnitCell& cell, const std::vector<CriticalPoint>& minima,
                                   const std::vector<Waypoint>& nominal) {
    std::vector<SiteMatch> out;
    if (minima.empty()) return out;
    for (const auto& w : nominal) {
        const ImageRef r = nearest_image(cell, minima, w.position);
        const Eigen::Vector2d pos = minima[r.index].position + cell.translation(r.shift[0], r.shift[1]);
        out.push_back({w.label, r.index, pos, minima[r.index].value, r.distance});
    }
    return out;
}

std::vector<CriticalPoint> select(const std::vector<CriticalPoint>& points, PointKind kind) {
    std::vector<CriticalPoint> out;
    std::copy_if(points.begin(), points.end(), std::back_inserter(out),
                 [&](const CriticalPoint& c) { return c.kind == kind; });
    return out;
}

bool equal_depths(const std::vector<double>& values, double range, double tolerance) {
    if (values.empty()) return true;
    for (double v : values)
        if (std::abs(v - values.front()) > tolerance * range) return false;
    return true;
}

}  // namespace superlattice
