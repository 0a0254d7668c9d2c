#include "doctest.h"

#include "superlattice/error.hpp"
#include "superlattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace superlattice;
using std::numbers::pi;

namespace {

// cos(kx) cos(ky) with k = 1e7 / m; primitive cell spanned by (pi/k)(1, +-1).
constexpr double kK = 1e7;
const Evaluator kEggCrate = [](const Eigen::Vector2d& r) { return std::cos(kK * r.x()) * std::cos(kK * r.y()); };
const UnitCell kEggCell(Eigen::Vector2d(pi / kK, pi / kK), Eigen::Vector2d(pi / kK, -pi / kK));

// Asymmetric double well along x, plain well along y, square cell of side L.
constexpr double kL = 1e-6;
const Evaluator kDoubleWell = [](const Eigen::Vector2d& r) {
    return -std::cos(4 * pi * r.x() / kL) - 0.5 * std::cos(2 * pi * r.x() / kL) - std::cos(2 * pi * r.y() / kL);
};
const UnitCell kSquareCell(Eigen::Vector2d(kL, 0), Eigen::Vector2d(0, kL));

double image_distance(const UnitCell& cell, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return cell.minimum_image(a - b).norm();
}

const CriticalPoint* find_near(const std::vector<CriticalPoint>& pts, const UnitCell& cell, const Eigen::Vector2d& r,
                               double tol) {
    for (const auto& p : pts)
        if (image_distance(cell, p.position, r) < tol) return &p;
    return nullptr;
}

CriticalPoint minimum_at(double x, double y) { return {Eigen::Vector2d(x, y), 0.0, PointKind::Minimum, ""}; }

BondBarrier bond(const std::vector<CriticalPoint>& m, std::size_t a, std::size_t b, std::array<int, 2> image,
                 double height, const UnitCell& cell) {
    BondBarrier out;
    out.site_a = a;
    out.site_b = b;
    out.image = image;
    out.position_a = m[a].position;
    out.position_b = m[b].position + cell.translation(image[0], image[1]);
    out.saddle_position = 0.5 * (out.position_a + out.position_b);
    out.saddle_value = height;
    out.barrier_a = out.barrier_b = height;
    return out;
}

struct Synthetic {
    UnitCell cell{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    std::vector<CriticalPoint> minima;
    std::vector<BondBarrier> bonds;
};

// Four minima per unit cell; intra-square bonds have height `intra`, the others `inter_x` / `inter_y`.
Synthetic square_plaquettes(double intra, double inter_x, double inter_y, Eigen::Vector2d shift = {0, 0}) {
    Synthetic s;
    for (auto [x, y] : {std::pair{0.3, 0.3}, {0.7, 0.3}, {0.7, 0.7}, {0.3, 0.7}})
        s.minima.push_back(minimum_at(x + shift.x(), y + shift.y()));
    const auto& m = s.minima;
    s.bonds = {bond(m, 0, 1, {0, 0}, intra, s.cell),   bond(m, 1, 2, {0, 0}, intra, s.cell),
               bond(m, 2, 3, {0, 0}, intra, s.cell),   bond(m, 3, 0, {0, 0}, intra, s.cell),
               bond(m, 1, 0, {1, 0}, inter_x, s.cell), bond(m, 2, 3, {1, 0}, inter_x, s.cell),
               bond(m, 2, 1, {0, 1}, inter_y, s.cell), bond(m, 3, 0, {0, 1}, inter_y, s.cell)};
    return s;
}

}  // namespace

TEST_CASE("unit cell") {
    const UnitCell c(Eigen::Vector2d(2, 0), Eigen::Vector2d(1, std::sqrt(3.0)), Eigen::Vector2d(0.5, 0.5));
    CHECK(c.area() == doctest::Approx(2 * std::sqrt(3.0)));
    const Eigen::Vector2d r(3.7, -2.2);
    CHECK((c.cartesian(c.fractional(r)) - r).norm() < 1e-14);
    const Eigen::Vector2d f = c.fractional(c.wrap(r));
    CHECK(f.x() >= 0.0);
    CHECK(f.x() < 1.0);
    CHECK(f.y() >= 0.0);
    CHECK(f.y() < 1.0);
    CHECK(c.minimum_image(c.translation(3, -2) + Eigen::Vector2d(0.1, 0)).norm() == doctest::Approx(0.1));
    CHECK_THROWS_AS(UnitCell(Eigen::Vector2d(1, 1), Eigen::Vector2d(2, 2)), ValidationError);
}

TEST_CASE("grid sampling") {
    const UnitCell cell(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 2));
    const PotentialGrid g = sample_grid([](const Eigen::Vector2d& r) { return r.x() + 10 * r.y(); }, cell, 8, 16);
    CHECK(g.values.size() == 128);
    CHECK(g.at(3, 5) == doctest::Approx(3.0 / 8 + 10 * 2 * 5.0 / 16));
    CHECK(g.at(11, -11) == g.at(3, 5));
    CHECK(g.min() == 0.0);
    const PotentialGrid flat = sample_grid([](const Eigen::Vector2d&) { return 4.0; }, cell, 8, 8);
    CHECK(flat.range() == 0.0);
    CHECK_THROWS_AS(sample_grid(kEggCrate, cell, 7, 8), ValidationError);
    CHECK_THROWS_AS(sample_grid([](const Eigen::Vector2d&) { return std::nan(""); }, cell, 8, 8), NumericalError);
}

TEST_CASE("critical points of the egg-crate landscape") {
    const PotentialGrid g = sample_grid(kEggCrate, kEggCell, 64, 64);
    const auto pts = find_extrema(g, kEggCrate);
    CHECK(select(pts, PointKind::Minimum).size() == 1);
    CHECK(select(pts, PointKind::Maximum).size() == 1);
    CHECK(select(pts, PointKind::Saddle).size() == 2);
    const double tol = 1e-8 * kEggCell.scale();
    struct Expected {
        Eigen::Vector2d r;
        PointKind kind;
    };
    const std::vector<Expected> expected{{{pi / kK, 0}, PointKind::Minimum},
                                         {{0, 0}, PointKind::Maximum},
                                         {{pi / (2 * kK), pi / (2 * kK)}, PointKind::Saddle},
                                         {{pi / (2 * kK), -pi / (2 * kK)}, PointKind::Saddle}};
    for (const auto& e : expected) {
        const CriticalPoint* p = find_near(pts, kEggCell, e.r, tol);
        REQUIRE(p != nullptr);
        CHECK(p->kind == e.kind);
    }
}

TEST_CASE("flat landscape has no critical points") {
    const Evaluator flat = [](const Eigen::Vector2d&) { return -1.0; };
    CHECK(find_extrema(sample_grid(flat, kSquareCell, 16, 16), flat).empty());
}

TEST_CASE("finite-difference helpers") {
    const Eigen::Vector2d r(0.3e-7, 1.1e-7);
    const Eigen::Vector2d g = fd_gradient(kEggCrate, r, 1e-10);
    CHECK(g.x() == doctest::Approx(-kK * std::sin(kK * r.x()) * std::cos(kK * r.y())).epsilon(1e-6));
    CHECK(classify_hessian(Eigen::Matrix2d{{1, 0}, {0, 2}}) == PointKind::Minimum);
    CHECK(classify_hessian(Eigen::Matrix2d{{-1, 0.2}, {0.2, -2}}) == PointKind::Maximum);
    CHECK(classify_hessian(Eigen::Matrix2d{{0, 1}, {1, 0}}) == PointKind::Saddle);
    const CriticalPoint m = refine_minimum(kEggCrate, Eigen::Vector2d(2.9 / kK, 0.2 / kK), 0.05 / kK, kEggCell.scale());
    CHECK(std::abs(m.position.x() - pi / kK) < 1e-8 * kEggCell.scale());
    CHECK(m.value == doctest::Approx(-1.0));
}

TEST_CASE("path profiles") {
    const std::vector<Waypoint> w{{"P", {0, 0}}, {"Q", {kL / 2, 0}}, {"R", {kL / 2, 0}}, {"S", {kL / 2, kL / 2}}};
    const auto path = path_potential(kDoubleWell, w, 11);
    CHECK(path.size() == 21);
    CHECK(path.front().label == "P");
    CHECK(path[10].label == "Q");
    CHECK(path.back().label == "S");
    CHECK(path.back().arclength == doctest::Approx(kL));
    CHECK(path.front().value == doctest::Approx(-2.5));
    CHECK_THROWS_AS(path_potential(kDoubleWell, {w[0]}), ValidationError);
    CHECK_THROWS_AS(path_potential(kDoubleWell, w, 1), ValidationError);
}

TEST_CASE("barriers of the analytic double well") {
    const PotentialGrid g = sample_grid(kDoubleWell, kSquareCell, 64, 64);
    const auto pts = find_extrema(g, kDoubleWell);
    const auto minima = select(pts, PointKind::Minimum);
    REQUIRE(minima.size() == 2);
    CHECK(select(pts, PointKind::Saddle).size() == 4);
    CHECK(select(pts, PointKind::Maximum).size() == 2);
    CHECK(minima[0].value == doctest::Approx(-2.5).epsilon(1e-10));
    CHECK(minima[1].value == doctest::Approx(-1.5).epsilon(1e-10));

    const BarrierReport rep = bond_barriers(kDoubleWell, kSquareCell, pts, 0.6 * kL);
    CHECK(rep.diagnostics.empty());
    int found = 0;
    for (const auto& b : rep.bonds) {
        if (b.site_a == b.site_b) continue;
        ++found;
        CHECK(std::abs(b.saddle_value - 0.03125) < 1e-8);
        const double deep = b.value_a < b.value_b ? b.barrier_a : b.barrier_b;
        const double shallow = b.value_a < b.value_b ? b.barrier_b : b.barrier_a;
        CHECK(std::abs(deep - 2.53125) < 1e-8);
        CHECK(std::abs(shallow - 1.53125) < 1e-8);
    }
    CHECK(found == 2);  // one saddle on each side of the deep well
}

TEST_CASE("geometry classification of synthetic bond graphs") {
    const Synthetic sq = square_plaquettes(1, 10, 10);
    CHECK(classify_geometry(sq.minima, sq.bonds) == Geometry::IsolatedSquare);

    SUBCASE("translation invariance") {
        const Synthetic moved = square_plaquettes(1, 10, 10, {0.13, -0.41});
        CHECK(classify_geometry(moved.minima, moved.bonds) == Geometry::IsolatedSquare);
    }
    SUBCASE("permutation invariance") {
        const std::vector<std::size_t> perm{2, 0, 3, 1};  // new index of each old minimum
        std::vector<CriticalPoint> m(4);
        for (std::size_t i = 0; i < 4; ++i) m[perm[i]] = sq.minima[i];
        std::vector<BondBarrier> b = sq.bonds;
        for (auto& x : b) {
            x.site_a = perm[x.site_a];
            x.site_b = perm[x.site_b];
        }
        std::reverse(b.begin(), b.end());
        CHECK(classify_geometry(m, b) == Geometry::IsolatedSquare);
    }
    SUBCASE("chains percolate") {
        const Synthetic chain = square_plaquettes(1, 1, 10);
        CHECK(classify_geometry(chain.minima, chain.bonds) == Geometry::Unknown);
    }
    SUBCASE("uniform bonds") {
        const Synthetic uniform = square_plaquettes(3, 3, 3);
        CHECK(classify_geometry(uniform.minima, uniform.bonds) == Geometry::Unknown);
    }
}

TEST_CASE("dimer orientation and single-site cells") {
    Synthetic s;
    s.minima = {minimum_at(0.3, 0.5), minimum_at(0.7, 0.5)};
    s.bonds = {bond(s.minima, 0, 1, {0, 0}, 1, s.cell), bond(s.minima, 1, 0, {1, 0}, 10, s.cell),
               bond(s.minima, 0, 0, {0, 1}, 10, s.cell), bond(s.minima, 1, 1, {0, 1}, 10, s.cell)};
    CHECK(classify_geometry(s.minima, s.bonds) == Geometry::DoubleWellLR);

    Synthetic t;
    const double c = 0.2 * std::cos(pi / 3), d = 0.2 * std::sin(pi / 3);
    t.minima = {minimum_at(0.4, 0.4), minimum_at(0.4 + c, 0.4 + d)};
    t.bonds = {bond(t.minima, 0, 1, {0, 0}, 1, t.cell), bond(t.minima, 1, 0, {1, 0}, 10, t.cell),
               bond(t.minima, 1, 0, {0, 1}, 10, t.cell)};
    CHECK(classify_geometry(t.minima, t.bonds) == Geometry::DoubleWellLL);

    CHECK(classify_geometry({minimum_at(0.5, 0.5)}, {}) == Geometry::SimpleBravais);
    CHECK(classify_geometry({}, {}) == Geometry::Unknown);
}

TEST_CASE("phase-offset solver") {
    const auto f = [](double x) { return std::sin(x); };
    CHECK(std::abs(solve_phase_offset(f, 0.5, 0.0, 1.5) - pi / 6) < 1e-9);
    CHECK(std::abs(solve_phase_offset(f, 0.0, -1.0, 2.0)) < 1e-12);
    CHECK_THROWS_AS(solve_phase_offset(f, 0.5, 2.0, 2.5), BracketError);
    CHECK_THROWS_AS(solve_phase_offset(f, 0.5, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(solve_phase_offset([](double) { return std::nan(""); }, 0.0, 0.0, 1.0), NumericalError);
}

TEST_CASE("site matching and depth equality") {
    const std::vector<CriticalPoint> m{{Eigen::Vector2d(0.25, 0.5), -3.0, PointKind::Minimum, ""},
                                       {Eigen::Vector2d(0.75, 0.5), -2.0, PointKind::Minimum, ""}};
    const UnitCell cell(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1));
    const auto s = match_sites(cell, m, {{"A", {1.24, 0.5}}, {"B", {-0.26, 0.52}}});
    REQUIRE(s.size() == 2);
    CHECK(s[0].index == 0);
    CHECK(s[0].position.x() == doctest::Approx(1.25));
    CHECK(s[1].index == 1);
    CHECK(s[1].value == -2.0);
    CHECK(equal_depths({1.0, 1.0 + 1e-9}, 1.0));
    CHECK_FALSE(equal_depths({1.0, 1.0 + 1e-3}, 1.0));
}
