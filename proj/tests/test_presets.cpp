#include "doctest.h"

#include "support/test_support.hpp"

#include "superlattice/error.hpp"

#include <numbers>

using namespace superlattice;
using testing::params;
using testing::rb87;
using testing::state;
using std::numbers::pi;

namespace {

double value_range(const LightShift& U, const UnitCell& cell) {
    const PotentialGrid g = sample_grid([&](const Eigen::Vector2d& r) { return U(r); }, cell, 32, 32);
    return g.range();
}

Eigen::Vector2d rotate(const Eigen::Vector2d& v, double angle) {
    return Eigen::Rotation2Dd(angle) * v;
}

}  // namespace

TEST_CASE("parameter handling") {
    for (const auto& name : preset_names()) {
        const PresetParams p = default_params(name);
        CHECK(p.family == name);
        CHECK(p.get("wavelength_nm") == 1064.0);
        CHECK_THROWS_AS(p.get("no_such_key"), ConfigurationError);
    }
    CHECK_THROWS_AS(default_params("kagome"), ConfigurationError);
    PresetParams p = default_params("isolated_square");
    set_param(p, "theta2", "0.2pi");
    CHECK(p.get("theta2") == doctest::Approx(0.2 * pi));
    CHECK_THROWS_AS(set_param(p, "theta3", "1"), ConfigurationError);
    CHECK_THROWS_AS(set_param(p, "d1", "abc"), ConfigurationError);
    set_param(p, "enforce_detuning", "false");
    CHECK(p.get("enforce_detuning") == 0.0);
}

TEST_CASE("number parsing") {
    CHECK(parse_number("0.8pi") == doctest::Approx(0.8 * pi));
    CHECK(parse_number("pi") == doctest::Approx(pi));
    CHECK(parse_number("-pi") == doctest::Approx(-pi));
    CHECK(parse_number("1.5e-7") == 1.5e-7);
    CHECK(std::isinf(parse_number("inf")));
    CHECK_THROWS_AS(parse_number("pie"), ConfigurationError);
    CHECK_THROWS_AS(parse_number(""), ConfigurationError);
}

TEST_CASE("illegal configurations") {
    CHECK_THROWS_AS(build_preset(rb87(), state(1, 0), params("isolated_triangular", {{"pol1", "in"}})), ConfigurationError);
    CHECK_THROWS_AS(build_preset(rb87(), state(1, 0), params("isolated_hexagonal", {{"pol2", "in"}})), ConfigurationError);
    CHECK_THROWS_AS(build_preset(rb87(), state(1, 0), params("isolated_square", {{"wavelength_nm", "700"}})),
                    ConfigurationError);
    PresetParams tri = default_params("isolated_triangular");
    CHECK_THROWS_AS(set_param(tri, "pol1", "diagonal"), ConfigurationError);
    CHECK_NOTHROW(build_preset(rb87(), state(1, 0),
                               params("isolated_square", {{"wavelength_nm", "700"}, {"enforce_detuning", "false"}})));
    for (const auto& name : preset_names())
        CHECK_THROWS_AS(build_preset(rb87(), state(2, 1), default_params(name)), InputError);
}

TEST_CASE("presets are periodic and symmetric") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        const Preset P = build_preset(rb87(), state(1, 0), default_params(name));
        REQUIRE(P.cell.has_value());
        const LightShift U(rb87(), state(1, 0), P.groups, ShiftMode::E2PlusEpsilon);
        const double range = value_range(U, *P.cell);
        REQUIRE(range > 0.0);
        const double L = P.cell->scale();
        for (int n = 0; n < 30; ++n) {
            const Eigen::Vector2d r = P.center + L * Eigen::Vector2d(u(rng), u(rng));
            const double v = U(r);
            CHECK(std::abs(U(Eigen::Vector2d(r + P.cell->a1)) - v) <= 1e-9 * range);
            CHECK(std::abs(U(Eigen::Vector2d(r - 2 * P.cell->a2)) - v) <= 1e-9 * range);
            const Eigen::Vector2d turned = P.center + rotate(r - P.center, 2 * pi / P.rotation_order);
            CHECK(std::abs(U(turned) - v) <= 1e-6 * range);
        }
    }
}

TEST_CASE("phases are 2 pi periodic") {
    for (const auto& [name, key] : {std::pair<std::string, std::string>{"hexagonal_double_well", "theta2"},
                                    {"isolated_square", "phi1"},
                                    {"isolated_triangular", "dphi1"},
                                    {"isolated_hexagonal", "phi3"}}) {
        CAPTURE(name);
        const PresetParams base = params(name, {{key, "0.3"}});
        const PresetParams wrapped = params(name, {{key, testing::num(0.3 + 2 * pi)}});
        const Preset A = build_preset(rb87(), state(1, 0), base), B = build_preset(rb87(), state(1, 0), wrapped);
        const LightShift UA(rb87(), state(1, 0), A.groups, ShiftMode::E2PlusEpsilon);
        const LightShift UB(rb87(), state(1, 0), B.groups, ShiftMode::E2PlusEpsilon);
        for (double t : {0.0, 0.17, 0.61}) {
            const Eigen::Vector2d r = A.center + t * A.cell->a1 + 0.4 * t * A.cell->a2;
            CHECK(testing::rel_diff(UA(r), UB(r)) <= 1e-9);
        }
    }
}

TEST_CASE("isolated hexagonal controls") {
    SUBCASE("default") {
        const auto L = testing::analyze(default_params("isolated_hexagonal"), 128);
        CHECK(L.minima.size() == 6);
        CHECK(L.geometry == Geometry::IsolatedHexagon);
    }
    SUBCASE("without the second lattice") {
        const auto L = testing::analyze(params("isolated_hexagonal", {{"ratio", "inf"}}), 128);
        CHECK(L.minima.size() == 1);
        CHECK(L.geometry == Geometry::SimpleBravais);
    }
    SUBCASE("both sets red-detuned") {
        const auto L = testing::analyze(
            params("isolated_hexagonal", {{"wavelength_nm", "1500"}, {"enforce_detuning", "false"}}), 128);
        CHECK(L.geometry != Geometry::IsolatedHexagon);
    }
}

TEST_CASE("preset JSON round trip") {
    const Preset P = build_preset(rb87(), state(1, 0), default_params("isolated_triangular"));
    const Preset Q = preset_from_json(preset_to_json(P));
    REQUIRE(Q.cell.has_value());
    CHECK((Q.cell->a1 - P.cell->a1).norm() == 0.0);
    CHECK((Q.cell->origin - P.cell->origin).norm() == 0.0);
    REQUIRE(Q.sites.size() == P.sites.size());
    CHECK(Q.sites[1].label == P.sites[1].label);
    CHECK(Q.channel == P.channel);
    CHECK(Q.adjacency_radius == P.adjacency_radius);
    const LightShift UP(rb87(), state(1, 0), P.groups, ShiftMode::E2PlusEpsilon);
    const LightShift UQ(rb87(), state(1, 0), Q.groups, ShiftMode::E2PlusEpsilon);
    const Eigen::Vector2d r(1.3e-7, -0.4e-7);
    CHECK(testing::rel_diff(UP(r), UQ(r)) <= 1e-15);

    nlohmann::json doc = preset_to_json(P);
    doc["sites"][0].erase("position_m");
    CHECK_THROWS_AS(preset_from_json(doc), ParseError);
    const Preset bare = preset_from_json(groups_to_json(P.groups));
    CHECK_FALSE(bare.cell.has_value());
}

TEST_CASE("site depth lookup") {
    const Preset P = build_preset(rb87(), state(1, 0), default_params("isolated_square"));
    const LightShift U(rb87(), state(1, 0), P.groups, ShiftMode::E2PlusEpsilon);
    const Evaluator ev = make_evaluator(U);
    const double a = site_depth(ev, P, "A");
    CHECK(a < 0.0);
    CHECK(testing::rel_diff(site_depth(ev, P, "C"), a) <= 1e-6);
    CHECK_THROWS_AS(site_depth(ev, P, "Z"), InputError);
}

TEST_CASE("square tilt grows with the phase offset") {
    double previous = -1.0;
    for (int i = 0; i <= 4; ++i) {
        const Preset P = build_preset(rb87(), state(1, 0), params("isolated_square", {{"theta2", testing::num(0.1 * pi * i)}}));
        const LightShift U(rb87(), state(1, 0), P.groups, ShiftMode::E2PlusEpsilon);
        const Evaluator ev = make_evaluator(U);
        const double tilt = std::abs(site_depth(ev, P, "A") - site_depth(ev, P, "C"));
        CHECK(tilt > previous);
        previous = tilt;
    }
}
