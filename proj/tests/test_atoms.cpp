#include "doctest.h"

#include "superlattice/atoms.hpp"
#include "superlattice/constants.hpp"
#include "superlattice/error.hpp"

#include "support/test_support.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <set>

using namespace superlattice;
using testing::rb87;
using testing::rb87_json;

namespace {

std::string species_text(const std::function<void(nlohmann::json&)>& edit) {
    nlohmann::json j = rb87_json();
    edit(j);
    return j.dump(2);
}

}  // namespace

TEST_CASE("bundled species file loads") {
    const AtomSpecies& s = rb87();
    CHECK(s.name == "Rb87");
    CHECK(s.I.twice() == 3);
    REQUIRE(s.lines.size() == 2);
    CHECK(s.lines[0].J_upper.twice() == 1);
    CHECK(s.lines[1].J_upper.twice() == 3);
    CHECK(s.lines[0].omega_J == doctest::Approx(constants::omega_from_wavelength(794.978851156e-9)).epsilon(1e-15));
    CHECK(s.ground.hyperfine.B_hfs == 0.0);
}

TEST_CASE("species parse and validation errors") {
    SUBCASE("missing Einstein coefficient") {
        const auto text = species_text([](auto& j) { j["lines"][0].erase("A_J_per_s"); });
        try {
            parse_species(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.where() == "$.lines[0].A_J_per_s");
        }
    }
    SUBCASE("F outside the coupling range") {
        const auto text = species_text([](auto& j) { j["lines"][1]["hyperfine"]["F_times2"] = {0, 2, 4, 8}; });
        CHECK_THROWS_AS(parse_species(text), ValidationError);
    }
    SUBCASE("quadrupole constant on a J = 1/2 level") {
        const auto text = species_text([](auto& j) { j["lines"][0]["hyperfine"]["B_hfs_MHz"] = 1.0; });
        CHECK_THROWS_AS(parse_species(text), ValidationError);
    }
    SUBCASE("duplicate term") {
        const auto text = species_text([](auto& j) { j["lines"][1]["term"] = "5P1/2"; });
        CHECK_THROWS_AS(parse_species(text), ValidationError);
    }
    SUBCASE("syntax error reports a line") {
        try {
            parse_species("{\n  \"name\": \"x\",\n  oops\n}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.where() == "line 3");
        }
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(load_species("/nonexistent/species.json"), InputError); }
}

TEST_CASE("hyperfine corrections") {
    const AtomSpecies& s = rb87();
    const auto& g = s.ground.hyperfine;
    const double split = hyperfine_correction(g, s.I, s.ground.J, 2) - hyperfine_correction(g, s.I, s.ground.J, 1);
    CHECK(testing::rel_diff(split, 2 * g.A_hfs) <= 1e-15);

    // B = 0: difference between F = I+J and |I-J| is A (Kmax - Kmin)/2.
    const auto& d1 = s.lines[0].hyperfine;
    const double i = 1.5, j = 0.5;
    const double kmax = 2 * 3 - i * (i + 1) - j * (j + 1), kmin = 1 * 2 - i * (i + 1) - j * (j + 1);
    CHECK(testing::rel_diff(hyperfine_correction(d1, s.I, s.lines[0].J_upper, 2) -
                                hyperfine_correction(d1, s.I, s.lines[0].J_upper, 1),
                            d1.A_hfs * (kmax - kmin) / 2) <= 1e-14);

    // 5P3/2 level spacings, hand-evaluated from the dipole and quadrupole constants.
    const auto& d2 = s.lines[1].hyperfine;
    const double A = 84.7185, B = 12.4965;  // MHz
    std::map<int, double> hand;             // F -> MHz
    for (int F = 0; F <= 3; ++F) {
        const double K = F * (F + 1) - 3.75 - 3.75;
        hand[F] = A * K / 2 + B * (1.5 * K * (K + 1) - 2 * 3.75 * 3.75) / (2 * 1.5 * 2 * 2 * 1.5 * 2);
    }
    for (int F = 1; F <= 3; ++F) {
        const double lib = (hyperfine_correction(d2, s.I, s.lines[1].J_upper, F) -
                            hyperfine_correction(d2, s.I, s.lines[1].J_upper, F - 1)) /
                           constants::kPlanck * 1e-6;
        CHECK(testing::rel_diff(lib, hand[F] - hand[F - 1]) <= 1e-12);
    }
    // Published 5P3/2 spacings: 72.2, 156.9, 266.7 MHz.
    CHECK(hand[1] - hand[0] == doctest::Approx(72.218).epsilon(1e-3));
    CHECK(hand[3] - hand[2] == doctest::Approx(266.65).epsilon(1e-3));

    CHECK_THROWS_AS(hyperfine_correction(g, s.I, s.ground.J, 3), InputError);
}

TEST_CASE("channels for |F=1, mF=0>") {
    const AtomSpecies& s = rb87();
    const auto ch = enumerate_channels(s, testing::state(1, 0));
    std::map<std::size_t, std::set<int>> fj;
    for (const auto& c : ch) {
        fj[c.line].insert(c.F_j.twice() / 2);
        CHECK(c.weight > 0.0);
        CHECK(std::abs(c.M_Fj.twice()) <= c.F_j.twice());
        CHECK(c.M_Fj == c.m_Fi - HalfInt(c.p));
    }
    CHECK(fj[0] == std::set<int>{1, 2});
    CHECK(fj[1] == std::set<int>{0, 1, 2});
}

TEST_CASE("per-line weight sums equal (2J_j+1)/(2J_i+1) and match a direct oracle sum") {
    const AtomSpecies& s = rb87();
    for (int F = 1; F <= 2; ++F)
        for (int mF = -F; mF <= F; ++mF) {
            const auto ch = enumerate_channels(s, testing::state(F, mF));
            for (std::size_t line = 0; line < s.lines.size(); ++line) {
                const int Jj2 = s.lines[line].J_upper.twice();
                double total = 0.0;
                for (int p = -1; p <= 1; ++p) {
                    double lib = 0.0;
                    for (const auto& c : ch)
                        if (c.line == line && c.p == p) lib += c.weight;
                    double direct = 0.0;
                    for (int Fj2 = std::abs(3 - Jj2); Fj2 <= 3 + Jj2; Fj2 += 2) {
                        const int M2 = 2 * mF - 2 * p;
                        if (std::abs(M2) > Fj2) continue;
                        const double s6 = oracle::sixj(1, Jj2, 2, Fj2, 2 * F, 3);
                        const double s3 = oracle::threej(Fj2, 2, 2 * F, M2, 2 * p, -2 * mF);
                        direct += (Fj2 + 1) * (2 * F + 1) * (Jj2 + 1) * s6 * s6 * s3 * s3;
                    }
                    CHECK(std::abs(lib - direct) <= 1e-12);
                    total += lib;
                }
                CHECK(total == doctest::Approx((Jj2 + 1) / 2.0).epsilon(1e-12));
            }
        }
}

TEST_CASE("m_F mirror symmetry of channel weights") {
    const AtomSpecies& s = rb87();
    const auto plus = enumerate_channels(s, testing::state(1, 1));
    const auto minus = enumerate_channels(s, testing::state(1, -1));
    REQUIRE(plus.size() == minus.size());
    for (const auto& a : plus) {
        bool found = false;
        for (const auto& b : minus)
            if (b.line == a.line && b.F_j == a.F_j && b.p == -a.p) {
                CHECK(std::abs(a.weight - b.weight) <= 1e-14);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("transition frequencies include the hyperfine corrections") {
    const AtomSpecies& s = rb87();
    const auto c1 = enumerate_channels(s, testing::state(1, 0));
    const auto c2 = enumerate_channels(s, testing::state(2, 0));
    for (const auto& a : c1)
        for (const auto& b : c2)
            if (a.line == b.line && a.F_j == b.F_j && a.p == b.p) {
                const double diff = (a.omega_F - b.omega_F) * constants::kHbar;
                CHECK(testing::rel_diff(diff, 2 * s.ground.hyperfine.A_hfs) <= 1e-6);
            }
}

TEST_CASE("detuning classification") {
    const AtomSpecies& s = rb87();
    CHECK(classify_detuning(s, constants::omega_from_wavelength(1064e-9)) == Detuning::Red);
    CHECK(classify_detuning(s, constants::omega_from_wavelength(532e-9)) == Detuning::Blue);
    CHECK(classify_detuning(s, constants::omega_from_wavelength(787e-9)) == Detuning::Intermediate);
}

TEST_CASE("invalid states are rejected") {
    CHECK_THROWS_AS(make_ground_state(rb87(), 3, 0), InputError);
    CHECK_THROWS_AS(make_ground_state(rb87(), 1, 2), InputError);
    CHECK_THROWS_AS(make_ground_state(rb87(), 1, HalfInt::from_twice(1)), InputError);
}
