#include "superlattice/shift.hpp"

#include "superlattice/constants.hpp"
#include "superlattice/error.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace superlattice {

const char* to_string(ShiftMode mode) { return mode == ShiftMode::E2 ? "e2" : "e2eps"; }

ShiftMode parse_shift_mode(const std::string& text) {
    if (text == "e2") return ShiftMode::E2;
    if (text == "e2eps") return ShiftMode::E2PlusEpsilon;
    throw ConfigurationError("unknown shift mode '" + text + "' (expected e2 or e2eps)");
}

double LightShift::channel_coefficient(const TransitionChannel& ch, double omega, ShiftMode mode) {
    using constants::kSpeedOfLight;
    const double wF = mode == ShiftMode::E2 ? ch.omega_J : ch.omega_F;
    const double wJ3 = ch.omega_J * ch.omega_J * ch.omega_J;
    return -3.0 * std::numbers::pi * kSpeedOfLight * kSpeedOfLight * ch.A_J * ch.weight * wF /
           (wJ3 * (wF * wF - omega * omega));
}

LightShift::LightShift(const AtomSpecies& species, const HyperfineState& state, std::vector<BeamGroup> groups,
                       ShiftMode mode, ShiftOptions options)
    : state_(state), groups_(std::move(groups)), mode_(mode), options_(options) {
    const auto channels = enumerate_channels(species, state);
    const double guard = constants::kTwoPi * options_.resonance_guard_hz;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        validate_group(groups_[g]);
        const double omega = groups_[g].omega;
        std::array<double, 3> c{0.0, 0.0, 0.0};
        std::vector<Term> terms;
        for (const auto& ch : channels) {
            if (std::abs(ch.omega_F - omega) < guard) {
                throw NearResonanceError(fmt::format(
                    "group {} at {:.6f} nm lies within {:.3g} GHz of the {} F'={} resonance", g,
                    constants::wavelength_from_omega(omega) * 1e9, options_.resonance_guard_hz * 1e-9,
                    species.lines[ch.line].term, ch.F_j.str()));
            }
            const double coef = channel_coefficient(ch, omega, mode_);
            c[static_cast<std::size_t>(ch.p + 1)] += coef;
            terms.push_back({ch.line, ch.F_j, ch.p, coef});
        }
        coeff_.push_back(c);
        terms_.push_back(std::move(terms));
    }
}

double LightShift::group_value(std::size_t g, const Eigen::Vector3d& R) const {
    const SphericalField K = spherical_components(eval_field(groups_[g], R));
    const auto& c = coeff_[g];
    return c[0] * std::norm(K.minus) + c[1] * std::norm(K.zero) + c[2] * std::norm(K.plus);
}

double LightShift::operator()(const Eigen::Vector3d& R) const {
    double u = 0.0;
    for (std::size_t g = 0; g < groups_.size(); ++g) u += group_value(g, R);
    return u;
}

PotentialSample LightShift::sample(const Eigen::Vector3d& R) const {
    if (!options_.breakdown) return {(*this)(R), {}};
    PotentialSample out;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        const SphericalField K = spherical_components(eval_field(groups_[g], R));
        for (const Term& t : terms_[g]) {
            const double v = t.coefficient * std::norm(K[t.p]);
            out.breakdown.push_back({g, t.line, t.F_j, t.p, v});
            out.value += v;
        }
    }
    return out;
}

PotentialSample light_shift(const AtomSpecies& species, const HyperfineState& state,
                            const std::vector<BeamGroup>& groups, ShiftMode mode, const Eigen::Vector3d& R,
                            ShiftOptions options) {
    return LightShift(species, state, groups, mode, options).sample(R);
}

std::vector<double> potential_difference(const AtomSpecies& species, const HyperfineState& first,
                                         const HyperfineState& second, const std::vector<BeamGroup>& groups,
                                         ShiftMode mode, std::span<const Eigen::Vector3d> points,
                                         ShiftOptions options) {
    options.breakdown = false;
    const LightShift a(species, first, groups, mode, options);
    const LightShift b(species, second, groups, mode, options);
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& R : points) out.push_back(a(R) - b(R));
    return out;
}

}  // namespace superlattice
