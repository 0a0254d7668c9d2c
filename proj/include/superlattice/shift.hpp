#pragma once

#include "superlattice/atoms.hpp"
#include "superlattice/fields.hpp"

#include <span>
#include <vector>

namespace superlattice {

enum class ShiftMode {
    E2PlusEpsilon,  // hyperfine-resolved denominators (omega_F)
    E2,             // omega_F replaced by omega_J
};

const char* to_string(ShiftMode mode);
ShiftMode parse_shift_mode(const std::string& text);

struct ChannelContribution {
    std::size_t group = 0;
    std::size_t line = 0;
    HalfInt F_j;
    int p = 0;
    double value = 0.0;  // [J]
};

struct PotentialSample {
    double value = 0.0;  // [J]
    std::vector<ChannelContribution> breakdown;
};

struct ShiftOptions {
    double resonance_guard_hz = 10e9;  // minimum |omega_F - omega| / 2pi
    bool breakdown = false;
};

/// Light-shift evaluator for one state under a fixed set of beam groups.
/// The angular and frequency factors are folded once into a coefficient per
/// (group, p), so each point costs one field evaluation per group.
class LightShift {
public:
    LightShift(const AtomSpecies& species, const HyperfineState& state, std::vector<BeamGroup> groups,
               ShiftMode mode, ShiftOptions options = {});

    double operator()(const Eigen::Vector3d& R) const;
    double operator()(const Eigen::Vector2d& r) const { return (*this)(Eigen::Vector3d(r.x(), r.y(), 0.0)); }

    /// Value plus, if requested in the options, the per-channel breakdown.
    PotentialSample sample(const Eigen::Vector3d& R) const;

    /// Potential of a single group [J].
    double group_value(std::size_t g, const Eigen::Vector3d& R) const;

    const std::vector<BeamGroup>& groups() const { return groups_; }
    const HyperfineState& state() const { return state_; }
    ShiftMode mode() const { return mode_; }

    /// Coefficient c such that one channel contributes c |K_p|^2 [J per W/m^2].
    static double channel_coefficient(const TransitionChannel& ch, double omega, ShiftMode mode);

private:
    struct Term {
        std::size_t line;
        HalfInt F_j;
        int p;
        double coefficient;
    };
    HyperfineState state_;
    std::vector<BeamGroup> groups_;
    ShiftMode mode_;
    ShiftOptions options_;
    std::vector<std::array<double, 3>> coeff_;  // [group][p+1]
    std::vector<std::vector<Term>> terms_;      // per group, for the breakdown
};

PotentialSample light_shift(const AtomSpecies& species, const HyperfineState& state,
                            const std::vector<BeamGroup>& groups, ShiftMode mode, const Eigen::Vector3d& R,
                            ShiftOptions options = {});

/// U_first(R) - U_second(R) at each point.
std::vector<double> potential_difference(const AtomSpecies& species, const HyperfineState& first,
                                         const HyperfineState& second, const std::vector<BeamGroup>& groups,
                                         ShiftMode mode, std::span<const Eigen::Vector3d> points,
                                         ShiftOptions options = {});

}  // namespace superlattice
