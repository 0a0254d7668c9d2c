#pragma once

#include "superlattice/angular.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace superlattice {

/// |n I J F m_F> of the level whose potential is computed.
struct HyperfineState {
    int n = 0;
    std::string term;
    HalfInt I;
    HalfInt J;
    HalfInt F;
    HalfInt mF;
};

/// Hyperfine constants of one fine-structure level, stored as energies [J].
struct HyperfineManifold {
    std::string term;
    double A_hfs = 0.0;
    double B_hfs = 0.0;
};

/// Fine-structure line from the ground level to an excited level.
struct FineLine {
    std::string term;
    HalfInt J_upper;
    double A_J = 0.0;      // Einstein coefficient [1/s]
    double omega_J = 0.0;  // [rad/s]
    HyperfineManifold hyperfine;
};

struct GroundLevel {
    int n = 0;
    std::string term;
    HalfInt J;
    HyperfineManifold hyperfine;
};

struct AtomSpecies {
    std::string name;
    double mass_kg = 0.0;
    HalfInt I;
    GroundLevel ground;
    std::vector<FineLine> lines;
};

/// One (line, F_j, p) term of the light-shift sum with its angular weight
/// (2F_j+1)(2F_i+1)(2J_j+1) {J_i J_j 1; F_j F_i I}^2 (F_j 1 F_i; M_Fj p -m_Fi)^2.
struct TransitionChannel {
    std::size_t line = 0;
    int p = 0;
    HalfInt F_i, m_Fi, F_j, M_Fj;
    HalfInt J_i, J_j;
    double omega_F = 0.0;
    double omega_J = 0.0;
    double A_J = 0.0;
    double weight = 0.0;
};

enum class Detuning { Red, Blue, Intermediate };

const char* to_string(Detuning d);

/// Reads a species file (JSON, schema_version 1). Throws ParseError with the
/// line or field path on malformed input and ValidationError on physics violations.
AtomSpecies load_species(const std::filesystem::path& path);
AtomSpecies parse_species(const std::string& text);
AtomSpecies species_from_json(const nlohmann::json& doc);

/// Hyperfine energy correction (magnetic dipole + electric quadrupole) [J].
double hyperfine_correction(const HyperfineManifold& manifold, HalfInt I, HalfInt J, HalfInt F);

/// Builds a ground-manifold state and checks it against the species.
HyperfineState make_ground_state(const AtomSpecies& species, HalfInt F, HalfInt mF);
void validate_state(const AtomSpecies& species, const HyperfineState& state);

std::vector<TransitionChannel> enumerate_channels(const AtomSpecies& species, const HyperfineState& state);

Detuning classify_detuning(const AtomSpecies& species, double omega);

}  // namespace superlattice
