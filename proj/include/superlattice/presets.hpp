#pragma once

#include "superlattice/lattice.hpp"
#include "superlattice/shift.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace superlattice {

/// Named parameters of one preset family. Numbers cover wavelengths, intensities,
/// phases and mirror distances; tags hold the per-set polarization scheme.
struct PresetParams {
    std::string family;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> tags;

    double get(const std::string& key) const;
    std::string tag(const std::string& key) const;
};

struct Preset {
    std::string family;
    std::vector<BeamGroup> groups;
    std::optional<UnitCell> cell;
    std::vector<Waypoint> sites;       // nominal site positions with labels
    std::vector<std::string> channel;  // default path through the sites
    double adjacency_radius = 0.0;     // 0: use the default rule
    Eigen::Vector2d center = Eigen::Vector2d::Zero();
    int rotation_order = 1;  // C_n symmetry of the symmetric default about `center`
};

const std::vector<std::string>& preset_names();

/// Defaults for a family; ConfigurationError for an unknown name.
PresetParams default_params(const std::string& family);

/// Applies key=value. Phases accept a trailing "pi" ("0.8pi", "-pi").
void set_param(PresetParams& params, const std::string& key, const std::string& value);
double parse_number(const std::string& text);

/// Builds the beams, supercell and labels. Input error unless m_F = 0;
/// configuration error for illegal polarization/detuning combinations.
Preset build_preset(const AtomSpecies& species, const HyperfineState& state, const PresetParams& params);

Preset hexagonal_double_well(const AtomSpecies& species, const HyperfineState& state, const PresetParams& params);
Preset isolated_square(const AtomSpecies& species, const HyperfineState& state, const PresetParams& params);
Preset isolated_triangular(const AtomSpecies& species, const HyperfineState& state, const PresetParams& params);
Preset isolated_hexagonal(const AtomSpecies& species, const HyperfineState& state, const PresetParams& params);

/// Default adjacency radius: the preset's value, else 0.75 of the shorter cell vector.
double adjacency_radius(const Preset& preset);

/// Beam-configuration JSON including the optional cell and sites.
nlohmann::json preset_to_json(const Preset& preset);
Preset preset_from_json(const nlohmann::json& doc);

/// Translation t of a three-beam pattern produced by beam phases: the pattern with
/// phases psi equals the zero-phase pattern shifted by t (up to a global phase).
Eigen::Vector2d phase_translation(const std::array<Eigen::Vector2d, 3>& k, const std::array<double, 3>& psi);

Evaluator make_evaluator(const LightShift& shift);

/// U at the local minimum reached from the nominal position of `label`.
double site_depth(const Evaluator& U, const Preset& preset, const std::string& label);

}  // namespace superlattice
