#include "superlattice/presets.hpp"

#include "superlattice/constants.hpp"
#include "superlattice/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace superlattice {

using nlohmann::json;
using std::numbers::pi;

namespace {

constexpr double kDeg = pi / 180.0;
const double kSqrt3 = std::sqrt(3.0);
// Radius of the six-site ring of the isolated hexagonal preset, in units of the lattice constant.
constexpr double kHexRingRadius = 0.2744;

const std::vector<std::string> kNames = {"hexagonal_double_well", "isolated_square", "isolated_triangular",
                                         "isolated_hexagonal"};

void add_phases(PresetParams& p, int count, bool with_dphi) {
    for (int i = 1; i <= count; ++i) {
        p.numbers["theta" + std::to_string(i)] = 0.0;
        p.numbers["phi" + std::to_string(i)] = 0.0;
        if (with_dphi) p.numbers["dphi" + std::to_string(i)] = 0.0;
    }
}

// theta_i as seen by the beams: dphi_i is an additive offset on theta_i.
double theta(const PresetParams& p, int i) {
    const std::string n = std::to_string(i);
    return p.get("theta" + n) + p.get("dphi" + n);
}

void require_mf_zero(const HyperfineState& state, const std::string& family) {
    if (state.mF.twice() != 0)
        throw InputError(family + " is defined for m_F = 0 only (got m_F = " + state.mF.str() + ")");
}

void require_detuning(const AtomSpecies& species, const PresetParams& p, double omega, Detuning want,
                      const std::string& what) {
    if (p.get("enforce_detuning") == 0.0) return;
    const Detuning got = classify_detuning(species, omega);
    if (got != want)
        throw ConfigurationError(fmt::format("{} at {:.3f} nm must be {}-detuned for {} but is {}", what,
                                             constants::wavelength_from_omega(omega) * 1e9, to_string(want),
                                             species.name, to_string(got)));
}

// m_F = 0 legality: out-of-plane sets must be red-detuned, in-plane sets blue-detuned.
void require_legal_set(const AtomSpecies& species, const PresetParams& p, double omega, const std::string& pol,
                       const std::string& what) {
    require_detuning(species, p, omega, pol == "out" ? Detuning::Red : Detuning::Blue,
                     what + " (" + pol + "-of-plane polarized)");
}

Eigen::Vector3cd polarization(const std::string& scheme, const Eigen::Vector3d& dir) {
    return scheme == "in" ? in_plane_polarization(dir) : out_of_plane_polarization();
}

Eigen::Vector2d polar(double r, double angle) { return {r * std::cos(angle), r * std::sin(angle)}; }

std::array<Eigen::Vector2d, 3> wave_vectors(double k, const std::array<double, 3>& angles) {
    return {polar(k, angles[0]), polar(k, angles[1]), polar(k, angles[2])};
}

BeamGroup three_beams(double omega, const std::array<double, 3>& angles, const std::string& pol,
                      const std::array<double, 3>& phases, double intensity) {
    BeamGroup g{omega, {}};
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d d = planar_direction(angles[i]);
        g.beams.push_back(make_beam(d, polarization(pol, d), phases[i], intensity));
    }
    return g;
}

double second_intensity(const PresetParams& p) {
    const double ratio = p.get("ratio");
    if (!(ratio > 0.0)) throw ConfigurationError("ratio must be positive");
    return p.get("intensity") / ratio;
}

void check_common(const PresetParams& p) {
    if (!(p.get("wavelength_nm") > 0.0)) throw ConfigurationError("wavelength_nm must be positive");
    if (!(p.get("intensity") >= 0.0)) throw ConfigurationError("intensity must be non-negative");
    second_intensity(p);
}

std::vector<Waypoint> ring(const Eigen::Vector2d& center, double radius, const std::vector<std::string>& labels,
                           const std::vector<double>& angles_deg) {
    std::vector<Waypoint> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        out.push_back({labels[i], center + polar(radius, angles_deg[i] * kDeg)});
    return out;
}

std::vector<std::string> closed(std::vector<std::string> labels) {
    labels.push_back(labels.front());
    return labels;
}

}  // namespace

double PresetParams::get(const std::string& key) const {
    auto it = numbers.find(key);
    if (it == numbers.end()) throw ConfigurationError("parameter '" + key + "' is not defined for " + family);
    return it->second;
}

std::string PresetParams::tag(const std::string& key) const {
    auto it = tags.find(key);
    if (it == tags.end()) throw ConfigurationError("parameter '" + key + "' is not defined for " + family);
    return it->second;
}

const std::vector<std::string>& preset_names() { return kNames; }

PresetParams default_params(const std::string& family) {
    PresetParams p;
    p.family = family;
    p.numbers["wavelength_nm"] = 1064.0;
    p.numbers["intensity"] = 1e7;  // W/m^2 per beam of the first set
    p.numbers["enforce_detuning"] = 1.0;
    if (family == "hexagonal_double_well") {
        p.numbers["ratio"] = 10.0;  // in-plane / out-of-plane
        add_phases(p, 3, true);
    } else if (family == "isolated_square") {
        p.numbers["ratio"] = 0.5;  // I(omega) / I(2 omega)
        add_phases(p, 2, true);
        p.numbers["d1"] = 0.0;
        p.numbers["d2"] = 0.0;
    } else if (family == "isolated_triangular") {
        p.numbers["ratio"] = 0.5;  // I(omega) / I(omega')
        add_phases(p, 3, true);
        p.tags["pol1"] = "out";
        p.tags["pol2"] = "in";
    } else if (family == "isolated_hexagonal") {
        p.numbers["ratio"] = 0.5;
        add_phases(p, 3, true);
        p.tags["pol1"] = "out";
        p.tags["pol2"] = "out";
    } else {
        throw ConfigurationError("unknown preset '" + family + "'");
    }
    return p;
}

double parse_number(const std::string& text) {
    std::string s = text;
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = pi;
        s.erase(s.size() - 2);
        if (s.empty() || s == "+") s = "1";
        if (s == "-") s = "-1";
        if (s.back() == '*') s.pop_back();
    }
    if (s == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigurationError("cannot parse number '" + text + "'");
    return v * factor;
}

void set_param(PresetParams& params, const std::string& key, const std::string& value) {
    if (params.tags.count(key)) {
        if (value != "in" && value != "out")
            throw ConfigurationError("polarization scheme '" + key + "' must be 'in' or 'out'");
        params.tags[key] = value;
        return;
    }
    if (!params.numbers.count(key)) throw ConfigurationError("unknown parameter '" + key + "' for " + params.family);
    if (key == "enforce_detuning") {
        if (value == "true" || value == "1") params.numbers[key] = 1.0;
        else if (value == "false" || value == "0") params.numbers[key] = 0.0;
        else throw ConfigurationError("enforce_detuning must be true or false");
        return;
    }
    params.numbers[key] = parse_number(value);
}

Eigen::Vector2d phase_translation(const std::array<Eigen::Vector2d, 3>& k, const std::array<double, 3>& psi) {
    const double c = (psi[0] + psi[1] + psi[2]) / 3.0;
    Eigen::Matrix2d A;
    A << k[0].transpose(), k[1].transpose();
    return A.inverse() * Eigen::Vector2d(c - psi[0], c - psi[1]);
}

// Six beams of one frequency: three in-plane polarized (phases theta_i), three
// out-of-plane (phases phi_i), sharing directions 90, 330 and 210 degrees.
Preset hexagonal_double_well(const AtomSpecies& species, const HyperfineState& state, const PresetParams& p) {
    require_mf_zero(state, p.family);
    check_common(p);
    const double omega = constants::omega_from_wavelength(p.get("wavelength_nm") * 1e-9);
    require_detuning(species, p, omega, Detuning::Red, "the lattice beams");
    const double k = omega / constants::kSpeedOfLight;
    const std::array<double, 3> angles{90 * kDeg, 330 * kDeg, 210 * kDeg};
    const std::array<double, 3> th{theta(p, 1), theta(p, 2), theta(p, 3)};
    const std::array<double, 3> ph{p.get("phi1"), p.get("phi2"), p.get("phi3")};

    BeamGroup g{omega, {}};
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d d = planar_direction(angles[i]);
        g.beams.push_back(make_beam(d, in_plane_polarization(d), th[i], p.get("intensity")));
    }
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d d = planar_direction(angles[i]);
        g.beams.push_back(make_beam(d, out_of_plane_polarization(), ph[i], second_intensity(p)));
    }

    const double a = 4 * pi / (3 * k);
    const Eigen::Vector2d a1 = polar(a, 30 * kDeg), a2 = polar(a, 90 * kDeg);
    const Eigen::Vector2d A1 = 2 * a1 - a2, A2 = a1 + a2;  // sqrt3 x sqrt3 supercell
    const Eigen::Vector2d center = phase_translation(wave_vectors(k, angles), th);

    Preset out;
    out.family = p.family;
    out.groups = {g};
    out.cell = UnitCell(A1, A2, center - 0.5 * (A1 + A2));
    out.sites = ring(center, a / kSqrt3, {"A", "B", "C", "D", "E", "F"}, {60, 0, -60, -120, 180, 120});
    out.channel = closed({"A", "B", "C", "D", "E", "F"});
    out.adjacency_radius = 0.85 * a;
    out.center = center;
    out.rotation_order = 6;
    return out;
}

// Standing waves along x (polarized y) and y (polarized x) at omega and 2 omega,
// each made of an incoming beam and its mirror reflection. The phase theta (phi)
// is split evenly between the two beams so it moves the standing wave.
Preset isolated_square(const AtomSpecies& species, const HyperfineState& state, const PresetParams& p) {
    require_mf_zero(state, p.family);
    check_common(p);
    const double omega = constants::omega_from_wavelength(p.get("wavelength_nm") * 1e-9);
    require_detuning(species, p, omega, Detuning::Red, "the omega beams");
    require_detuning(species, p, 2 * omega, Detuning::Blue, "the 2 omega beams");
    const double k = omega / constants::kSpeedOfLight;
    const double lambda = 2 * pi / k;
    const double d1 = p.get("d1"), d2 = p.get("d2");
    const double th1 = theta(p, 1), th2 = theta(p, 2), ph1 = p.get("phi1"), ph2 = p.get("phi2");
    const Eigen::Vector3d ex = Eigen::Vector3d::UnitX(), ey = Eigen::Vector3d::UnitY();
    const Eigen::Vector3cd px = ex.cast<cplx>(), py = ey.cast<cplx>();

    auto group = [&](double w, double kk, double a1, double a2, double I) {
        BeamGroup g{w, {}};
        g.beams.push_back(make_beam(ex, py, a1, I));
        g.beams.push_back(make_beam(-ex, py, -a1 + 2 * kk * d1, I));
        g.beams.push_back(make_beam(-ey, px, a2, I));
        g.beams.push_back(make_beam(ey, px, -a2 + 2 * kk * d2, I));
        return g;
    };

    Preset out;
    out.family = p.family;
    out.groups = {group(omega, k, th1 / 2, th2 / 2, p.get("intensity")),
                  group(2 * omega, 2 * k, ph1, ph2, second_intensity(p))};
    const Eigen::Vector2d center(d1 - ph1 / (2 * k), d2 + ph2 / (2 * k));
    const Eigen::Vector2d a1(lambda / 2, 0), a2(0, lambda / 2);
    out.cell = UnitCell(a1, a2, center - 0.5 * (a1 + a2));
    const double q = lambda / 8;
    out.sites = {{"A", center + Eigen::Vector2d(-q, q)},
                 {"B", center + Eigen::Vector2d(q, q)},
                 {"C", center + Eigen::Vector2d(q, -q)},
                 {"D", center + Eigen::Vector2d(-q, -q)}};
    out.channel = closed({"A", "B", "C", "D"});
    out.adjacency_radius = 0.38 * lambda;
    out.center = center;
    out.rotation_order = 4;
    return out;
}

// omega set along 0/120/240 degrees, omega' = sqrt3 omega set rotated by 30 degrees.
// The omega' pattern is placed so that three of its low-intensity points surround
// the omega minimum.
Preset isolated_triangular(const AtomSpecies& species, const HyperfineState& state, const PresetParams& p) {
    require_mf_zero(state, p.family);
    check_common(p);
    const double omega = constants::omega_from_wavelength(p.get("wavelength_nm") * 1e-9);
    const double omega2 = kSqrt3 * omega;
    const std::string pol1 = p.tag("pol1"), pol2 = p.tag("pol2");
    require_legal_set(species, p, omega, pol1, "the omega beams");
    require_legal_set(species, p, omega2, pol2, "the omega' beams");
    const double k = omega / constants::kSpeedOfLight;
    const double a = 4 * pi / (3 * k);
    const std::array<double, 3> ang{0.0, 120 * kDeg, 240 * kDeg};
    const std::array<double, 3> ang2{30 * kDeg, 150 * kDeg, 270 * kDeg};
    const auto kv2 = wave_vectors(kSqrt3 * k, ang2);
    const Eigen::Vector2d anchor(-a / 3, 0);

    const std::array<double, 3> th{theta(p, 1), theta(p, 2), theta(p, 3)};
    const std::array<double, 3> ph{p.get("phi1"), p.get("phi2"), p.get("phi3")};
    std::array<double, 3> ph_beam{};
    for (int i = 0; i < 3; ++i) ph_beam[i] = ph[i] - kv2[i].dot(anchor);

    Preset out;
    out.family = p.family;
    out.groups = {three_beams(omega, ang, pol1, th, p.get("intensity")),
                  three_beams(omega2, ang2, pol2, ph_beam, second_intensity(p))};
    const Eigen::Vector2d center = phase_translation(wave_vectors(k, ang), th);
    const Eigen::Vector2d sites_center = phase_translation(kv2, ph);
    const Eigen::Vector2d a1 = polar(a, 0), a2 = polar(a, 60 * kDeg);
    out.cell = UnitCell(a1, a2, center - 0.5 * (a1 + a2));
    out.sites = ring(sites_center, a / 3, {"A", "B", "C"}, {180, 300, 60});
    out.channel = closed({"A", "B", "C"});
    out.adjacency_radius = 0.7 * a;
    out.center = center;
    out.rotation_order = 3;
    return out;
}

// Both sets out-of-plane; the omega' = sqrt3 omega set is rotated by 90 degrees so
// its intensity maximum sits on the omega minimum.
Preset isolated_hexagonal(const AtomSpecies& species, const HyperfineState& state, const PresetParams& p) {
    require_mf_zero(state, p.family);
    check_common(p);
    const double omega = constants::omega_from_wavelength(p.get("wavelength_nm") * 1e-9);
    const double omega2 = kSqrt3 * omega;
    const std::string pol1 = p.tag("pol1"), pol2 = p.tag("pol2");
    if (pol1 != "out" || pol2 != "out")
        throw ConfigurationError("isolated_hexagonal needs both sets out-of-plane polarized for m_F = 0");
    require_detuning(species, p, omega, Detuning::Red, "the omega beams");
    require_detuning(species, p, omega2, Detuning::Blue, "the omega' beams");
    const double k = omega / constants::kSpeedOfLight;
    const double a = 4 * pi / (3 * k);
    const std::array<double, 3> ang{0.0, 120 * kDeg, 240 * kDeg};
    const std::array<double, 3> ang2{90 * kDeg, 210 * kDeg, 330 * kDeg};
    const std::array<double, 3> th{theta(p, 1), theta(p, 2), theta(p, 3)};
    const std::array<double, 3> ph{p.get("phi1"), p.get("phi2"), p.get("phi3")};

    Preset out;
    out.family = p.family;
    out.groups = {three_beams(omega, ang, pol1, th, p.get("intensity")),
                  three_beams(omega2, ang2, pol2, ph, second_intensity(p))};
    const Eigen::Vector2d center = phase_translation(wave_vectors(k, ang), th);
    const Eigen::Vector2d a1 = polar(a, 0), a2 = polar(a, 60 * kDeg);
    out.cell = UnitCell(a1, a2, center - 0.5 * (a1 + a2));
    out.sites = ring(center, kHexRingRadius * a, {"A", "B", "C", "D", "E", "F"}, {0, 60, 120, 180, 240, 300});
    out.channel = closed({"A", "B", "C", "D", "E", "F"});
    out.adjacency_radius = 0.6 * a;
    out.center = center;
    out.rotation_order = 6;
    return out;
}

Preset build_preset(const AtomSpecies& species, const HyperfineState& state, const PresetParams& params) {
    validate_state(species, state);
    if (params.family == "hexagonal_double_well") return hexagonal_double_well(species, state, params);
    if (params.family == "isolated_square") return isolated_square(species, state, params);
    if (params.family == "isolated_triangular") return isolated_triangular(species, state, params);
    if (params.family == "isolated_hexagonal") return isolated_hexagonal(species, state, params);
    throw ConfigurationError("unknown preset '" + params.family + "'");
}

double adjacency_radius(const Preset& preset) {
    if (preset.adjacency_radius > 0.0) return preset.adjacency_radius;
    if (!preset.cell) throw ConfigurationError("configuration has no unit cell");
    return 0.75 * std::min(preset.cell->a1.norm(), preset.cell->a2.norm());
}

json preset_to_json(const Preset& preset) {
    json doc = groups_to_json(preset.groups);
    if (!preset.family.empty()) doc["family"] = preset.family;
    if (preset.cell) {
        const UnitCell& c = *preset.cell;
        doc["cell"] = {{"a1_m", {c.a1.x(), c.a1.y()}},
                       {"a2_m", {c.a2.x(), c.a2.y()}},
                       {"origin_m", {c.origin.x(), c.origin.y()}}};
    }
    if (!preset.sites.empty()) {
        json sites = json::array();
        for (const auto& s : preset.sites)
            sites.push_back({{"label", s.label}, {"position_m", {s.position.x(), s.position.y()}}});
        doc["sites"] = std::move(sites);
    }
    if (!preset.channel.empty()) doc["channel"] = preset.channel;
    if (preset.adjacency_radius > 0) doc["adjacency_radius_m"] = preset.adjacency_radius;
    return doc;
}

namespace {

Eigen::Vector2d read_vec2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ParseError(path, "expected an array of 2 numbers");
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

Preset preset_from_json(const json& doc) {
    Preset p;
    p.groups = groups_from_json(doc);
    p.family = doc.contains("family") && doc.at("family").is_string() ? doc.at("family").get<std::string>() : "custom";
    if (doc.contains("cell")) {
        const json& c = doc.at("cell");
        if (!c.is_object() || !c.contains("a1_m") || !c.contains("a2_m")) throw ParseError("$.cell", "expected {a1_m, a2_m}");
        const Eigen::Vector2d origin = c.contains("origin_m") ? read_vec2(c.at("origin_m"), "$.cell.origin_m")
                                                              : Eigen::Vector2d::Zero();
        p.cell = UnitCell(read_vec2(c.at("a1_m"), "$.cell.a1_m"), read_vec2(c.at("a2_m"), "$.cell.a2_m"), origin);
        p.center = p.cell->cartesian({0.5, 0.5});
    }
    if (doc.contains("sites")) {
        const json& s = doc.at("sites");
        if (!s.is_array()) throw ParseError("$.sites", "expected an array");
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string sp = "$.sites[" + std::to_string(i) + "]";
            if (!s[i].is_object() || !s[i].contains("label") || !s[i].at("label").is_string() ||
                !s[i].contains("position_m"))
                throw ParseError(sp, "expected {label, position_m}");
            p.sites.push_back({s[i].at("label").get<std::string>(), read_vec2(s[i].at("position_m"), sp + ".position_m")});
        }
    }
    if (doc.contains("channel")) {
        const json& ch = doc.at("channel");
        if (!ch.is_array()) throw ParseError("$.channel", "expected an array of labels");
        for (const auto& l : ch) {
            if (!l.is_string()) throw ParseError("$.channel", "expected an array of labels");
            p.channel.push_back(l.get<std::string>());
        }
    }
    if (doc.contains("adjacency_radius_m")) {
        if (!doc.at("adjacency_radius_m").is_number()) throw ParseError("$.adjacency_radius_m", "expected a number");
        p.adjacency_radius = doc.at("adjacency_radius_m").get<double>();
    }
    return p;
}

Evaluator make_evaluator(const LightShift& shift) {
    return [&shift](const Eigen::Vector2d& r) { return shift(r); };
}

double site_depth(const Evaluator& U, const Preset& preset, const std::string& label) {
    auto it = std::find_if(preset.sites.begin(), preset.sites.end(), [&](const Waypoint& w) { return w.label == label; });
    if (it == preset.sites.end()) throw InputError("label not found: " + label);
    if (!preset.cell) throw ConfigurationError("configuration has no unit cell");
    double nn = std::numeric_limits<double>::infinity();
    for (const auto& w : preset.sites)
        if (&w != &*it) nn = std::min(nn, (w.position - it->position).norm());
    if (!std::isfinite(nn)) nn = preset.cell->scale();
    return refine_minimum(U, it->position, 0.05 * nn, preset.cell->scale()).value;
}

}  // namespace superlattice
