#include "superlattice/fields.hpp"

#include "superlattice/constants.hpp"
#include "superlattice/error.hpp"

#include <cmath>
#include <numbers>

namespace superlattice {

using nlohmann::json;

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kTransverseTolerance = 1e-10;

Eigen::Vector3d read_vec3(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) throw ParseError(path, "expected an array of 3 numbers");
    Eigen::Vector3d out;
    for (int i = 0; i < 3; ++i) {
        if (!v[i].is_number()) throw ParseError(path + "[" + std::to_string(i) + "]", "expected a number");
        out[i] = v[i].get<double>();
    }
    return out;
}

json vec3_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

void validate_beam(const Beam& b) {
    if (std::abs(b.direction.norm() - 1.0) > kUnitTolerance) throw ValidationError("beam direction is not a unit vector");
    if (std::abs(b.polarization.norm() - 1.0) > kUnitTolerance)
        throw ValidationError("beam polarization is not a unit vector");
    const cplx overlap = b.polarization.conjugate().dot(b.direction.cast<cplx>());
    if (std::abs(overlap) >= kTransverseTolerance) throw ValidationError("beam polarization is not transverse to k");
    if (!(b.intensity >= 0.0) || !std::isfinite(b.intensity)) throw ValidationError("beam intensity must be >= 0");
    if (!std::isfinite(b.phase)) throw ValidationError("beam phase must be finite");
}

Beam make_beam(const Eigen::Vector3d& direction, const Eigen::Vector3cd& polarization, double phase,
               double intensity) {
    const double dn = direction.norm();
    const double pn = polarization.norm();
    if (!(dn > 0.0)) throw ValidationError("beam direction has zero length");
    if (!(pn > 0.0)) throw ValidationError("beam polarization has zero length");
    Beam b{direction / dn, polarization / pn, phase, intensity};
    validate_beam(b);
    return b;
}

void validate_group(const BeamGroup& g) {
    if (!(g.omega > 0.0) || !std::isfinite(g.omega)) throw ValidationError("group frequency must be positive");
    if (g.beams.empty()) throw ValidationError("beam group has no beams");
    for (const auto& b : g.beams) validate_beam(b);
}

Eigen::Vector3cd eval_field(const BeamGroup& group, const Eigen::Vector3d& R) {
    const double k = group.omega / constants::kSpeedOfLight;
    Eigen::Vector3cd K = Eigen::Vector3cd::Zero();
    for (const Beam& b : group.beams) {
        const double arg = k * b.direction.dot(R) + b.phase;
        K += (std::sqrt(b.intensity) * cplx(std::cos(arg), std::sin(arg))) * b.polarization;
    }
    return K;
}

SphericalField spherical_components(const Eigen::Vector3cd& K) {
    const cplx i(0.0, 1.0);
    const double s = std::numbers::sqrt2 / 2.0;
    return {-(K.x() + i * K.y()) * s, K.z(), (K.x() - i * K.y()) * s};
}

Eigen::Vector3d planar_direction(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

Eigen::Vector3cd in_plane_polarization(const Eigen::Vector3d& direction) {
    return Eigen::Vector3d::UnitZ().cross(direction).normalized().cast<cplx>();
}

Eigen::Vector3cd out_of_plane_polarization() { return Eigen::Vector3cd(0, 0, 1); }

std::vector<BeamGroup> groups_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("$", "expected an object");
    if (doc.contains("schema_version") &&
        (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != 1))
        throw ParseError("$.schema_version", "unsupported schema version");
    if (!doc.contains("groups") || !doc.at("groups").is_array()) throw ParseError("$.groups", "expected an array");
    const json& groups = doc.at("groups");
    if (groups.empty()) throw ValidationError("$.groups: at least one group is required");

    std::vector<BeamGroup> out;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const std::string gp = "$.groups[" + std::to_string(gi) + "]";
        const json& g = groups[gi];
        if (!g.is_object()) throw ParseError(gp, "expected an object");
        BeamGroup group;
        const bool has_l = g.contains("wavelength_nm"), has_w = g.contains("omega_rad_s");
        if (has_l == has_w) throw ParseError(gp, "exactly one of wavelength_nm or omega_rad_s is required");
        const std::string fkey = has_l ? "wavelength_nm" : "omega_rad_s";
        if (!g.at(fkey).is_number()) throw ParseError(gp + "." + fkey, "expected a number");
        const double f = g.at(fkey).get<double>();
        if (!(f > 0.0)) throw ValidationError(gp + "." + fkey + ": must be positive");
        group.omega = has_l ? constants::omega_from_wavelength(f * 1e-9) : f;

        if (!g.contains("beams") || !g.at("beams").is_array()) throw ParseError(gp + ".beams", "expected an array");
        const json& beams = g.at("beams");
        if (beams.empty()) throw ValidationError(gp + ".beams: at least one beam is required");
        for (std::size_t bi = 0; bi < beams.size(); ++bi) {
            const std::string bp = gp + ".beams[" + std::to_string(bi) + "]";
            const json& b = beams[bi];
            if (!b.is_object()) throw ParseError(bp, "expected an object");
            for (const char* key : {"direction", "pol_re", "intensity_W_m2"})
                if (!b.contains(key)) throw ParseError(bp + "." + key, "missing required field");
            const Eigen::Vector3d dir = read_vec3(b.at("direction"), bp + ".direction");
            const Eigen::Vector3d re = read_vec3(b.at("pol_re"), bp + ".pol_re");
            const Eigen::Vector3d im =
                b.contains("pol_im") ? read_vec3(b.at("pol_im"), bp + ".pol_im") : Eigen::Vector3d::Zero();
            double phase = 0.0;
            if (b.contains("phase_rad")) {
                if (!b.at("phase_rad").is_number()) throw ParseError(bp + ".phase_rad", "expected a number");
                phase = b.at("phase_rad").get<double>();
            }
            if (!b.at("intensity_W_m2").is_number()) throw ParseError(bp + ".intensity_W_m2", "expected a number");
            const double intensity = b.at("intensity_W_m2").get<double>();
            Eigen::Vector3cd pol;
            for (int i = 0; i < 3; ++i) pol[i] = cplx(re[i], im[i]);
            try {
                group.beams.push_back(make_beam(dir, pol, phase, intensity));
            } catch (const ValidationError& e) {
                throw ValidationError(bp + ": " + e.what());
            }
        }
        out.push_back(std::move(group));
    }
    return out;
}

json groups_to_json(const std::vector<BeamGroup>& groups) {
    json arr = json::array();
    for (const auto& g : groups) {
        json beams = json::array();
        for (const auto& b : g.beams) {
            json jb;
            jb["direction"] = vec3_json(b.direction);
            jb["pol_re"] = vec3_json(b.polarization.real());
            jb["pol_im"] = vec3_json(b.polarization.imag());
            jb["phase_rad"] = b.phase;
            jb["intensity_W_m2"] = b.intensity;
            beams.push_back(std::move(jb));
        }
        arr.push_back({{"omega_rad_s", g.omega}, {"beams", std::move(beams)}});
    }
    return {{"schema_version", 1}, {"groups", std::move(arr)}};
}

}  // namespace superlattice
