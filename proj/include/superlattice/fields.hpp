#pragma once

#include <Eigen/Dense>

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace superlattice {

using cplx = std::complex<double>;

/// Plane wave: unit propagation direction, complex unit polarization (transverse),
/// phase [rad] and intensity [W/m^2]. Construct through make_beam to get validation.
struct Beam {
    Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
    Eigen::Vector3cd polarization = Eigen::Vector3cd(0, 0, 1);
    double phase = 0.0;
    double intensity = 0.0;
};

/// Beams sharing one optical frequency; they interfere with each other.
struct BeamGroup {
    double omega = 0.0;  // [rad/s]
    std::vector<Beam> beams;
};

/// Spherical components of K relative to the lab z axis.
struct SphericalField {
    cplx plus, zero, minus;

    const cplx& operator[](int p) const { return p > 0 ? plus : (p == 0 ? zero : minus); }
    double norm2() const { return std::norm(plus) + std::norm(zero) + std::norm(minus); }
};

/// Normalizes direction and polarization, then checks transversality and intensity >= 0.
Beam make_beam(const Eigen::Vector3d& direction, const Eigen::Vector3cd& polarization, double phase,
               double intensity);

void validate_beam(const Beam& beam);
void validate_group(const BeamGroup& group);

/// K(R) = sum_i sqrt(I_i) eps_i exp(i(k_i.R + phase_i)), |k_i| = omega/c.
Eigen::Vector3cd eval_field(const BeamGroup& group, const Eigen::Vector3d& R);

SphericalField spherical_components(const Eigen::Vector3cd& K);

/// Unit vector in the lattice plane at angle `angle` from x.
Eigen::Vector3d planar_direction(double angle);
/// z x k_hat for an in-plane direction: the in-plane transverse polarization.
Eigen::Vector3cd in_plane_polarization(const Eigen::Vector3d& direction);
Eigen::Vector3cd out_of_plane_polarization();

/// Beam-configuration JSON: {schema_version, groups: [{wavelength_nm | omega_rad_s,
/// beams: [{direction, pol_re, pol_im, phase_rad, intensity_W_m2}]}]}.
std::vector<BeamGroup> groups_from_json(const nlohmann::json& doc);
nlohmann::json groups_to_json(const std::vector<BeamGroup>& groups);

}  // namespace superlattice
