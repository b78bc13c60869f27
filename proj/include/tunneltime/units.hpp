#pragma once

#include <string_view>

namespace tunneltime {

/// Frozen conversion table. Everything in the library computes in atomic
/// units; these ratios are only applied at input/output boundaries.
struct PhysicalConstants {
    double au_time_in_attoseconds;
    double speed_of_light;             // au
    double intensity_au_in_w_per_cm2;
    double hartree_in_ev;
    double bohr_radius_in_nm;
    std::string_view version;
};

namespace codata2018 {
inline constexpr double kAuTimeInSeconds = 2.4188843265857e-17;
inline constexpr double kFineStructure = 7.2973525693e-3;
inline constexpr double kHartreeInEv = 27.211386245988;
inline constexpr double kBohrRadiusInMeters = 5.29177210903e-11;
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kSpeedOfLightSi = 299792458.0;           // m/s
inline constexpr double kAuFieldInVoltsPerMeter = 5.14220674763e11;
}  // namespace codata2018

inline constexpr PhysicalConstants kConstants{
    .au_time_in_attoseconds = codata2018::kAuTimeInSeconds * 1e18,
    .speed_of_light = 1.0 / codata2018::kFineStructure,
    // Cycle-averaged intensity eps0 c E^2 / 2 of a field of 1 au, in W/cm^2.
    .intensity_au_in_w_per_cm2 = 0.5 * codata2018::kVacuumPermittivity * codata2018::kSpeedOfLightSi *
                                 codata2018::kAuFieldInVoltsPerMeter * codata2018::kAuFieldInVoltsPerMeter *
                                 1e-4,
    .hartree_in_ev = codata2018::kHartreeInEv,
    .bohr_radius_in_nm = codata2018::kBohrRadiusInMeters * 1e9,
    .version = "CODATA-2018",
};

[[nodiscard]] double au_time_to_attoseconds(double t_au);
[[nodiscard]] double attoseconds_to_au_time(double t_as);

/// Peak field (au) of a laser with the given intensity in W/cm^2.
[[nodiscard]] double intensity_to_field(double intensity_w_per_cm2);
[[nodiscard]] double field_to_intensity(double field_au);

/// Field along the major axis for an elliptically polarized pulse of
/// ellipticity `eps` in [0, 1]: F0 / sqrt(1 + eps^2).
[[nodiscard]] double elliptical_peak_field(double f0_au, double eps);

[[nodiscard]] double wavelength_to_angular_frequency(double lambda_nm);

[[nodiscard]] double ev_to_hartree(double energy_ev);

}  // namespace tunneltime
