#include "tunneltime/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tunneltime/errors.hpp"

namespace tunneltime {

static_assert(kConstants.au_time_in_attoseconds > 24.18 && kConstants.au_time_in_attoseconds < 24.20);
static_assert(kConstants.speed_of_light > 137.0 && kConstants.speed_of_light < 137.1);
static_assert(kConstants.intensity_au_in_w_per_cm2 > 0.0 && kConstants.hartree_in_ev > 0.0);

namespace {

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw InvalidArgument(std::string(what) + " must be finite");
    }
}

}  // namespace

double au_time_to_attoseconds(double t_au) {
    require_finite(t_au, "time");
    return t_au * kConstants.au_time_in_attoseconds;
}

double attoseconds_to_au_time(double t_as) {
    require_finite(t_as, "time");
    return t_as / kConstants.au_time_in_attoseconds;
}

double intensity_to_field(double intensity_w_per_cm2) {
    require_finite(intensity_w_per_cm2, "intensity");
    if (intensity_w_per_cm2 < 0.0) {
        throw InvalidArgument("intensity must be non-negative");
    }
    return std::sqrt(intensity_w_per_cm2 / kConstants.intensity_au_in_w_per_cm2);
}

double field_to_intensity(double field_au) {
    require_finite(field_au, "field");
    if (field_au < 0.0) {
        throw InvalidArgument("field must be non-negative");
    }
    return field_au * field_au * kConstants.intensity_au_in_w_per_cm2;
}

double elliptical_peak_field(double f0_au, double eps) {
    require_finite(f0_au, "F0");
    require_finite(eps, "ellipticity");
    if (f0_au < 0.0) {
        throw InvalidArgument("F0 must be non-negative");
    }
    if (eps < 0.0 || eps > 1.0) {
        throw InvalidArgument("ellipticity must lie in [0, 1]");
    }
    return f0_au / std::sqrt(1.0 + eps * eps);
}

double wavelength_to_angular_frequency(double lambda_nm) {
    require_finite(lambda_nm, "wavelength");
    if (lambda_nm <= 0.0) {
        throw InvalidArgument("wavelength must be positive");
    }
    // omega = 2 pi c / lambda with c in au and lambda in bohr.
    return 2.0 * std::numbers::pi * kConstants.speed_of_light * kConstants.bohr_radius_in_nm / lambda_nm;
}

double ev_to_hartree(double energy_ev) {
    require_finite(energy_ev, "energy");
    return energy_ev / kConstants.hartree_in_ev;
}

}  // namespace tunneltime
