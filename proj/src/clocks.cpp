#include "tunneltime/clocks.hpp"

#include <cmath>
#include <string>

#include "tunneltime/errors.hpp"

namespace tunneltime {

namespace {

void require_real_barrier(const BarrierGeometry& geom, const char* what) {
    if (geom.regime == Regime::super_atomic) {
        throw RegimeError(std::string(what) + " is complex above the atomic field strength; use complex_times");
    }
}

// I_p - delta_z, written as 4 Z_eff F / (I_p + delta_z) so that small fields
// do not cancel. Exactly I_p at F_a.
double ip_minus_delta(const BarrierGeometry& geom, const AtomModel& atom) {
    if (geom.delta_z == 0.0) {
        return atom.ip;
    }
    return 4.0 * atom.z_eff * geom.f / (atom.ip + geom.delta_z);
}

}  // namespace

double energy_uncertainty_at(double x, const AtomModel& atom) {
    if (!(std::isfinite(x) && x > 0.0)) {
        throw DomainError("position must be positive and finite");
    }
    return atom.z_eff / x;
}

double tau_unsymmetric(const BarrierGeometry& geom, const AtomModel& atom) {
    require_real_barrier(geom, "tau_unsy");
    return 1.0 / ip_minus_delta(geom, atom);
}

double tau_classical_first_order(const AtomModel& atom, const LaserField& field) {
    if (!(field.f_peak > 0.0)) {
        throw InvalidArgument("field strength must be positive");
    }
    return atom.ip / (2.0 * field.f_peak);
}

double tau_delay(const BarrierGeometry& geom, const AtomModel& atom) {
    require_real_barrier(geom, "tau_d");
    return 1.0 / (2.0 * ip_minus_delta(geom, atom));
}

double tau_initial(const BarrierGeometry& geom, const AtomModel& atom) {
    require_real_barrier(geom, "tau_i");
    return 1.0 / (2.0 * (atom.ip + geom.delta_z));
}

double tau_symmetric(const BarrierGeometry& geom, const AtomModel& atom) {
    if (!(geom.f > 0.0)) {
        throw InvalidArgument("field strength must be positive");
    }
    return atom.ip / (4.0 * atom.z_eff * geom.f);
}

double tau_total(const BarrierGeometry& geom, const AtomModel& atom) {
    require_real_barrier(geom, "tau_t");
    return 0.5 * (1.0 / atom.ip + 1.0 / ip_minus_delta(geom, atom));
}

double tau_appearance(const AtomModel& atom) {
    return 1.0 / atom.ip;
}

ComplexTimes complex_times(const BarrierGeometry& geom, const AtomModel& atom) {
    if (geom.regime != Regime::super_atomic) {
        throw RegimeError("complex times exist only above the atomic field strength");
    }
    const double d = geom.delta_z_imag;
    const double denom = 2.0 * (atom.ip * atom.ip + d * d);
    return {
        .delay = {atom.ip / denom, d / denom},
        .initial = {atom.ip / denom, -d / denom},
    };
}

double keldysh_gamma(const AtomModel& atom, const LaserField& field, double omega_au) {
    if (!(field.f_peak > 0.0) || !(omega_au > 0.0)) {
        throw InvalidArgument("field strength and frequency must be positive");
    }
    return omega_au * std::sqrt(2.0 * atom.ip) / field.f_peak;
}

TunnelClocks compute_clocks(const BarrierGeometry& geom, const AtomModel& atom) {
    TunnelClocks clocks;
    clocks.tau_sym = tau_symmetric(geom, atom);
    clocks.tau_c = atom.ip / (2.0 * geom.f);
    clocks.tau_a = tau_appearance(atom);
    if (geom.regime == Regime::super_atomic) {
        clocks.complex_parts = complex_times(geom, atom);
        return clocks;
    }
    clocks.tau_i = tau_initial(geom, atom);
    clocks.tau_d = tau_delay(geom, atom);
    clocks.tau_unsy = tau_unsymmetric(geom, atom);
    clocks.tau_t = tau_total(geom, atom);
    clocks.de_plus = energy_uncertainty_at(*geom.x_exit, atom);
    clocks.de_minus = energy_uncertainty_at(*geom.x_entrance, atom);
    return clocks;
}

}  // namespace tunneltime
