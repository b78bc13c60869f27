#pragma once

#include <complex>
#include <optional>

#include "tunneltime/atom.hpp"
#include "tunneltime/barrier.hpp"

namespace tunneltime {

/// Above F_a the delay and initial times become complex conjugates.
struct ComplexTimes {
    std::complex<double> delay;    // tau_{T,d} = 1/(2(I_p - i delta''))
    std::complex<double> initial;  // tau_{T,i} = 1/(2(I_p + i delta''))
};

/// Every tunneling-time estimator for one (atom, field) point, in au.
/// Real-only estimators are empty in the super-atomic regime, where
/// `complex_parts` is filled instead.
struct TunnelClocks {
    std::optional<double> tau_i;     // time to reach the entrance
    std::optional<double> tau_d;     // time under the barrier
    double tau_sym = 0.0;            // tau_i + tau_d = I_p/(4 Z_eff F)
    std::optional<double> tau_unsy;  // 1/(I_p - delta_z)
    double tau_c = 0.0;              // I_p/(2F)
    std::optional<double> tau_t;     // (1/I_p + 1/(I_p - delta_z))/2
    double tau_a = 0.0;              // 1/I_p
    std::optional<double> de_plus;   // Z_eff/x_{e,+}
    std::optional<double> de_minus;  // Z_eff/x_{e,-}
    std::optional<ComplexTimes> complex_parts;
};

/// Delta E ~ |V(x)| = Z_eff/x.
[[nodiscard]] double energy_uncertainty_at(double x, const AtomModel& atom);

[[nodiscard]] double tau_unsymmetric(const BarrierGeometry& geom, const AtomModel& atom);
/// I_p/(2F), reproduced literally (no Z_eff in the denominator).
[[nodiscard]] double tau_classical_first_order(const AtomModel& atom, const LaserField& field);
[[nodiscard]] double tau_delay(const BarrierGeometry& geom, const AtomModel& atom);
[[nodiscard]] double tau_initial(const BarrierGeometry& geom, const AtomModel& atom);
/// Real for every F > 0.
[[nodiscard]] double tau_symmetric(const BarrierGeometry& geom, const AtomModel& atom);
[[nodiscard]] double tau_total(const BarrierGeometry& geom, const AtomModel& atom);
[[nodiscard]] double tau_appearance(const AtomModel& atom);
[[nodiscard]] ComplexTimes complex_times(const BarrierGeometry& geom, const AtomModel& atom);

/// gamma_K = omega sqrt(2 I_p) / F.
[[nodiscard]] double keldysh_gamma(const AtomModel& atom, const LaserField& field, double omega_au);

[[nodiscard]] TunnelClocks compute_clocks(const BarrierGeometry& geom, const AtomModel& atom);

}  // namespace tunneltime
