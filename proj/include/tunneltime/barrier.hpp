#pragma once

#include <optional>
#include <string_view>

#include "tunneltime/atom.hpp"

namespace tunneltime {

enum class Regime { sub_atomic, atomic, super_atomic };

[[nodiscard]] std::string_view to_string(Regime regime);

/// |F - F_a| <= kAtomicRegimeTolerance * F_a is treated as F = F_a.
inline constexpr double kAtomicRegimeTolerance = 1e-12;

/// delta_z = sqrt(I_p^2 - 4 Z_eff F). Exactly one of the parts is non-zero
/// away from F_a; above F_a the root is imaginary.
struct DeltaZ {
    double real = 0.0;
    double imag = 0.0;
};

struct ExitPoints {
    double minus = 0.0;  // entrance x_{e,-}
    double plus = 0.0;   // exit x_{e,+}
};

/// Static geometry of the 1D barrier -Z_eff/x - F x against the -I_p level.
/// Crossing points and width are absent in the super-atomic regime.
struct BarrierGeometry {
    double f = 0.0;
    double delta_z = 0.0;
    double delta_z_imag = 0.0;
    std::optional<double> x_entrance;
    std::optional<double> x_exit;
    double x_classical = 0.0;
    double x_peak = 0.0;
    std::optional<double> barrier_width;
    double h_max = 0.0;
    Regime regime = Regime::sub_atomic;
};

[[nodiscard]] double effective_potential(double x, const AtomModel& atom, const LaserField& field);

/// -I_p - V_eff(x). Negative under the barrier, zero at the crossings.
[[nodiscard]] double signed_barrier_height(double x, const AtomModel& atom, const LaserField& field);
[[nodiscard]] double barrier_height(double x, const AtomModel& atom, const LaserField& field);

/// x_m = sqrt(Z_eff / F), where the Coulomb and field terms are equal.
[[nodiscard]] double barrier_peak_position(const AtomModel& atom, const LaserField& field);

/// F_a = I_p^2 / (4 Z_eff): the barrier top touches -I_p.
[[nodiscard]] double atomic_field_strength(const AtomModel& atom);
/// I_a = F_a^2 in au.
[[nodiscard]] double appearance_intensity(const AtomModel& atom);

[[nodiscard]] Regime classify_regime(const AtomModel& atom, const LaserField& field);
[[nodiscard]] DeltaZ delta_z(const AtomModel& atom, const LaserField& field);

/// Closed-form crossings (I_p -/+ delta_z)/(2F). Throws RegimeError carrying
/// the complex pair above F_a.
[[nodiscard]] ExitPoints exit_points(const AtomModel& atom, const LaserField& field);

/// x_{e,c} = I_p/F, the exit when the Coulomb term is dropped.
[[nodiscard]] double classical_exit(const AtomModel& atom, const LaserField& field);

/// d_B = delta_z / F.
[[nodiscard]] double barrier_width(const AtomModel& atom, const LaserField& field);

/// Maximum of |h_B|, reached at x_m: |-I_p + sqrt(4 Z_eff F)|.
[[nodiscard]] double barrier_height_max(const AtomModel& atom, const LaserField& field);

/// Independent root isolation for h_B(x) = 0 by bisection on (0, x_m] and
/// [x_m, 1.5 I_p/F]. Never touches the closed form. Sub-atomic only.
[[nodiscard]] ExitPoints exit_points_oracle(const AtomModel& atom, const LaserField& field, double tol);

[[nodiscard]] BarrierGeometry solve_geometry(const AtomModel& atom, const LaserField& field);

}  // namespace tunneltime
