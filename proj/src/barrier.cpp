#include "tunneltime/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "tunneltime/errors.hpp"

namespace tunneltime {

namespace {

void require_position(double x) {
    if (!(std::isfinite(x) && x > 0.0)) {
        throw DomainError("position must be positive and finite, got " + std::to_string(x));
    }
}

template <typename F>
double bisect(F&& signed_h, double lo, double hi, double tol) {
    double f_lo = signed_h(lo);
    const double f_hi = signed_h(hi);
    if (std::signbit(f_lo) == std::signbit(f_hi)) {
        throw ConsistencyError("bisection bracket does not straddle a root of the barrier height");
    }
    for (int iter = 0; iter < 2000 && hi - lo > tol; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;  // interval is a single ulp wide
        }
        const double f_mid = signed_h(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::sub_atomic: return "sub_atomic";
        case Regime::atomic: return "atomic";
        case Regime::super_atomic: return "super_atomic";
    }
    return "unknown";
}

double effective_potential(double x, const AtomModel& atom, const LaserField& field) {
    require_position(x);
    return -atom.z_eff / x - x * field.f_peak;
}

double signed_barrier_height(double x, const AtomModel& atom, const LaserField& field) {
    require_position(x);
    return -atom.ip + atom.z_eff / x + x * field.f_peak;
}

double barrier_height(double x, const AtomModel& atom, const LaserField& field) {
    return std::abs(signed_barrier_height(x, atom, field));
}

double barrier_peak_position(const AtomModel& atom, const LaserField& field) {
    if (!(field.f_peak > 0.0)) {
        throw InvalidArgument("field strength must be positive");
    }
    return std::sqrt(atom.z_eff / field.f_peak);
}

double atomic_field_strength(const AtomModel& atom) {
    return atom.ip * atom.ip / (4.0 * atom.z_eff);
}

double appearance_intensity(const AtomModel& atom) {
    const double f_a = atomic_field_strength(atom);
    return f_a * f_a;
}

Regime classify_regime(const AtomModel& atom, const LaserField& field) {
    const double f_a = atomic_field_strength(atom);
    if (std::abs(field.f_peak - f_a) <= kAtomicRegimeTolerance * f_a) {
        return Regime::atomic;
    }
    return field.f_peak < f_a ? Regime::sub_atomic : Regime::super_atomic;
}

DeltaZ delta_z(const AtomModel& atom, const LaserField& field) {
    if (!(field.f_peak > 0.0)) {
        throw InvalidArgument("field strength must be positive");
    }
    const double discriminant = atom.ip * atom.ip - 4.0 * atom.z_eff * field.f_peak;
    switch (classify_regime(atom, field)) {
        case Regime::atomic: return {};
        case Regime::sub_atomic: return {std::sqrt(std::max(discriminant, 0.0)), 0.0};
        case Regime::super_atomic: return {0.0, std::sqrt(std::max(-discriminant, 0.0))};
    }
    return {};
}

ExitPoints exit_points(const AtomModel& atom, const LaserField& field) {
    const double f = field.f_peak;
    const DeltaZ dz = delta_z(atom, field);
    switch (classify_regime(atom, field)) {
        case Regime::atomic: {
            const double x_a = barrier_peak_position(atom, field);
            return {x_a, x_a};
        }
        case Regime::sub_atomic:
            // x_- from x_- x_+ = Z_eff/F; (I_p - delta_z) cancels at small F.
            return {2.0 * atom.z_eff / (atom.ip + dz.real), (atom.ip + dz.real) / (2.0 * f)};
        case Regime::super_atomic:
            throw RegimeError("no real barrier crossings above the atomic field strength",
                              std::complex<double>(atom.ip, -dz.imag) / (2.0 * f),
                              std::complex<double>(atom.ip, dz.imag) / (2.0 * f));
    }
    throw ConsistencyError("unhandled regime");
}

double classical_exit(const AtomModel& atom, const LaserField& field) {
    if (!(field.f_peak > 0.0)) {
        throw InvalidArgument("field strength must be positive");
    }
    return atom.ip / field.f_peak;
}

double barrier_width(const AtomModel& atom, const LaserField& field) {
    switch (classify_regime(atom, field)) {
        case Regime::atomic: return 0.0;
        case Regime::sub_atomic: return delta_z(atom, field).real / field.f_peak;
        case Regime::super_atomic:
            (void)exit_points(atom, field);  // throws with the complex pair
    }
    throw ConsistencyError("unhandled regime");
}

double barrier_height_max(const AtomModel& atom, const LaserField& field) {
    if (classify_regime(atom, field) == Regime::atomic) {
        return 0.0;
    }
    return std::abs(-atom.ip + std::sqrt(4.0 * atom.z_eff * field.f_peak));
}

ExitPoints exit_points_oracle(const AtomModel& atom, const LaserField& field, double tol) {
    if (!(tol > 0.0)) {
        throw InvalidArgument("tolerance must be positive");
    }
    if (classify_regime(atom, field) != Regime::sub_atomic) {
        throw RegimeError("bisection oracle requires a sub-atomic field");
    }
    const auto h = [&](double x) { return signed_barrier_height(x, atom, field); };
    const double x_m = barrier_peak_position(atom, field);
    if (!(h(x_m) < 0.0)) {
        throw ConsistencyError("barrier top is not below the -I_p level in the sub-atomic regime");
    }
    // h -> +inf as x -> 0+, so any tiny positive lower end brackets the entrance.
    const double lower = x_m * 1e-12;
    const double upper = 1.5 * atom.ip / field.f_peak;
    return {bisect(h, lower, x_m, tol), bisect(h, x_m, upper, tol)};
}

BarrierGeometry solve_geometry(const AtomModel& atom, const LaserField& field) {
    BarrierGeometry geom;
    geom.f = field.f_peak;
    geom.regime = classify_regime(atom, field);
    const DeltaZ dz = delta_z(atom, field);
    geom.delta_z = dz.real;
    geom.delta_z_imag = dz.imag;
    geom.x_classical = classical_exit(atom, field);
    geom.x_peak = barrier_peak_position(atom, field);
    geom.h_max = barrier_height_max(atom, field);
    if (geom.regime != Regime::super_atomic) {
        const ExitPoints xs = exit_points(atom, field);
        geom.x_entrance = xs.minus;
        geom.x_exit = xs.plus;
        geom.barrier_width = barrier_width(atom, field);
    }
    return geom;
}

}  // namespace tunneltime
