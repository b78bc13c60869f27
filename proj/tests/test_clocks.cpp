#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tunneltime/clocks.hpp"
#include "tunneltime/errors.hpp"
#include "tunneltime/units.hpp"

using namespace tunneltime;
using tunneltime::testing::field;
using tunneltime::testing::helium_clementi;
using tunneltime::testing::helium_kullie;
using tunneltime::testing::rel_err;
using tunneltime::testing::Sampler;

// mpmath values, He/Clementi with I_p = 0.90357 au.
namespace ref {
constexpr double kTauD006 = 1.90741347022642;     // 46.13812547 as
constexpr double kTauI006 = 0.323623566810613;    // 7.828079735 as
constexpr double kTauSym006 = 2.23103703703704;   // 53.96620521 as
constexpr double kTauUnsy006 = 3.81482694045285;
constexpr double kTauT006 = 2.46077402889924;
constexpr double kTauD003 = 4.16570971203827;     // 100.7636993 as
constexpr double kDePlus006 = 0.131067544558298;
constexpr double kTauA = 1.10672111734564;        // 26.77030365 as
constexpr double kHalfTauA = 0.553360558672820036;
constexpr double kRe015 = 0.446207407407407;
constexpr double kIm015 = 0.218660764248352;
constexpr double kTauSym015 = 0.892414814814815;
constexpr double kGamma006 = 1.38890640832478;
constexpr double kGamma012 = 0.694453204162390;
}  // namespace ref

namespace {
BarrierGeometry geom_at(const AtomModel& atom, double f) { return solve_geometry(atom, field(f)); }
}  // namespace

TEST_CASE("energy_uncertainty_at") {
    const AtomModel he = helium_clementi();
    const BarrierGeometry g = geom_at(he, 0.06);
    CHECK(rel_err(energy_uncertainty_at(*g.x_exit, he), ref::kDePlus006) < 1e-13);
    CHECK(rel_err(energy_uncertainty_at(*g.x_exit, he), (he.ip - g.delta_z) / 2.0) < 1e-13);
    CHECK(rel_err(energy_uncertainty_at(2.0 * he.z_eff / he.ip, he), he.ip / 2.0) < 1e-15);
    CHECK(energy_uncertainty_at(1.0, AtomModel::create("u", 1.0, 1.0, "")) == 1.0);
    CHECK_THROWS_AS((void)energy_uncertainty_at(0.0, he), DomainError);
}

TEST_CASE("tau_unsymmetric") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_unsymmetric(geom_at(he, 0.06), he), ref::kTauUnsy006) < 1e-13);
    CHECK(rel_err(tau_unsymmetric(geom_at(he, atomic_field_strength(he)), he), ref::kTauA) < 1e-14);
    CHECK(tau_unsymmetric(geom_at(he, 0.06), he) == 2.0 * tau_delay(geom_at(he, 0.06), he));
    CHECK_THROWS_AS((void)tau_unsymmetric(geom_at(he, 0.15), he), RegimeError);
}

TEST_CASE("tau_classical_first_order is I_p/(2F) as printed") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_classical_first_order(he, field(0.06)), 7.52975) < 1e-15);
    CHECK(tau_classical_first_order(AtomModel::create("u", 1.0, 3.0, ""), field(0.5)) == 1.0);
    CHECK(tau_classical_first_order(he, field(0.06)) == he.ip / (2.0 * 0.06));
}

TEST_CASE("tau_delay") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_delay(geom_at(he, 0.06), he), ref::kTauD006) < 1e-13);
    CHECK(au_time_to_attoseconds(tau_delay(geom_at(he, 0.06), he)) == doctest::Approx(46.14).epsilon(1e-4));
    CHECK(tau_delay(geom_at(he, atomic_field_strength(he)), he) == 1.0 / (2.0 * he.ip));
    CHECK(au_time_to_attoseconds(ref::kHalfTauA) == doctest::Approx(13.39).epsilon(5e-4));
    CHECK(rel_err(tau_delay(geom_at(he, 0.03), he), ref::kTauD003) < 1e-13);
    CHECK(au_time_to_attoseconds(tau_delay(geom_at(he, 0.03), he)) == doctest::Approx(100.76).epsilon(1e-4));
    CHECK_THROWS_AS((void)tau_delay(geom_at(he, 0.15), he), RegimeError);
}

TEST_CASE("tau_initial") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_initial(geom_at(he, 0.06), he), ref::kTauI006) < 1e-13);
    CHECK(au_time_to_attoseconds(tau_initial(geom_at(he, 0.06), he)) == doctest::Approx(7.83).epsilon(5e-4));
    CHECK(tau_initial(geom_at(he, atomic_field_strength(he)), he) == 1.0 / (2.0 * he.ip));
    CHECK(tau_initial(geom_at(he, 0.06), he) <= tau_delay(geom_at(he, 0.06), he));
    CHECK_THROWS_AS((void)tau_initial(geom_at(he, 0.15), he), RegimeError);
}

TEST_CASE("tau_symmetric") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_symmetric(geom_at(he, 0.06), he), ref::kTauSym006) < 1e-14);
    CHECK(au_time_to_attoseconds(tau_symmetric(geom_at(he, 0.06), he)) == doctest::Approx(53.97).epsilon(1e-4));
    CHECK(rel_err(tau_symmetric(geom_at(he, atomic_field_strength(he)), he), 1.0 / he.ip) < 1e-15);
    CHECK(rel_err(ref::kTauI006 + ref::kTauD006, ref::kTauSym006) < 1e-13);
    CHECK(rel_err(tau_symmetric(geom_at(he, 0.15), he), ref::kTauSym015) < 1e-14);
}

TEST_CASE("tau_total") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_total(geom_at(he, 0.06), he), ref::kTauT006) < 1e-13);
    CHECK(rel_err(tau_total(geom_at(he, 0.06), he), ref::kHalfTauA + ref::kTauD006) < 1e-13);
    CHECK(tau_total(geom_at(he, atomic_field_strength(he)), he) == 1.0 / he.ip);
    for (double f = 0.01; f < 0.12; f += 0.01) {
        CHECK(tau_total(geom_at(he, f), he) >= tau_symmetric(geom_at(he, f), he));
    }
    CHECK_THROWS_AS((void)tau_total(geom_at(he, 0.15), he), RegimeError);
}

TEST_CASE("tau_appearance") {
    const AtomModel he = helium_clementi();
    CHECK(rel_err(tau_appearance(he), ref::kTauA) < 1e-14);
    CHECK(au_time_to_attoseconds(tau_appearance(he)) == doctest::Approx(26.77).epsilon(1e-4));
    CHECK(tau_appearance(AtomModel::create("H", 0.5, 1.0, "")) == 2.0);
    CHECK(rel_err(tau_appearance(he), tau_symmetric(geom_at(he, atomic_field_strength(he)), he)) < 1e-15);
}

TEST_CASE("complex_times above F_a") {
    const AtomModel he = helium_clementi();
    const ComplexTimes c = complex_times(geom_at(he, 0.15), he);
    CHECK(rel_err(c.delay.real(), ref::kRe015) < 1e-13);
    CHECK(rel_err(c.delay.imag(), ref::kIm015) < 1e-13);
    CHECK(c.initial == std::conj(c.delay));
    CHECK(rel_err(c.delay.real() + c.initial.real(), ref::kTauSym015) < 1e-13);

    const double f_a = atomic_field_strength(he);
    const ComplexTimes edge = complex_times(geom_at(he, f_a * (1 + 1e-9)), he);
    CHECK(std::abs(edge.delay.real() - 1.0 / (2.0 * he.ip)) < 1e-8);
    CHECK(std::abs(edge.delay.imag()) < 1e-4);

    CHECK_THROWS_AS((void)complex_times(geom_at(he, 0.06), he), RegimeError);
    CHECK_THROWS_AS((void)complex_times(geom_at(he, f_a), he), RegimeError);
}

TEST_CASE("keldysh_gamma") {
    const AtomModel he = helium_clementi();
    const double omega = wavelength_to_angular_frequency(735.0);
    CHECK(rel_err(keldysh_gamma(he, field(0.06), omega), ref::kGamma006) < 1e-12);
    CHECK(rel_err(keldysh_gamma(he, field(0.12), omega), ref::kGamma012) < 1e-12);
    CHECK(keldysh_gamma(he, field(1e12), omega) < 1e-12);
    CHECK_THROWS_AS((void)keldysh_gamma(he, field(0.06), 0.0), InvalidArgument);
}

TEST_CASE("compute_clocks fills the regime-appropriate fields") {
    const AtomModel he = helium_clementi();
    const TunnelClocks sub = compute_clocks(geom_at(he, 0.06), he);
    CHECK(sub.tau_d.has_value());
    CHECK(sub.de_minus.has_value());
    CHECK_FALSE(sub.complex_parts.has_value());
    CHECK(rel_err(*sub.de_plus, ref::kDePlus006) < 1e-13);

    const TunnelClocks atomic = compute_clocks(geom_at(he, atomic_field_strength(he)), he);
    CHECK(*atomic.tau_d == *atomic.tau_i);
    CHECK(*atomic.tau_d == 1.0 / (2.0 * he.ip));
    CHECK(rel_err(atomic.tau_sym, atomic.tau_a) < 1e-15);

    const TunnelClocks super = compute_clocks(geom_at(he, 0.15), he);
    CHECK_FALSE(super.tau_d.has_value());
    CHECK_FALSE(super.tau_unsy.has_value());
    CHECK(super.complex_parts.has_value());
    CHECK(super.tau_sym > 0.0);
}

TEST_CASE("property: decomposition and hyperbola law") {
    Sampler sample(31337);
    for (int i = 0; i < 1000; ++i) {
        const AtomModel atom = sample.atom();
        const double f = atomic_field_strength(atom) * sample.log_uniform(1e-4, 0.999);
        const BarrierGeometry g = solve_geometry(atom, field(f));
        REQUIRE(g.regime == Regime::sub_atomic);
        const TunnelClocks c = compute_clocks(g, atom);
        CHECK(rel_err(*c.tau_i + *c.tau_d, c.tau_sym) <= 1e-13);
        CHECK(rel_err(c.tau_sym * 4.0 * atom.z_eff * f, atom.ip) <= 1e-13);
        CHECK(*c.tau_d >= *c.tau_i);
        CHECK(*c.tau_unsy == 2.0 * *c.tau_d);
        CHECK(rel_err(*c.de_plus * (atom.ip + g.delta_z), 2.0 * atom.z_eff * f) <= 1e-13);
    }
}

TEST_CASE("property: ΔE double identity where I_p - δ_z is well conditioned") {
    Sampler sample(4);
    for (int i = 0; i < 1000; ++i) {
        const AtomModel atom = sample.atom();
        const double f = atomic_field_strength(atom) * sample.uniform(0.05, 0.999);
        const BarrierGeometry g = solve_geometry(atom, field(f));
        const TunnelClocks c = compute_clocks(g, atom);
        CHECK(rel_err(*c.de_plus, (atom.ip - g.delta_z) / 2.0) <= 1e-13);
    }
}

TEST_CASE("property: monotonicity and limits") {
    for (const AtomModel& atom : {helium_clementi(), helium_kullie()}) {
        const double f_a = atomic_field_strength(atom);
        double prev_d = tau_delay(solve_geometry(atom, field(1e-3 * f_a)), atom);
        double prev_i = tau_initial(solve_geometry(atom, field(1e-3 * f_a)), atom);
        const double hyperbola = tau_symmetric(solve_geometry(atom, field(1e-3 * f_a)), atom) * 1e-3 * f_a;
        for (int k = 1; k <= 1000; ++k) {
            const double f = f_a * (1e-3 + (1.0 - 1e-3) * k / 1000.0);
            const BarrierGeometry g = solve_geometry(atom, field(f));
            const double d = tau_delay(g, atom);
            const double i = tau_initial(g, atom);
            CHECK(d < prev_d);
            CHECK(i > prev_i);
            CHECK(rel_err(tau_symmetric(g, atom) * f, hyperbola) <= 1e-13);
            prev_d = d;
            prev_i = i;
        }
        const BarrierGeometry at_fa = solve_geometry(atom, field(f_a));
        CHECK(rel_err(tau_delay(at_fa, atom), 1.0 / (2.0 * atom.ip)) <= 1e-13);
        CHECK(rel_err(tau_initial(at_fa, atom), 1.0 / (2.0 * atom.ip)) <= 1e-13);
        CHECK(rel_err(tau_symmetric(at_fa, atom), 1.0 / atom.ip) <= 1e-13);
    }
}

TEST_CASE("property: first-order expansion of tau_unsy carries Z_eff") {
    for (const AtomModel& atom : {helium_clementi(), helium_kullie()}) {
        const double f_a = atomic_field_strength(atom);
        for (double s = 1e-8; s <= 1e-2; s *= 1.5) {
            const double f = s * f_a;
            const double ratio = tau_unsymmetric(solve_geometry(atom, field(f)), atom) * 2.0 * atom.z_eff * f / atom.ip;
            CHECK(ratio >= 0.98);
            CHECK(ratio <= 1.02);
        }
    }
}

TEST_CASE("property: complex parts are conjugate and sum to tau_sym") {
    Sampler sample(555);
    for (int i = 0; i < 1000; ++i) {
        const AtomModel atom = sample.atom();
        const double f = atomic_field_strength(atom) * sample.uniform(1.0 + 1e-9, 2.0);
        const BarrierGeometry g = solve_geometry(atom, field(f));
        const ComplexTimes c = complex_times(g, atom);
        CHECK(rel_err(c.delay.real(), c.initial.real()) <= 1e-13);
        CHECK(rel_err(-c.delay.imag(), c.initial.imag()) <= 1e-13);
        CHECK(rel_err(c.delay.real() + c.initial.real(), tau_symmetric(g, atom)) <= 1e-13);
    }
}
