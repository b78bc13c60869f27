#include <doctest.h>

#include <algorithm>
#include <string>

#include "test_support.hpp"
#include "tunneltime/atom.hpp"
#include "tunneltime/barrier.hpp"
#include "tunneltime/errors.hpp"
#include "tunneltime/units.hpp"

using namespace tunneltime;
using tunneltime::testing::rel_err;
using tunneltime::testing::Sampler;

TEST_CASE("builtin catalog carries both helium screening models") {
    const auto& catalog = builtin_catalog();
    const auto has = [&](double z, std::string_view source) {
        return std::ranges::any_of(catalog, [&](const AtomModel& a) {
            return a.name == "He" && a.z_eff == z && a.source == source;
        });
    };
    CHECK(has(1.375, "Kullie"));
    CHECK(has(1.6875, "Clementi"));

    const auto he = find_in_catalog("He");
    REQUIRE(he.size() == 2);
    CHECK(he[0].ip == he[1].ip);
    // 24.587387 eV / 27.211386245988 eV per hartree
    CHECK(rel_err(he[0].ip, 0.90356980632051122) < 1e-14);
    CHECK(he[0].ip == doctest::Approx(0.90357).epsilon(1e-5));

    for (const auto& atom : catalog) {
        CHECK(atom.ip > 0.0);
        CHECK(atom.z_eff > 0.0);
        CHECK(std::isfinite(atomic_field_strength(atom)));
        CHECK(atomic_field_strength(atom) > 0.0);
    }
}

TEST_CASE("find_in_catalog is case-insensitive") {
    CHECK(find_in_catalog("he", "clementi").size() == 1);
    CHECK(find_in_catalog("HE", "KULLIE").front().z_eff == 1.375);
    CHECK(find_in_catalog("h").size() == 1);
    CHECK(find_in_catalog("Ne").empty());
}

TEST_CASE("AtomModel::create enforces invariants") {
    CHECK_THROWS_AS(AtomModel::create("x", 0.0, 1.0, ""), InvalidArgument);
    CHECK_THROWS_AS(AtomModel::create("x", 1.0, -1.0, ""), InvalidArgument);
    CHECK_THROWS_AS(AtomModel::create("x", std::nan(""), 1.0, ""), InvalidArgument);
    CHECK(AtomModel::create("He", 0.9, 1.6875, "Clementi").label() == "He/Clementi");
}

TEST_CASE("load_atom") {
    SUBCASE("whitespace separated") {
        const AtomModel he = load_atom("name=He ip=0.90357 z_eff=1.6875");
        CHECK(he.name == "He");
        CHECK(he.ip == 0.90357);
        CHECK(he.z_eff == 1.6875);
        CHECK(he.source == "config");
    }
    SUBCASE("hydrogen, one pair per line") {
        const AtomModel h = load_atom("# hydrogen ground state\nname=H\nip=0.5\nz_eff=1.0\nsource=exact\n");
        CHECK(h.ip == 0.5);
        CHECK(h.source == "exact");
        CHECK(atomic_field_strength(h) == 0.0625);
    }
    SUBCASE("errors name the key") {
        CHECK_THROWS_AS((void)load_atom("ip=-1"), ParseError);
        CHECK_THROWS_WITH_AS((void)load_atom("name=He ip=-1 z_eff=1"), doctest::Contains("'ip'"), ParseError);
        CHECK_THROWS_WITH_AS((void)load_atom("name=He ip=0.9"), doctest::Contains("'z_eff'"), ParseError);
        CHECK_THROWS_WITH_AS((void)load_atom("name=He ip=abc z_eff=1"), doctest::Contains("'ip'"), ParseError);
        CHECK_THROWS_WITH_AS((void)load_atom("name=He ip=1 z_eff=1 colour=red"), doctest::Contains("'colour'"),
                             ParseError);
        CHECK_THROWS_AS((void)load_atom("name=He ip=1 ip=2 z_eff=1"), ParseError);
        CHECK_THROWS_AS((void)load_atom("name=He ip 1 z_eff=1"), ParseError);
    }
}

TEST_CASE("load_atom is total over generated inputs") {
    Sampler sample(99);
    const std::vector<std::string> keys{"name", "ip", "z_eff", "source", "bogus", ""};
    const std::vector<std::string> values{"He", "0.5", "-1", "1e-3", "nan", "", "1.6875", "x=y", "1e400"};
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        const int n = static_cast<int>(sample.uniform(0, 6));
        for (int k = 0; k < n; ++k) {
            text += keys[static_cast<std::size_t>(sample.uniform(0, keys.size() - 1e-9))] + "=" +
                    values[static_cast<std::size_t>(sample.uniform(0, values.size() - 1e-9))] +
                    (sample.uniform(0, 1) < 0.5 ? " " : "\n");
        }
        try {
            const AtomModel atom = load_atom(text);
            CHECK(atom.ip > 0.0);
            CHECK(atom.z_eff > 0.0);
            CHECK(std::isfinite(atomic_field_strength(atom)));
        } catch (const ParseError&) {
        } catch (const InvalidArgument&) {
        }
    }
}

TEST_CASE("LaserField construction") {
    CHECK(LaserField::direct(0.06).f_peak == 0.06);
    CHECK(LaserField::direct(0.06).origin == FieldOrigin::direct);
    CHECK_THROWS_AS((void)LaserField::direct(-1.0), InvalidArgument);
    CHECK_THROWS_AS((void)LaserField::direct(0.0), InvalidArgument);
    CHECK_THROWS_AS((void)LaserField::from_intensity(0.0), InvalidArgument);

    const LaserField ell = LaserField::from_f0_ellipticity(0.1, 0.87);
    CHECK(ell.origin == FieldOrigin::from_f0_ellipticity);
    CHECK(rel_err(ell.f_peak, elliptical_peak_field(*ell.f0, *ell.ellipticity)) <= 1e-14);

    const LaserField lab = LaserField::from_intensity(2.0e14).with_wavelength(735.0);
    CHECK(lab.origin == FieldOrigin::from_intensity);
    REQUIRE(lab.omega().has_value());
    CHECK(rel_err(*lab.omega(), 0.061990955821876935) < 1e-12);
    CHECK_FALSE(LaserField::direct(0.1).omega().has_value());
}
