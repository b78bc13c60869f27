#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tunneltime {

/// One-electron model of the ionizing atom: ionization potential and the
/// effective nuclear charge seen by the active electron.
struct AtomModel {
    std::string name;
    double ip = 0.0;     // au
    double z_eff = 0.0;
    std::string source;

    /// Validating constructor; throws InvalidArgument when ip or z_eff is not
    /// strictly positive and finite.
    static AtomModel create(std::string name, double ip, double z_eff, std::string source);

    /// "He/Clementi" style label used in tables and reports.
    [[nodiscard]] std::string label() const;
};

enum class FieldOrigin { direct, from_intensity, from_f0_ellipticity };

/// Laser drive at the pulse maximum. `f_peak` is what every formula uses;
/// the remaining members record where it came from.
struct LaserField {
    double f_peak = 0.0;  // au
    std::optional<double> wavelength_nm;
    std::optional<double> ellipticity;
    std::optional<double> f0;                 // au, set for from_f0_ellipticity
    std::optional<double> intensity_w_cm2;    // set for from_intensity
    FieldOrigin origin = FieldOrigin::direct;

    static LaserField direct(double f_au);
    static LaserField from_intensity(double intensity_w_per_cm2);
    static LaserField from_f0_ellipticity(double f0_au, double eps);

    [[nodiscard]] LaserField with_wavelength(double lambda_nm) const;
    /// Angular frequency in au when a wavelength is known.
    [[nodiscard]] std::optional<double> omega() const;
};

/// He with the Kullie (1.375) and Clementi (1.6875) screening models, plus
/// exact hydrogen.
[[nodiscard]] const std::vector<AtomModel>& builtin_catalog();

/// Entries whose name matches case-insensitively and, when `model` is
/// non-empty, whose source matches as well.
[[nodiscard]] std::vector<AtomModel> find_in_catalog(std::string_view name, std::string_view model = {});

/// Parses `key=value` tokens separated by whitespace or newlines.
/// Keys: name, ip, z_eff, source. Lines starting with '#' are ignored.
[[nodiscard]] AtomModel load_atom(std::string_view config);

}  // namespace tunneltime
