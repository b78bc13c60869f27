#include "tunneltime/atom.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "tunneltime/errors.hpp"
#include "tunneltime/units.hpp"

namespace tunneltime {

namespace {

// First ionization energy of helium (NIST ASD).
constexpr double kHeliumIonizationEv = 24.587387;

bool iequals(std::string_view a, std::string_view b) {
    return std::ranges::equal(a, b, [](unsigned char x, unsigned char y) {
        return std::tolower(x) == std::tolower(y);
    });
}

double parse_double(std::string_view key, std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ParseError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

AtomModel AtomModel::create(std::string name, double ip, double z_eff, std::string source) {
    if (!(std::isfinite(ip) && ip > 0.0)) {
        throw InvalidArgument("ip must be positive");
    }
    if (!(std::isfinite(z_eff) && z_eff > 0.0)) {
        throw InvalidArgument("z_eff must be positive");
    }
    const double f_a = ip * ip / (4.0 * z_eff);
    if (!(std::isfinite(f_a) && f_a > 0.0)) {
        throw InvalidArgument("atomic field strength ip^2/(4 z_eff) is not representable");
    }
    return AtomModel{std::move(name), ip, z_eff, std::move(source)};
}

std::string AtomModel::label() const {
    return source.empty() ? name : name + "/" + source;
}

LaserField LaserField::direct(double f_au) {
    if (!(std::isfinite(f_au) && f_au > 0.0)) {
        throw InvalidArgument("field strength must be positive");
    }
    LaserField field;
    field.f_peak = f_au;
    return field;
}

LaserField LaserField::from_intensity(double intensity_w_per_cm2) {
    LaserField field = direct(intensity_to_field(intensity_w_per_cm2));
    field.intensity_w_cm2 = intensity_w_per_cm2;
    field.origin = FieldOrigin::from_intensity;
    return field;
}

LaserField LaserField::from_f0_ellipticity(double f0_au, double eps) {
    LaserField field = direct(elliptical_peak_field(f0_au, eps));
    field.f0 = f0_au;
    field.ellipticity = eps;
    field.origin = FieldOrigin::from_f0_ellipticity;
    return field;
}

LaserField LaserField::with_wavelength(double lambda_nm) const {
    (void)wavelength_to_angular_frequency(lambda_nm);  // validates
    LaserField copy = *this;
    copy.wavelength_nm = lambda_nm;
    return copy;
}

std::optional<double> LaserField::omega() const {
    if (!wavelength_nm) {
        return std::nullopt;
    }
    return wavelength_to_angular_frequency(*wavelength_nm);
}

const std::vector<AtomModel>& builtin_catalog() {
    static const std::vector<AtomModel> catalog = [] {
        const double he_ip = ev_to_hartree(kHeliumIonizationEv);
        return std::vector<AtomModel>{
            AtomModel::create("He", he_ip, 1.375, "Kullie"),
            AtomModel::create("He", he_ip, 1.6875, "Clementi"),
            AtomModel::create("H", 0.5, 1.0, "exact"),
        };
    }();
    return catalog;
}

std::vector<AtomModel> find_in_catalog(std::string_view name, std::string_view model) {
    std::vector<AtomModel> found;
    for (const auto& entry : builtin_catalog()) {
        if (iequals(entry.name, name) && (model.empty() || iequals(entry.source, model))) {
            found.push_back(entry);
        }
    }
    return found;
}

AtomModel load_atom(std::string_view config) {
    std::map<std::string, std::string, std::less<>> values;
    std::size_t pos = 0;
    while (pos < config.size()) {
        const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
        while (pos < config.size() && is_space(config[pos])) {
            ++pos;
        }
        if (pos >= config.size()) {
            break;
        }
        if (config[pos] == '#') {
            pos = config.find('\n', pos);
            if (pos == std::string_view::npos) {
                break;
            }
            continue;
        }
        std::size_t end = pos;
        while (end < config.size() && !is_space(config[end])) {
            ++end;
        }
        const std::string_view token = config.substr(pos, end - pos);
        pos = end;

        const auto eq = token.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError("expected key=value, got '" + std::string(token) + "'");
        }
        std::string key(token.substr(0, eq));
        if (key != "name" && key != "ip" && key != "z_eff" && key != "source") {
            throw ParseError("unknown key '" + key + "'");
        }
        if (values.contains(key)) {
            throw ParseError("duplicate key '" + key + "'");
        }
        values.emplace(std::move(key), std::string(token.substr(eq + 1)));
    }

    const auto required = [&](std::string_view key) -> const std::string& {
        auto it = values.find(key);
        if (it == values.end() || it->second.empty()) {
            throw ParseError("missing key '" + std::string(key) + "'");
        }
        return it->second;
    };

    const std::string& name = required("name");
    const double ip = parse_double("ip", required("ip"));
    const double z_eff = parse_double("z_eff", required("z_eff"));
    if (ip <= 0.0) {
        throw ParseError("'ip' must be positive");
    }
    if (z_eff <= 0.0) {
        throw ParseError("'z_eff' must be positive");
    }
    auto source_it = values.find("source");
    return AtomModel::create(name, ip, z_eff, source_it == values.end() ? "config" : source_it->second);
}

}  // namespace tunneltime
