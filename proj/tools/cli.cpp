#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tunneltime/atom.hpp"
#include "tunneltime/barrier.hpp"
#include "tunneltime/clocks.hpp"
#include "tunneltime/errors.hpp"
#include "tunneltime/harness.hpp"
#include "tunneltime/units.hpp"

namespace tunneltime::cli {

namespace {

constexpr std::size_t kMaxGridPoints = 10'000'000;

struct Options {
    std::string atom;
    std::string atom_file;
    double ip = 0.0;
    double z_eff = 0.0;
    double field = 0.0;
    double intensity = 0.0;
    double f0 = 0.0;
    double ellipticity = 0.0;
    double wavelength = 0.0;
    std::string grid;
    std::string figure;
    std::string estimator = "tau_d";
    std::string format = "csv";
    std::string out_path;
    std::string data_path;
    int precision = 6;
    bool residuals = false;

    // set by CLI11 when the flag was given
    CLI::Option* ip_opt = nullptr;
    CLI::Option* z_eff_opt = nullptr;
    CLI::Option* atom_opt = nullptr;
    CLI::Option* atom_file_opt = nullptr;
    CLI::Option* field_opt = nullptr;
    CLI::Option* intensity_opt = nullptr;
    CLI::Option* f0_opt = nullptr;
    CLI::Option* ellipticity_opt = nullptr;
    CLI::Option* wavelength_opt = nullptr;
};

bool given(const CLI::Option* opt) {
    return opt != nullptr && opt->count() > 0;
}

double parse_number(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw InvalidArgument("invalid number '" + std::string(text) + "'");
    }
    return value;
}

std::vector<AtomModel> resolve_atoms(const Options& opt) {
    std::vector<AtomModel> atoms;
    if (given(opt.atom_file_opt)) {
        std::ifstream in(opt.atom_file);
        if (!in) {
            throw ParseError("cannot open atom file '" + opt.atom_file + "'");
        }
        std::ostringstream text;
        text << in.rdbuf();
        atoms.push_back(load_atom(text.str()));
    } else if (given(opt.atom_opt)) {
        const auto colon = opt.atom.find(':');
        const std::string name = opt.atom.substr(0, colon);
        const std::string model = colon == std::string::npos ? std::string{} : opt.atom.substr(colon + 1);
        atoms = find_in_catalog(name, model);
        if (atoms.empty()) {
            if (!(given(opt.ip_opt) && given(opt.z_eff_opt))) {
                throw InvalidArgument("unknown atom '" + opt.atom + "' (see `catalog`, or give --ip and --z-eff)");
            }
            atoms.push_back(AtomModel::create(name, opt.ip, opt.z_eff, model.empty() ? "inline" : model));
        }
    } else if (given(opt.ip_opt) && given(opt.z_eff_opt)) {
        atoms.push_back(AtomModel::create("custom", opt.ip, opt.z_eff, "inline"));
    } else {
        atoms = find_in_catalog("He", "Clementi");
    }
    for (auto& atom : atoms) {
        atom = AtomModel::create(atom.name, given(opt.ip_opt) ? opt.ip : atom.ip,
                                 given(opt.z_eff_opt) ? opt.z_eff : atom.z_eff, atom.source);
    }
    return atoms;
}

AtomModel resolve_single_atom(const Options& opt) {
    const auto atoms = resolve_atoms(opt);
    if (atoms.size() != 1) {
        throw InvalidArgument("atom '" + opt.atom + "' matches several models; use NAME:MODEL");
    }
    return atoms.front();
}

LaserField resolve_field(const Options& opt) {
    const int modes = int(given(opt.field_opt)) + int(given(opt.intensity_opt)) + int(given(opt.f0_opt));
    if (modes != 1) {
        throw InvalidArgument("give exactly one of --field, --field-from-intensity, --f0/--ellipticity");
    }
    if (given(opt.ellipticity_opt) != given(opt.f0_opt)) {
        throw InvalidArgument("--f0 and --ellipticity go together");
    }
    LaserField field = given(opt.field_opt)       ? LaserField::direct(opt.field)
                       : given(opt.intensity_opt) ? LaserField::from_intensity(opt.intensity)
                                                  : LaserField::from_f0_ellipticity(opt.f0, opt.ellipticity);
    if (given(opt.wavelength_opt)) {
        field = field.with_wavelength(opt.wavelength);
    }
    return field;
}

TableFormat resolve_format(const Options& opt) {
    return opt.format == "json" ? TableFormat::json : TableFormat::csv;
}

std::string_view origin_name(FieldOrigin origin) {
    switch (origin) {
        case FieldOrigin::direct: return "direct";
        case FieldOrigin::from_intensity: return "from_intensity";
        case FieldOrigin::from_f0_ellipticity: return "from_f0_ellipticity";
    }
    return "unknown";
}

// Key/value report with a unit column; CSV or flat JSON keyed `<name>_<unit>`.
class Report {
public:
    explicit Report(int precision) : precision_(precision) {}

    void meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string name, double value, std::string unit) {
        rows_.push_back({std::move(name), value, std::move(unit)});
    }

    void write(TableFormat format, const std::string& header, std::ostream& out) const {
        if (format == TableFormat::json) {
            nlohmann::ordered_json doc;
            for (const auto& [k, v] : meta_) {
                doc[k] = v;
            }
            for (const auto& row : rows_) {
                const std::string text = format_number(row.value, precision_);
                double rounded = 0.0;
                std::from_chars(text.data(), text.data() + text.size(), rounded);
                doc[row.unit.empty() ? row.name : row.name + "_" + row.unit] = rounded;
            }
            out << doc.dump(2) << '\n';
            return;
        }
        for (const auto& [k, v] : meta_) {
            out << "# " << k << '=' << v << '\n';
        }
        out << header << '\n';
        for (const auto& row : rows_) {
            out << row.name << ',' << format_number(row.value, precision_) << ',' << row.unit << '\n';
        }
    }

private:
    struct Row {
        std::string name;
        double value;
        std::string unit;
    };
    int precision_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<Row> rows_;
};

void add_point_metadata(Report& report, const AtomModel& atom, const LaserField& field, Regime regime, int precision) {
    report.meta("atom", atom.label());
    report.meta("i_p_au", format_number(atom.ip, 12));
    report.meta("z_eff", format_number(atom.z_eff, 12));
    report.meta("f_au", format_number(field.f_peak, precision));
    report.meta("field_origin", std::string(origin_name(field.origin)));
    report.meta("regime", std::string(to_string(regime)));
}

int cmd_geometry(const Options& opt, std::ostream& out, std::ostream& err) {
    const AtomModel atom = resolve_single_atom(opt);
    const LaserField field = resolve_field(opt);
    const BarrierGeometry geom = solve_geometry(atom, field);

    Report report(opt.precision);
    add_point_metadata(report, atom, field, geom.regime, opt.precision);
    report.add("f", geom.f, "au");
    report.add("f_a", atomic_field_strength(atom), "au");
    report.add("delta_z", geom.delta_z, "au");
    report.add("delta_z_imag", geom.delta_z_imag, "au");
    if (geom.x_entrance) {
        report.add("x_entrance", *geom.x_entrance, "au");
    }
    report.add("x_peak", geom.x_peak, "au");
    if (geom.x_exit) {
        report.add("x_exit", *geom.x_exit, "au");
    }
    report.add("x_classical", geom.x_classical, "au");
    if (geom.barrier_width) {
        report.add("d_B", *geom.barrier_width, "au");
    }
    report.add("h_max", geom.h_max, "au");
    if (auto omega = field.omega()) {
        report.add("keldysh_gamma", keldysh_gamma(atom, field, *omega), "");
    }
    report.write(resolve_format(opt), "quantity,value,unit", out);

    if (geom.regime == Regime::super_atomic) {
        err << "error: F exceeds F_a = " << format_number(atomic_field_strength(atom), opt.precision)
            << " au; the barrier has no real crossings\n";
        return kExitRegime;
    }
    return kExitOk;
}

int cmd_times(const Options& opt, std::ostream& out) {
    const AtomModel atom = resolve_single_atom(opt);
    const LaserField field = resolve_field(opt);
    const BarrierGeometry geom = solve_geometry(atom, field);
    const TunnelClocks clocks = compute_clocks(geom, atom);

    // Each estimator is reported twice: in au and in as.
    struct Entry {
        std::string name;
        std::optional<double> au;
    };
    std::vector<Entry> entries{{"tau_i", clocks.tau_i},     {"tau_d", clocks.tau_d}, {"tau_sym", clocks.tau_sym},
                               {"tau_unsy", clocks.tau_unsy}, {"tau_c", clocks.tau_c}, {"tau_t", clocks.tau_t},
                               {"tau_a", clocks.tau_a}};
    if (clocks.complex_parts) {
        const auto& c = *clocks.complex_parts;
        entries.push_back({"tau_d_re", c.delay.real()});
        entries.push_back({"tau_d_im", c.delay.imag()});
        entries.push_back({"tau_i_re", c.initial.real()});
        entries.push_back({"tau_i_im", c.initial.imag()});
    }

    Report report(opt.precision);
    add_point_metadata(report, atom, field, geom.regime, opt.precision);
    for (const auto& entry : entries) {
        if (entry.au) {
            report.add(entry.name, *entry.au, "au");
            report.add(entry.name, au_time_to_attoseconds(*entry.au), "as");
        }
    }
    if (auto omega = field.omega()) {
        report.add("keldysh_gamma", keldysh_gamma(atom, field, *omega), "");
    }
    report.write(resolve_format(opt), "quantity,value,unit", out);
    return kExitOk;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
    const auto atoms = resolve_atoms(opt);
    const auto grid = parse_grid(opt.grid);
    std::optional<double> omega;
    if (given(opt.wavelength_opt)) {
        omega = wavelength_to_angular_frequency(opt.wavelength);
    }
    TableOptions table{resolve_format(opt), opt.precision, opt.grid};
    std::optional<Figure> figure;
    if (!opt.figure.empty()) {
        figure = parse_figure(opt.figure);
    }

    // Render everything before writing so a regime error leaves no partial table.
    std::vector<std::string> blocks;
    for (const auto& atom : atoms) {
        const auto rows = run_sweep(atom, grid, omega);
        std::ostringstream block;
        if (figure) {
            emit_figure_data(atom, rows, *figure, table, block);
        } else {
            emit_sweep_table(atom, rows, table, block);
        }
        blocks.push_back(block.str());
    }
    const bool json_array = table.format == TableFormat::json && blocks.size() > 1;
    out << (json_array ? "[\n" : "");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i > 0) {
            out << (json_array ? ",\n" : "\n");
        }
        out << blocks[i];
    }
    out << (json_array ? "]\n" : "");
    return kExitOk;
}

int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err) {
    const AtomModel atom = resolve_single_atom(opt);
    const Estimator estimator = parse_estimator(opt.estimator);
    const MeasurementSet data = load_measurements(opt.data_path);
    for (const auto& warning : data.warnings) {
        err << "warning: " << warning << '\n';
    }
    if (data.records.empty()) {
        throw InvalidArgument("'" + opt.data_path + "' contains no records");
    }
    const ComparisonReport report = compare(atom, estimator, data.records);
    for (const auto& warning : report.warnings) {
        err << "warning: " << warning << '\n';
    }

    if (resolve_format(opt) == TableFormat::json) {
        const auto r = [&](double v) {
            const std::string text = format_number(v, opt.precision);
            double x = 0.0;
            std::from_chars(text.data(), text.data() + text.size(), x);
            return x;
        };
        nlohmann::ordered_json doc;
        doc["model_id"] = report.model_id;
        doc["data"] = opt.data_path;
        doc["points"] = report.points.size();
        doc["skipped"] = report.skipped;
        doc["rms_as"] = r(report.rms);
        doc["max_abs_as"] = r(report.max_abs);
        doc["fraction_within_bars"] = r(report.fraction_within_bars);
        if (opt.residuals) {
            auto& rows = doc["residuals"] = nlohmann::ordered_json::array();
            for (const auto& p : report.points) {
                rows.push_back({{"f_au", r(p.f)},
                                {"model_as", r(p.model_as)},
                                {"measured_as", r(p.measured_as)},
                                {"residual_as", r(p.residual_as)},
                                {"within_bars", p.within_bars}});
            }
        }
        out << doc.dump(2) << '\n';
        return kExitOk;
    }

    out << "# model_id=" << report.model_id << '\n'
        << "# data=" << opt.data_path << '\n'
        << "# points=" << report.points.size() << '\n'
        << "# skipped=" << report.skipped << '\n'
        << "statistic,value,unit\n"
        << "rms," << format_number(report.rms, opt.precision) << ",as\n"
        << "max_abs," << format_number(report.max_abs, opt.precision) << ",as\n"
        << "fraction_within_bars," << format_number(report.fraction_within_bars, opt.precision) << ",\n";
    if (opt.residuals) {
        out << "\nf_au,model_as,measured_as,residual_as,within_bars\n";
        for (const auto& p : report.points) {
            out << format_number(p.f, opt.precision) << ',' << format_number(p.model_as, opt.precision) << ','
                << format_number(p.measured_as, opt.precision) << ',' << format_number(p.residual_as, opt.precision)
                << ',' << (p.within_bars ? 1 : 0) << '\n';
        }
    }
    return kExitOk;
}

int cmd_catalog(const Options& opt, std::ostream& out) {
    const auto& catalog = builtin_catalog();
    if (resolve_format(opt) == TableFormat::json) {
        auto doc = nlohmann::ordered_json::array();
        for (const auto& atom : catalog) {
            doc.push_back({{"name", atom.name},
                           {"source", atom.source},
                           {"ip_au", atom.ip},
                           {"z_eff", atom.z_eff},
                           {"f_a_au", atomic_field_strength(atom)}});
        }
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    out << "name,source,ip_au,z_eff,f_a_au\n";
    for (const auto& atom : catalog) {
        out << atom.name << ',' << atom.source << ',' << format_number(atom.ip, opt.precision) << ','
            << format_number(atom.z_eff, opt.precision) << ','
            << format_number(atomic_field_strength(atom), opt.precision) << '\n';
    }
    return kExitOk;
}

void add_atom_options(CLI::App& app, Options& opt) {
    opt.atom_opt = app.add_option("--atom", opt.atom, "Catalog atom as NAME[:MODEL], e.g. He:clementi");
    opt.atom_file_opt = app.add_option("--atom-file", opt.atom_file, "Atom config file (key=value: name ip z_eff source)")
                            ->excludes(opt.atom_opt);
    opt.ip_opt = app.add_option("--ip", opt.ip, "Ionization potential (au); overrides the catalog value");
    opt.z_eff_opt = app.add_option("--z-eff", opt.z_eff, "Effective nuclear charge; overrides the catalog value");
}

void add_output_options(CLI::App& app, Options& opt) {
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out_path, "Write output to PATH instead of stdout");
    app.add_option("--precision", opt.precision, "Significant digits")->check(CLI::Range(1, 17));
}

void add_field_options(CLI::App& app, Options& opt) {
    opt.field_opt = app.add_option("--field", opt.field, "Peak field strength (au)");
    opt.intensity_opt = app.add_option("--field-from-intensity", opt.intensity, "Peak intensity (W/cm^2)");
    opt.f0_opt = app.add_option("--f0", opt.f0, "Field amplitude F0 (au), combined with --ellipticity");
    opt.ellipticity_opt = app.add_option("--ellipticity", opt.ellipticity, "Ellipticity in [0, 1]");
    opt.wavelength_opt = app.add_option("--wavelength", opt.wavelength, "Wavelength (nm), for the Keldysh parameter");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = text.find(':', start);
            parts.push_back(parse_number(std::string_view(text).substr(start, colon == std::string::npos ? std::string::npos : colon - start)));
            if (colon == std::string::npos) {
                break;
            }
            start = colon + 1;
        }
        if (parts.size() != 3) {
            throw InvalidArgument("grid range must be MIN:MAX:STEP");
        }
        const double lo = parts[0], hi = parts[1], step = parts[2];
        if (!(step > 0.0) || hi < lo) {
            throw InvalidArgument("grid range needs STEP > 0 and MAX >= MIN");
        }
        const double span = (hi - lo) / step;
        if (span + 1.0 > static_cast<double>(kMaxGridPoints)) {
            throw InvalidArgument("grid has too many points");
        }
        const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        grid.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            grid.push_back(lo + static_cast<double>(k) * step);
        }
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            grid.push_back(parse_number(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        std::ranges::sort(grid);
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    }
    if (grid.empty() || std::ranges::any_of(grid, [](double f) { return !(f > 0.0); })) {
        throw InvalidArgument("grid values must be positive");
    }
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tunneling-time model for strong-field ionization", "tunneltime"};
    app.require_subcommand(1);

    Options geometry_opt;
    Options times_opt;
    Options sweep_opt;
    Options compare_opt;
    Options catalog_opt;
    auto* geometry = app.add_subcommand("geometry", "Barrier geometry at one field strength");
    auto* times = app.add_subcommand("times", "All tunneling-time estimators at one field strength");
    auto* sweep = app.add_subcommand("sweep", "Field-strength sweep as a figure or full table");
    auto* comparison = app.add_subcommand("compare", "Residuals of a model estimator against measurements");
    auto* catalog = app.add_subcommand("catalog", "List the built-in atom models");

    for (auto [sub, o] : {std::pair{geometry, &geometry_opt}, std::pair{times, &times_opt}}) {
        add_atom_options(*sub, *o);
        add_field_options(*sub, *o);
        add_output_options(*sub, *o);
    }
    add_atom_options(*sweep, sweep_opt);
    add_output_options(*sweep, sweep_opt);
    sweep->add_option("--grid", sweep_opt.grid, "MIN:MAX:STEP or F1,F2,... (au)")->required();
    sweep->add_option("--figure", sweep_opt.figure, "Emit one figure table")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    sweep_opt.wavelength_opt =
        sweep->add_option("--wavelength", sweep_opt.wavelength, "Wavelength (nm), adds the Keldysh parameter");

    add_atom_options(*comparison, compare_opt);
    add_output_options(*comparison, compare_opt);
    comparison->add_option("data", compare_opt.data_path, "Measurement CSV")->required();
    comparison->add_option("--estimator", compare_opt.estimator, "Model estimator")
        ->check(CLI::IsMember({"tau_d", "tau_sym", "tau_unsy", "tau_t"}));
    comparison->add_flag("--residuals", compare_opt.residuals, "Also print the per-point residual table");

    add_output_options(*catalog, catalog_opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e, out, err);
        return kExitUsage;
    }

    const Options& opt = *geometry   ? geometry_opt
                         : *times    ? times_opt
                         : *sweep    ? sweep_opt
                         : *comparison ? compare_opt
                                       : catalog_opt;
    std::ofstream file;
    if (!opt.out_path.empty()) {
        file.open(opt.out_path);
        if (!file) {
            err << "error: cannot write '" << opt.out_path << "'\n";
            return kExitUsage;
        }
    }
    std::ostream& sink = opt.out_path.empty() ? out : file;

    try {
        if (*geometry) {
            return cmd_geometry(opt, sink, err);
        }
        if (*times) {
            return cmd_times(opt, sink);
        }
        if (*sweep) {
            return cmd_sweep(opt, sink);
        }
        if (*comparison) {
            return cmd_compare(opt, sink, err);
        }
        return cmd_catalog(opt, sink);
    } catch (const RegimeError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace tunneltime::cli
