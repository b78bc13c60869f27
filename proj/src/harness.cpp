#include "tunneltime/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tunneltime/errors.hpp"
#include "tunneltime/units.hpp"

namespace tunneltime {

namespace {

constexpr std::size_t kParallelSweepThreshold = 4096;

std::optional<double> to_as(const std::optional<double>& t_au) {
    if (!t_au) {
        return std::nullopt;
    }
    return au_time_to_attoseconds(*t_au);
}

SweepRow evaluate_row(const AtomModel& atom, double f, std::optional<double> omega) {
    const LaserField field = LaserField::direct(f);
    SweepRow row;
    row.f = f;
    row.geometry = solve_geometry(atom, field);
    row.clocks = compute_clocks(row.geometry, atom);
    row.times_as = TimesAs{
        .tau_i = to_as(row.clocks.tau_i),
        .tau_d = to_as(row.clocks.tau_d),
        .tau_sym = au_time_to_attoseconds(row.clocks.tau_sym),
        .tau_unsy = to_as(row.clocks.tau_unsy),
        .tau_c = au_time_to_attoseconds(row.clocks.tau_c),
        .tau_t = to_as(row.clocks.tau_t),
        .tau_a = au_time_to_attoseconds(row.clocks.tau_a),
    };
    if (row.geometry.regime == Regime::sub_atomic) {
        row.light_traversal_as = au_time_to_attoseconds(light_traversal_time(*row.geometry.barrier_width));
    }
    if (omega) {
        row.keldysh_gamma = keldysh_gamma(atom, field, *omega);
    }
    return row;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

double parse_cell(const std::string& cell, std::string_view column, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        throw ParseError("invalid number in column '" + std::string(column) + "': '" + cell + "'", line);
    }
    return value;
}

// A table cell: number (possibly absent) or text.
struct Cell {
    std::optional<double> number;
    std::optional<std::string> text;
};

struct Column {
    std::string name;
    std::function<Cell(const SweepRow&)> value;
};

Cell num(std::optional<double> v) { return Cell{v, std::nullopt}; }

std::vector<Column> figure_columns(Figure figure) {
    switch (figure) {
        case Figure::fig2:
            return {{"f_au", [](const SweepRow& r) { return num(r.f); }},
                    {"tau_unsy_as", [](const SweepRow& r) { return num(r.times_as.tau_unsy); }},
                    {"tau_sym_as", [](const SweepRow& r) { return num(r.times_as.tau_sym); }}};
        case Figure::fig3:
            return {{"f_au", [](const SweepRow& r) { return num(r.f); }},
                    {"tau_d_as", [](const SweepRow& r) { return num(r.times_as.tau_d); }},
                    {"tau_sym_as", [](const SweepRow& r) { return num(r.times_as.tau_sym); }}};
        case Figure::fig4:
            return {{"d_B_au", [](const SweepRow& r) { return num(r.geometry.barrier_width); }},
                    {"tau_d_as", [](const SweepRow& r) { return num(r.times_as.tau_d); }},
                    {"light_as", [](const SweepRow& r) { return num(r.light_traversal_as); }}};
    }
    return {};
}

std::vector<Column> sweep_columns() {
    const auto complex_part = [](bool imag) {
        return [imag](const SweepRow& r) {
            if (!r.clocks.complex_parts) {
                return num(std::nullopt);
            }
            const auto& d = r.clocks.complex_parts->delay;
            return num(au_time_to_attoseconds(imag ? d.imag() : d.real()));
        };
    };
    return {
        {"f_au", [](const SweepRow& r) { return num(r.f); }},
        {"regime", [](const SweepRow& r) { return Cell{std::nullopt, std::string(to_string(r.geometry.regime))}; }},
        {"delta_z_au", [](const SweepRow& r) { return num(r.geometry.delta_z); }},
        {"delta_z_imag_au", [](const SweepRow& r) { return num(r.geometry.delta_z_imag); }},
        {"x_entrance_au", [](const SweepRow& r) { return num(r.geometry.x_entrance); }},
        {"x_peak_au", [](const SweepRow& r) { return num(r.geometry.x_peak); }},
        {"x_exit_au", [](const SweepRow& r) { return num(r.geometry.x_exit); }},
        {"x_classical_au", [](const SweepRow& r) { return num(r.geometry.x_classical); }},
        {"d_B_au", [](const SweepRow& r) { return num(r.geometry.barrier_width); }},
        {"h_max_au", [](const SweepRow& r) { return num(r.geometry.h_max); }},
        {"tau_i_as", [](const SweepRow& r) { return num(r.times_as.tau_i); }},
        {"tau_d_as", [](const SweepRow& r) { return num(r.times_as.tau_d); }},
        {"tau_sym_as", [](const SweepRow& r) { return num(r.times_as.tau_sym); }},
        {"tau_unsy_as", [](const SweepRow& r) { return num(r.times_as.tau_unsy); }},
        {"tau_c_as", [](const SweepRow& r) { return num(r.times_as.tau_c); }},
        {"tau_t_as", [](const SweepRow& r) { return num(r.times_as.tau_t); }},
        {"tau_a_as", [](const SweepRow& r) { return num(r.times_as.tau_a); }},
        {"tau_d_re_as", complex_part(false)},
        {"tau_d_im_as", complex_part(true)},
        {"light_as", [](const SweepRow& r) { return num(r.light_traversal_as); }},
        {"keldysh_gamma", [](const SweepRow& r) { return num(r.keldysh_gamma); }},
    };
}

double rounded(double value, int precision) {
    const std::string text = format_number(value, precision);
    double parsed = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), parsed);
    return parsed;
}

std::vector<std::pair<std::string, std::string>> metadata(const AtomModel& atom, std::string_view table,
                                                          const TableOptions& options) {
    return {
        {"table", std::string(table)},
        {"atom", atom.name},
        {"source", atom.source},
        {"z_eff", format_number(atom.z_eff, 12)},
        {"i_p_au", format_number(atom.ip, 12)},
        {"f_a_au", format_number(atomic_field_strength(atom), 12)},
        {"grid", options.grid_description},
        {"constants", std::string(kConstants.version)},
    };
}

void write_table(const AtomModel& atom, std::string_view table, std::span<const SweepRow> rows,
                 const std::vector<Column>& columns, const TableOptions& options, std::ostream& sink) {
    if (rows.empty()) {
        throw InvalidArgument("no rows to emit");
    }
    if (options.precision < 1 || options.precision > 17) {
        throw InvalidArgument("precision must lie in [1, 17]");
    }
    const auto meta = metadata(atom, table, options);

    if (options.format == TableFormat::json) {
        nlohmann::ordered_json doc;
        for (const auto& [key, value] : meta) {
            doc["metadata"][key] = value;
        }
        auto& names = doc["columns"] = nlohmann::ordered_json::array();
        for (const auto& column : columns) {
            names.push_back(column.name);
        }
        auto& out_rows = doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json obj;
            for (const auto& column : columns) {
                const Cell cell = column.value(row);
                if (cell.text) {
                    obj[column.name] = *cell.text;
                } else if (cell.number) {
                    obj[column.name] = rounded(*cell.number, options.precision);
                } else {
                    obj[column.name] = nullptr;
                }
            }
            out_rows.push_back(std::move(obj));
        }
        sink << doc.dump(2) << '\n';
        return;
    }

    for (const auto& [key, value] : meta) {
        sink << "# " << key << '=' << value << '\n';
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
        sink << (i ? "," : "") << columns[i].name;
    }
    sink << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const Cell cell = columns[i].value(row);
            sink << (i ? "," : "");
            if (cell.text) {
                sink << *cell.text;
            } else if (cell.number) {
                sink << format_number(*cell.number, options.precision);
            }
        }
        sink << '\n';
    }
}

}  // namespace

std::vector<SweepRow> run_sweep(const AtomModel& atom, std::span<const double> f_grid, std::optional<double> omega) {
    if (f_grid.empty()) {
        throw InvalidArgument("field grid is empty");
    }
    for (std::size_t i = 0; i < f_grid.size(); ++i) {
        if (!(std::isfinite(f_grid[i]) && f_grid[i] > 0.0)) {
            throw InvalidArgument("field grid values must be positive");
        }
        if (i > 0 && !(f_grid[i] > f_grid[i - 1])) {
            throw InvalidArgument("field grid must be strictly ascending");
        }
    }

    std::vector<SweepRow> rows(f_grid.size());
    const std::size_t workers =
        f_grid.size() < kParallelSweepThreshold ? 1 : std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1) {
        for (std::size_t i = 0; i < f_grid.size(); ++i) {
            rows[i] = evaluate_row(atom, f_grid[i], omega);
        }
        return rows;
    }

    const std::size_t chunk = (f_grid.size() + workers - 1) / workers;
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                try {
                    const std::size_t end = std::min(f_grid.size(), (w + 1) * chunk);
                    for (std::size_t i = w * chunk; i < end; ++i) {
                        rows[i] = evaluate_row(atom, f_grid[i], omega);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
    return rows;
}

double light_traversal_time(double d_au) {
    if (!(std::isfinite(d_au) && d_au >= 0.0)) {
        throw InvalidArgument("distance must be non-negative");
    }
    return d_au / kConstants.speed_of_light;
}

MeasurementSet parse_measurements(std::istream& in, std::string_view default_source) {
    MeasurementSet result;
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t, std::less<>> index;
    std::size_t column_count = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        const auto cells = split_csv_line(stripped);

        if (index.empty()) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (!index.emplace(cells[i], i).second) {
                    throw ParseError("duplicate column '" + cells[i] + "'", line_no);
                }
            }
            const bool symmetric = index.contains("err_as");
            std::vector<std::string_view> expected{"field_au", "time_as"};
            if (symmetric) {
                expected.push_back("err_as");
            } else {
                expected.insert(expected.end(), {"err_lo_as", "err_hi_as"});
            }
            for (auto name : expected) {
                if (!index.contains(name)) {
                    throw ParseError("missing column '" + std::string(name) + "'", line_no);
                }
            }
            for (const auto& [name, pos] : index) {
                const bool known = std::ranges::find(expected, name) != expected.end() || name == "source";
                if (!known) {
                    throw ParseError("unknown column '" + name + "'", line_no);
                }
            }
            column_count = cells.size();
            continue;
        }

        if (cells.size() != column_count) {
            throw ParseError("expected " + std::to_string(column_count) + " columns, found " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        const auto cell = [&](std::string_view name) -> const std::string& { return cells[index.find(name)->second]; };

        MeasurementRecord record;
        record.f = parse_cell(cell("field_au"), "field_au", line_no);
        record.t = parse_cell(cell("time_as"), "time_as", line_no);
        if (index.contains("err_as")) {
            record.err_lo = record.err_hi = parse_cell(cell("err_as"), "err_as", line_no);
        } else {
            record.err_lo = parse_cell(cell("err_lo_as"), "err_lo_as", line_no);
            record.err_hi = parse_cell(cell("err_hi_as"), "err_hi_as", line_no);
        }
        record.source = index.contains("source") && !cell("source").empty() ? cell("source") : std::string(default_source);
        if (record.f <= 0.0) {
            throw ParseError("field_au must be positive", line_no);
        }
        if (record.err_lo < 0.0 || record.err_hi < 0.0) {
            throw ParseError("error bars must be non-negative", line_no);
        }
        if (!result.records.empty() && record.f <= result.records.back().f) {
            result.warnings.push_back("line " + std::to_string(line_no) + ": field_au is not ascending");
        }
        result.records.push_back(std::move(record));
    }

    if (index.empty()) {
        throw ParseError("missing header line", line_no);
    }
    std::ranges::stable_sort(result.records, {}, &MeasurementRecord::f);
    return result;
}

MeasurementSet load_measurements(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    return parse_measurements(in, path.stem().string());
}

std::string_view to_string(Estimator estimator) {
    switch (estimator) {
        case Estimator::tau_d: return "tau_d";
        case Estimator::tau_sym: return "tau_sym";
        case Estimator::tau_unsy: return "tau_unsy";
        case Estimator::tau_t: return "tau_t";
    }
    return "unknown";
}

Estimator parse_estimator(std::string_view name) {
    for (auto e : {Estimator::tau_d, Estimator::tau_sym, Estimator::tau_unsy, Estimator::tau_t}) {
        if (name == to_string(e)) {
            return e;
        }
    }
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
}

std::optional<double> estimator_value_as(const AtomModel& atom, Estimator estimator, double f) {
    const BarrierGeometry geom = solve_geometry(atom, LaserField::direct(f));
    const TunnelClocks clocks = compute_clocks(geom, atom);
    switch (estimator) {
        case Estimator::tau_d: return to_as(clocks.tau_d);
        case Estimator::tau_sym: return au_time_to_attoseconds(clocks.tau_sym);
        case Estimator::tau_unsy: return to_as(clocks.tau_unsy);
        case Estimator::tau_t: return to_as(clocks.tau_t);
    }
    return std::nullopt;
}

ComparisonReport compare(const AtomModel& atom, Estimator estimator, std::span<const MeasurementRecord> data) {
    if (data.empty()) {
        throw InvalidArgument("no measurement records to compare");
    }
    ComparisonReport report;
    report.model_id = atom.label() + ":" + std::string(to_string(estimator));
    double sum_sq = 0.0;
    std::size_t within = 0;
    for (const auto& record : data) {
        const auto model = estimator_value_as(atom, estimator, record.f);
        if (!model) {
            ++report.skipped;
            report.warnings.push_back("skipped F=" + format_number(record.f, 6) + ": " +
                                      std::string(to_string(estimator)) + " is complex above F_a");
            continue;
        }
        PointResidual point{record.f, *model, record.t, *model - record.t, false};
        point.within_bars = std::abs(point.residual_as) <= std::max(record.err_lo, record.err_hi);
        sum_sq += point.residual_as * point.residual_as;
        report.max_abs = std::max(report.max_abs, std::abs(point.residual_as));
        within += point.within_bars ? 1 : 0;
        report.points.push_back(point);
    }
    if (report.points.empty()) {
        throw RegimeError("every record lies above F_a; " + std::string(to_string(estimator)) + " has no real value");
    }
    const auto n = static_cast<double>(report.points.size());
    report.rms = std::sqrt(sum_sq / n);
    report.fraction_within_bars = static_cast<double>(within) / n;
    return report;
}

std::string_view to_string(Figure figure) {
    switch (figure) {
        case Figure::fig2: return "fig2";
        case Figure::fig3: return "fig3";
        case Figure::fig4: return "fig4";
    }
    return "unknown";
}

Figure parse_figure(std::string_view name) {
    for (auto f : {Figure::fig2, Figure::fig3, Figure::fig4}) {
        if (name == to_string(f)) {
            return f;
        }
    }
    throw InvalidArgument("unknown figure '" + std::string(name) + "'");
}

void emit_figure_data(const AtomModel& atom, std::span<const SweepRow> rows, Figure figure,
                      const TableOptions& options, std::ostream& sink) {
    if (figure == Figure::fig4) {
        for (const auto& row : rows) {
            if (row.geometry.regime != Regime::sub_atomic) {
                throw RegimeError("fig4 needs a real barrier; F=" + format_number(row.f, 6) + " is " +
                                  std::string(to_string(row.geometry.regime)));
            }
        }
    }
    write_table(atom, to_string(figure), rows, figure_columns(figure), options, sink);
}

void emit_sweep_table(const AtomModel& atom, std::span<const SweepRow> rows, const TableOptions& options,
                      std::ostream& sink) {
    write_table(atom, "sweep", rows, sweep_columns(), options, sink);
}

std::string format_number(double value, int precision) {
    if (value == 0.0) {
        return "0";  // no "-0"
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, precision);
    if (ec != std::errc{}) {
        throw InvalidArgument("cannot format number");
    }
    return std::string(buf.data(), ptr);
}

}  // namespace tunneltime
