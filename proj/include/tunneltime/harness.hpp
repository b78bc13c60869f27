#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tunneltime/atom.hpp"
#include "tunneltime/barrier.hpp"
#include "tunneltime/clocks.hpp"

namespace tunneltime {

/// Estimators in attoseconds. Empty where the au value is empty.
struct TimesAs {
    std::optional<double> tau_i;
    std::optional<double> tau_d;
    double tau_sym = 0.0;
    std::optional<double> tau_unsy;
    double tau_c = 0.0;
    std::optional<double> tau_t;
    double tau_a = 0.0;
};

struct SweepRow {
    double f = 0.0;
    BarrierGeometry geometry;
    TunnelClocks clocks;
    TimesAs times_as;
    std::optional<double> light_traversal_as;  // sub-atomic rows only
    std::optional<double> keldysh_gamma;       // when omega was supplied
};

/// Evaluates every grid point. The grid must be non-empty, positive and
/// strictly ascending. Large grids are split across threads; the result is
/// always in grid order.
[[nodiscard]] std::vector<SweepRow> run_sweep(const AtomModel& atom, std::span<const double> f_grid,
                                              std::optional<double> omega = std::nullopt);

/// Time for light to cross `d` bohr, in au.
[[nodiscard]] double light_traversal_time(double d_au);

struct MeasurementRecord {
    double f = 0.0;      // au
    double t = 0.0;      // as
    double err_lo = 0.0; // as
    double err_hi = 0.0; // as
    std::string source;
};

struct MeasurementSet {
    std::vector<MeasurementRecord> records;  // sorted by f
    std::vector<std::string> warnings;
};

/// CSV with header `field_au,time_as,err_lo_as,err_hi_as[,source]` or
/// `field_au,time_as,err_as`. Throws ParseError with the offending line.
[[nodiscard]] MeasurementSet parse_measurements(std::istream& in, std::string_view default_source = "data");
[[nodiscard]] MeasurementSet load_measurements(const std::filesystem::path& path);

enum class Estimator { tau_d, tau_sym, tau_unsy, tau_t };

[[nodiscard]] std::string_view to_string(Estimator estimator);
/// Throws InvalidArgument for unknown names.
[[nodiscard]] Estimator parse_estimator(std::string_view name);

/// Model value in as at one field, or empty when the estimator has no real
/// value in that regime.
[[nodiscard]] std::optional<double> estimator_value_as(const AtomModel& atom, Estimator estimator, double f);

struct PointResidual {
    double f = 0.0;
    double model_as = 0.0;
    double measured_as = 0.0;
    double residual_as = 0.0;  // model - measured
    bool within_bars = false;
};

struct ComparisonReport {
    std::string model_id;
    std::vector<PointResidual> points;
    double rms = 0.0;
    double max_abs = 0.0;
    double fraction_within_bars = 0.0;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
};

/// Residuals of the estimator, recomputed in closed form at each record's f.
/// Records where the estimator is complex are skipped with a warning; throws
/// RegimeError if nothing is left to compare.
[[nodiscard]] ComparisonReport compare(const AtomModel& atom, Estimator estimator,
                                       std::span<const MeasurementRecord> data);

enum class Figure { fig2, fig3, fig4 };
enum class TableFormat { csv, json };

[[nodiscard]] std::string_view to_string(Figure figure);
[[nodiscard]] Figure parse_figure(std::string_view name);

struct TableOptions {
    TableFormat format = TableFormat::csv;
    int precision = 6;
    std::string grid_description;  // copied into the metadata lines
};

/// Writes one figure table for one atom model. fig4 needs every row to have
/// a real barrier (RegimeError otherwise).
void emit_figure_data(const AtomModel& atom, std::span<const SweepRow> rows, Figure figure,
                      const TableOptions& options, std::ostream& sink);

/// Every column of every row, for `sweep` without --figure.
void emit_sweep_table(const AtomModel& atom, std::span<const SweepRow> rows, const TableOptions& options,
                      std::ostream& sink);

/// Locale-independent shortest "%g"-style rendering with `precision`
/// significant digits.
[[nodiscard]] std::string format_number(double value, int precision);

}  // namespace tunneltime
