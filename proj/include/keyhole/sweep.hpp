// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "keyhole/analytic.hpp"
#include "keyhole/montecarlo.hpp"
#include "keyhole/params_io.hpp"

namespace keyhole::sweep {

enum class Axis { gamma_bar_d_db, M, N, r_th, delta };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view name);
Method parse_method(std::string_view name);

/// "a:step:b" (inclusive, step > 0) or a comma-separated list.
std::vector<double> parse_values(std::string_view text);
/// Comma-separated method names, returned in canonical column order.
std::vector<Method> parse_methods(std::string_view text);

inline constexpr std::uint64_t kDefaultSamples = 1'000'000;

struct SweepSpec {
    ParamConfig base;
    Axis axis = Axis::gamma_bar_d_db;
    std::vector<double> values;
    std::vector<Method> methods;
    std::uint64_t mc_samples = kDefaultSamples;
    std::uint64_t seed = 0;
    unsigned num_streams = 1;
    double quad_rel_tol = 1e-9;
};

/// Non-empty method set, non-empty strictly increasing values, integral
/// values >= 1 on the M and N axes. Throws std::invalid_argument.
void validate(const SweepSpec& spec);

struct SweepRow {
    double axis_value = 0.0;
    std::optional<double> closed_form;
    std::optional<double> asymptotic;
    std::optional<double> quadrature;
    std::optional<double> monte_carlo;
    std::optional<double> mc_std_error;
};

struct SweepTable {
    Axis axis = Axis::gamma_bar_d_db;
    std::vector<Method> methods;
    std::vector<SweepRow> rows;
};

/// Parameters of one sweep point.
SystemParams point_params(const SweepSpec& spec, double axis_value);

/// Evaluates every requested method at every axis value, in axis order. Each
/// Monte Carlo point uses spec.seed, so neighbouring points share common
/// random numbers. A failing point throws std::runtime_error naming the axis
/// value.
SweepTable run_sweep(const SweepSpec& spec);

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double value);

/// Header plus one line per row. Columns, in this order and only when
/// requested: axis, closed_form, asymptotic, quadrature, monte_carlo,
/// mc_std_error. Throws std::runtime_error if the stream fails.
void emit_csv(const SweepTable& table, std::ostream& out);

// --- Figure recipes -------------------------------------------------------

struct Series {
    std::string label;
    std::vector<std::pair<std::string, std::string>> overrides;
};

/// A named sweep over several parameter series. Recipe text is the parameter
/// file vocabulary plus the keys name, title, axis, values, methods,
/// mc_samples and any number of `series = key=value key=value ...` lines.
struct Recipe {
    std::string name;
    std::string title;
    SweepSpec sweep;
    std::vector<Series> series;
};

Recipe parse_recipe(std::string_view text, std::string_view source = "<recipe>");

/// Names of the recipes compiled into the library (fig2 ... fig5).
std::vector<std::string> builtin_recipe_names();
/// Throws std::invalid_argument listing the available names.
Recipe builtin_recipe(std::string_view name);

struct SeriesTable {
    std::string label;
    SweepTable table;
};

std::vector<SeriesTable> run_recipe(const Recipe& recipe);

/// Same layout as emit_csv with a leading `series` column.
void emit_recipe_csv(const std::vector<SeriesTable>& tables, std::ostream& out);

/// gnuplot script plotting every method column of `csv_path` per series.
void emit_gnuplot(const Recipe& recipe, const std::vector<SeriesTable>& tables,
                  std::string_view csv_path, std::ostream& out);

// --- Validation harness -----------------------------------------------------

struct ValidationGrid {
    std::vector<int> users{1, 2, 5, 8};
    std::vector<int> eves{1, 3};
    std::vector<double> gamma_db{0.0, 10.0, 20.0, 30.0};
};

struct ValidationOptions {
    std::uint64_t mc_samples = kDefaultSamples;
    std::uint64_t seed = 0;
    unsigned num_streams = 1;
    double quad_rel_tol = 1e-9;
    double high_snr_db = 60.0;
};

inline constexpr double kOracleRelTol = 1e-6;
inline constexpr double kOracleAbsTolSmall = 1e-9;
inline constexpr double kSaturationTol = 1e-3;

struct CheckResult {
    std::string check;  // monte_carlo, quadrature or saturation
    std::string point;
    double reference = 0.0;  // closed form
    double observed = 0.0;
    double metric = 0.0;  // |z|, relative or absolute deviation
    double limit = 0.0;
    bool pass = false;
};

struct ValidationOutcome {
    std::vector<CheckResult> checks;
    int mc_points = 0;
    int mc_failures = 0;
    int mc_allowance = 0;  // one per 40 points, rounded up
    int other_failures = 0;
    bool pass = false;
};

/// Closed form against Monte Carlo and quadrature at every grid point, and
/// against the asymptote at options.high_snr_db for every (M, N). Passes
/// when quadrature and saturation checks all pass and Monte Carlo failures
/// do not exceed one per 40 points (rounded up). Throws std::invalid_argument up front if
/// the grid violates the binomial cap.
ValidationOutcome run_validation(const ParamConfig& base, const ValidationGrid& grid,
                                 const ValidationOptions& options);

void print_validation_report(const ValidationOutcome& outcome, std::ostream& out);

}  // namespace keyhole::sweep
