// SPDX-License-Identifier: Apache-2.0
#include "keyhole/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace keyhole::sweep {
namespace {

struct NamedRecipe {
    const char* name;
    const char* text;
};

constexpr NamedRecipe kBuiltinRecipes[] = {
#include "keyhole_recipes.inc"
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

bool is_integral(double v) { return std::floor(v) == v; }

void require_stream(std::ostream& out) {
    if (!out) throw std::runtime_error("CSV output: write to sink failed");
}

bool has(const std::vector<Method>& methods, Method m) {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

void write_row_cells(const SweepTable& table, const SweepRow& row, std::ostream& out) {
    out << format_number(row.axis_value);
    auto cell = [&](const std::optional<double>& v) { out << ',' << (v ? format_number(*v) : ""); };
    if (has(table.methods, Method::closed_form)) cell(row.closed_form);
    if (has(table.methods, Method::asymptotic)) cell(row.asymptotic);
    if (has(table.methods, Method::quadrature)) cell(row.quadrature);
    if (has(table.methods, Method::monte_carlo)) {
        cell(row.monte_carlo);
        cell(row.mc_std_error);
    }
}

void write_header_cells(const SweepTable& table, std::ostream& out) {
    out << to_string(table.axis);
    for (const Method m : table.methods) out << ',' << keyhole::to_string(m);
    if (has(table.methods, Method::monte_carlo)) out << ",mc_std_error";
}

std::string point_label(int users, int eves, double gamma_db) {
    std::ostringstream s;
    s << "M=" << users << " N=" << eves << " gamma_bar_d_db=" << format_number(gamma_db);
    return s.str();
}

}  // namespace

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::gamma_bar_d_db: return "gamma_bar_d_db";
        case Axis::M: return "M";
        case Axis::N: return "N";
        case Axis::r_th: return "r_th";
        case Axis::delta: return "delta";
    }
    return "unknown";
}

Axis parse_axis(std::string_view name) {
    for (Axis a : {Axis::gamma_bar_d_db, Axis::M, Axis::N, Axis::r_th, Axis::delta}) {
        if (to_string(a) == name) return a;
    }
    throw std::invalid_argument("unknown axis '" + std::string(name) +
                                "' (expected gamma_bar_d_db, M, N, r_th or delta)");
}

Method parse_method(std::string_view name) {
    for (Method m : {Method::closed_form, Method::asymptotic, Method::quadrature,
                     Method::monte_carlo}) {
        if (keyhole::to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected closed_form, asymptotic, quadrature or monte_carlo)");
}

std::vector<double> parse_values(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("values: empty list");
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw std::invalid_argument("values: range must be start:step:stop");
        const double start = parse_real(parts[0], "values start");
        const double step = parse_real(parts[1], "values step");
        const double stop = parse_real(parts[2], "values stop");
        if (!(step > 0.0) || stop < start) {
            throw std::invalid_argument("values: range needs step > 0 and stop >= start");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(count));
        for (long k = 0; k < count; ++k) values.push_back(start + static_cast<double>(k) * step);
        return values;
    }
    std::vector<double> values;
    for (auto part : split(text, ',')) values.push_back(parse_real(part, "values"));
    return values;
}

std::vector<Method> parse_methods(std::string_view text) {
    std::vector<Method> requested;
    if (!trim(text).empty()) {
        for (auto part : split(text, ',')) requested.push_back(parse_method(part));
    }
    std::vector<Method> ordered;
    for (Method m : {Method::closed_form, Method::asymptotic, Method::quadrature,
                     Method::monte_carlo}) {
        if (has(requested, m)) ordered.push_back(m);
    }
    return ordered;
}

void validate(const SweepSpec& spec) {
    if (spec.methods.empty()) throw std::invalid_argument("sweep: method set is empty");
    if (spec.values.empty()) throw std::invalid_argument("sweep: no axis values");
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
        if (!(spec.values[i] > spec.values[i - 1])) {
            throw std::invalid_argument("sweep: axis values must be strictly increasing");
        }
    }
    if (spec.axis == Axis::M || spec.axis == Axis::N) {
        for (double v : spec.values) {
            if (!is_integral(v) || v < 1.0) {
                throw std::invalid_argument("sweep: " + std::string(to_string(spec.axis)) +
                                            " values must be integers >= 1, got " +
                                            format_number(v));
            }
        }
    }
    if (has(spec.methods, Method::monte_carlo)) {
        if (spec.mc_samples < mc::kMinSamples) {
            throw std::invalid_argument("sweep: mc_samples must be >= 1000");
        }
        if (spec.num_streams < 1) throw std::invalid_argument("sweep: streams must be >= 1");
    }
    validate(spec.base.params);
}

SystemParams point_params(const SweepSpec& spec, double axis_value) {
    SystemParams p = spec.base.params;
    switch (spec.axis) {
        case Axis::gamma_bar_d_db: return at_user_snr_db(spec.base, axis_value);
        case Axis::M: p.num_users = static_cast<int>(axis_value); break;
        case Axis::N: p.num_eves = static_cast<int>(axis_value); break;
        case Axis::r_th: p.r_th = axis_value; break;
        case Axis::delta: p.delta = axis_value; break;
    }
    return p;
}

SweepTable run_sweep(const SweepSpec& spec) {
    validate(spec);
    SweepTable table{spec.axis, spec.methods, {}};
    table.rows.reserve(spec.values.size());
    for (const double v : spec.values) {
        SweepRow row;
        row.axis_value = v;
        try {
            const SystemParams p = point_params(spec, v);
            for (const Method m : spec.methods) {
                switch (m) {
                    case Method::closed_form:
                        row.closed_form = analytic::sop_closed_form(p).value;
                        break;
                    case Method::asymptotic:
                        row.asymptotic = analytic::sop_asymptotic(p).value;
                        break;
                    case Method::quadrature:
                        row.quadrature = analytic::sop_quadrature(p, spec.quad_rel_tol).value;
                        break;
                    case Method::monte_carlo: {
                        const auto est = mc::estimate_sop(p, spec.mc_samples, spec.seed, spec.num_streams);
                        row.monte_carlo = est.sop_hat;
                        row.mc_std_error = est.std_error;
                        break;
                    }
                }
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep failed at " + std::string(to_string(spec.axis)) + "=" +
                                     format_number(v) + ": " + e.what());
        }
        table.rows.push_back(row);
    }
    return table;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void emit_csv(const SweepTable& table, std::ostream& out) {
    if (table.rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    write_header_cells(table, out);
    out << '\n';
    for (const auto& row : table.rows) {
        write_row_cells(table, row, out);
        out << '\n';
    }
    out.flush();
    require_stream(out);
}

Recipe parse_recipe(std::string_view text, std::string_view source) {
    Recipe recipe;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool have_axis = false;
    bool have_values = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) continue;
        try {
            const auto eq = view.find('=');
            if (eq == std::string_view::npos) throw std::invalid_argument("expected 'key = value'");
            const auto key = trim(view.substr(0, eq));
            const auto value = trim(view.substr(eq + 1));
            if (key == "name") {
                recipe.name = value;
            } else if (key == "title") {
                recipe.title = value;
            } else if (key == "axis") {
                recipe.sweep.axis = parse_axis(value);
                have_axis = true;
            } else if (key == "values") {
                recipe.sweep.values = parse_values(value);
                have_values = true;
            } else if (key == "methods") {
                recipe.sweep.methods = parse_methods(value);
            } else if (key == "mc_samples") {
                recipe.sweep.mc_samples = static_cast<std::uint64_t>(parse_count(value, key));
            } else if (key == "series") {
                Series series;
                std::istringstream words{std::string(value)};
                std::string word;
                while (words >> word) {
                    const auto weq = word.find('=');
                    if (weq == std::string::npos) {
                        throw std::invalid_argument("series entries must be key=value, got '" + word + "'");
                    }
                    auto k = word.substr(0, weq);
                    if (!is_param_key(k)) throw std::invalid_argument("unknown series key '" + k + "'");
                    series.overrides.emplace_back(std::move(k), word.substr(weq + 1));
                }
                if (series.overrides.empty()) throw std::invalid_argument("empty series");
                series.label = std::string(value);
                recipe.series.push_back(std::move(series));
            } else {
                apply_param(recipe.sweep.base, key, value);
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string(source) + ":" + std::to_string(line_no) + ": " +
                                        e.what());
        }
    }
    if (!have_axis || !have_values) {
        throw std::invalid_argument(std::string(source) + ": recipe needs 'axis' and 'values'");
    }
    if (recipe.series.empty()) recipe.series.push_back({"base", {}});
    return recipe;
}

std::vector<std::string> builtin_recipe_names() {
    std::vector<std::string> names;
    for (const auto& r : kBuiltinRecipes) names.emplace_back(r.name);
    return names;
}

Recipe builtin_recipe(std::string_view name) {
    for (const auto& r : kBuiltinRecipes) {
        if (name == r.name) return parse_recipe(r.text, std::string(r.name) + ".recipe");
    }
    std::string known;
    for (const auto& n : builtin_recipe_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown recipe '" + std::string(name) + "' (available: " + known + ")");
}

std::vector<SeriesTable> run_recipe(const Recipe& recipe) {
    std::vector<SeriesTable> out;
    for (const auto& series : recipe.series) {
        SweepSpec spec = recipe.sweep;
        for (const auto& [k, v] : series.overrides) apply_param(spec.base, k, v);
        try {
            out.push_back({series.label, run_sweep(spec)});
        } catch (const std::exception& e) {
            throw std::runtime_error("series '" + series.label + "': " + e.what());
        }
    }
    return out;
}

void emit_recipe_csv(const std::vector<SeriesTable>& tables, std::ostream& out) {
    if (tables.empty()) throw std::invalid_argument("emit_recipe_csv: no series");
    out << "series,";
    write_header_cells(tables.front().table, out);
    out << '\n';
    for (const auto& st : tables) {
        for (const auto& row : st.table.rows) {
            out << st.label << ',';
            write_row_cells(st.table, row, out);
            out << '\n';
        }
    }
    out.flush();
    require_stream(out);
}

void emit_gnuplot(const Recipe& recipe, const std::vector<SeriesTable>& tables,
                  std::string_view csv_path, std::ostream& out) {
    if (tables.empty()) throw std::invalid_argument("emit_gnuplot: no series");
    const auto& first = tables.front().table;
    out << "# gnuplot script for recipe " << recipe.name << "\n"
        << "set datafile separator ','\n"
        << "set key outside right\n"
        << "set logscale y\n"
        << "set xlabel '" << to_string(first.axis) << "'\n"
        << "set ylabel 'secrecy outage probability'\n";
    if (!recipe.title.empty()) out << "set title '" << recipe.title << "'\n";
    out << "plot \\\n";
    bool first_curve = true;
    for (const auto& st : tables) {
        int column = 3;
        for (const Method m : first.methods) {
            const char* style = m == Method::monte_carlo ? "points" : "lines";
            out << (first_curve ? "  " : ", \\\n  ") << "'" << csv_path
                << "' using (strcol(1) eq '" << st.label << "' ? $2 : 1/0):" << column
                << " with " << style << " title '" << st.label << " " << keyhole::to_string(m)
                << "'";
            first_curve = false;
            ++column;
        }
    }
    out << "\n";
    require_stream(out);
}

ValidationOutcome run_validation(const ParamConfig& base, const ValidationGrid& grid,
                                 const ValidationOptions& options) {
    for (int m : grid.users) {
        if (m < 1 || m > analytic::kMaxBinomialOrder) {
            throw std::invalid_argument("validate: grid value M=" + std::to_string(m) +
                                        " outside [1, " +
                                        std::to_string(analytic::kMaxBinomialOrder) +
                                        "], the binomial cap of the closed form");
        }
    }
    for (int n : grid.eves) {
        if (n < 1 || n > analytic::kMaxBinomialOrder) {
            throw std::invalid_argument("validate: grid value N=" + std::to_string(n) +
                                        " outside [1, " +
                                        std::to_string(analytic::kMaxBinomialOrder) +
                                        "], the binomial cap of the closed form");
        }
    }
    if (grid.gamma_db.empty()) throw std::invalid_argument("validate: empty SNR grid");

    ValidationOutcome outcome;
    for (int m : grid.users) {
        for (int n : grid.eves) {
            ParamConfig cfg = base;
            cfg.params.num_users = m;
            cfg.params.num_eves = n;
            for (double g : grid.gamma_db) {
                const SystemParams p = at_user_snr_db(cfg, g);
                const std::string label = point_label(m, n, g);
                const auto cf = analytic::sop_closed_form(p);

                const auto report = mc::validate_against_analytic(p, options.mc_samples,
                                                                  options.seed, options.num_streams);
                outcome.checks.push_back({"monte_carlo", label, cf.value, report.mc.sop_hat,
                                          std::abs(report.z_score), mc::kMaxAbsZScore, report.pass});
                ++outcome.mc_points;
                if (!report.pass) ++outcome.mc_failures;

                const double q = analytic::sop_quadrature(p, options.quad_rel_tol).value;
                const double abs_dev = std::abs(q - cf.value);
                const bool small = cf.value < 1e-3;
                const bool quad_ok = abs_dev <= kOracleRelTol * cf.value ||
                                     (small && abs_dev <= kOracleAbsTolSmall);
                outcome.checks.push_back({"quadrature", label, cf.value, q,
                                          small ? abs_dev : abs_dev / cf.value,
                                          small ? kOracleAbsTolSmall : kOracleRelTol, quad_ok});
                if (!quad_ok) ++outcome.other_failures;
            }
            const SystemParams high = at_user_snr_db(cfg, options.high_snr_db);
            const double cf_high = analytic::sop_closed_form(high).value;
            const double asym = analytic::sop_asymptotic(high).value;
            const double dev = std::abs(cf_high - asym);
            const bool sat_ok = dev <= kSaturationTol;
            outcome.checks.push_back({"saturation", point_label(m, n, options.high_snr_db), cf_high,
                                      asym, dev, kSaturationTol, sat_ok});
            if (!sat_ok) ++outcome.other_failures;
        }
    }
    outcome.mc_allowance = (outcome.mc_points + 39) / 40;
    outcome.pass = outcome.other_failures == 0 && outcome.mc_failures <= outcome.mc_allowance;
    return outcome;
}

void print_validation_report(const ValidationOutcome& outcome, std::ostream& out) {
    out << std::left << std::setw(12) << "check" << std::setw(34) << "point" << std::setw(16)
        << "closed_form" << std::setw(16) << "other" << std::setw(13) << "metric"
        << std::setw(10) << "limit" << "result\n";
    for (const auto& c : outcome.checks) {
        out << std::setw(12) << c.check << std::setw(34) << c.point << std::setw(16)
            << format_number(c.reference) << std::setw(16) << format_number(c.observed)
            << std::setw(13) << std::setprecision(4) << c.metric << std::setw(10) << c.limit
            << (c.pass ? "pass" : "FAIL") << '\n';
    }
    out << "\nmonte_carlo: " << outcome.mc_failures << " of " << outcome.mc_points
        << " points outside 4 standard errors (allowed " << outcome.mc_allowance << ")\n"
        << "quadrature/saturation failures: " << outcome.other_failures << '\n'
        << "verdict: " << (outcome.pass ? "PASS" : "FAIL") << '\n';
}

}  // namespace keyhole::sweep
