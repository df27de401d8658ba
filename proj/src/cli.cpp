// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#include "expiring/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "expiring/asymptotics.hpp"
#include "expiring/combinatorics.hpp"
#include "expiring/errors.hpp"
#include "expiring/exact_oracle.hpp"
#include "expiring/stats.hpp"
#include "expiring/ztp_local.hpp"

namespace expiring::cli {

namespace {

using Json = nlohmann::ordered_json;

// Flat records feed the CSV writer; `doc` is the JSON document.
struct Output {
    Json doc;
    std::vector<Json> rows;
};

std::string fmt15(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

Json num(double x)
{
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return std::strtod(fmt15(x).c_str(), nullptr);
}

Json num(std::optional<double> x)
{
    return x ? num(*x) : Json(nullptr);
}

Json exact_json(DualProb const& p)
{
    return p.exact ? Json(p.exact_string()) : Json(nullptr);
}

std::size_t single_n(RunConfig const& config)
{
    if (config.n.size() != 1) {
        throw CLI::ValidationError("--n", "exactly one value of --n is required for this command");
    }
    return config.n.front();
}

ModelParams single_params(RunConfig const& config)
{
    std::size_t const n = single_n(config);
    return ModelParams(n, resolve_window(config, n));
}

Json dual_json(ModelParams const& params, DualProb const& p)
{
    Json row;
    row["n"] = params.types();
    row["M"] = params.window();
    row["exact"] = exact_json(p);
    row["log"] = num(p.log_value);
    return row;
}

Output cmd_probability(RunConfig const& config, bool want_flux)
{
    auto const params = single_params(config);
    auto const p = want_flux ? flux(params) : mass(params);
    Json row = dual_json(params, p);
    return {row, {row}};
}

Output cmd_simulate(RunConfig const& config)
{
    auto const params = single_params(config);
    auto const batch = sample_T(params, config.trials, config.seed, config.step_cap);
    auto const& s = batch.samples;
    double const total = std::accumulate(s.begin(), s.end(), 0.0);

    Json doc;
    doc["n"] = params.types();
    doc["M"] = params.window();
    doc["seed"] = config.seed;
    doc["trials"] = batch.trials;
    doc["step_cap"] = config.step_cap;
    doc["truncated"] = batch.truncated_count;
    doc["completed"] = s.size();
    doc["mean_T"] = num(total / static_cast<double>(s.size()));
    doc["min_T"] = *std::min_element(s.begin(), s.end());
    doc["max_T"] = *std::max_element(s.begin(), s.end());

    Json row = doc;
    row.erase("step_cap");
    if (params.types() >= 2) {
        auto const mu = flux(params);
        std::vector<double> scaled;
        scaled.reserve(s.size());
        for (auto t : s) {
            scaled.push_back(static_cast<double>(t) * mu.value());
        }
        auto const report = ks_exp1(scaled);
        doc["flux"] = {{"exact", exact_json(mu)}, {"log", num(mu.log_value)}};
        Json moments = Json::array();
        for (std::size_t r = 0; r < report.moments.size(); ++r) {
            moments.push_back({{"r", r + 1},
                               {"value", num(report.moments[r].value)},
                               {"stderr", num(report.moments[r].stderr_estimate)}});
            row["moment" + std::to_string(r + 1)] = num(report.moments[r].value);
        }
        doc["gof"] = {{"sample_count", report.sample_count},
                      {"ks_stat", num(report.ks_stat)},
                      {"dkw_epsilon", num(report.dkw_epsilon)},
                      {"moments", moments}};
        row["flux_log"] = num(mu.log_value);
        row["ks_stat"] = num(report.ks_stat);
        row["dkw_epsilon"] = num(report.dkw_epsilon);
    } else {
        doc["flux"] = nullptr;
        doc["gof"] = nullptr;
        for (int r = 1; r <= 4; ++r) {
            row["moment" + std::to_string(r)] = nullptr;
        }
        row["flux_log"] = nullptr;
        row["ks_stat"] = nullptr;
        row["dkw_epsilon"] = nullptr;
    }
    if (config.emit_samples) {
        doc["samples"] = s;
    }
    return {doc, {row}};
}

Output cmd_scan(RunConfig const& config)
{
    auto const params = single_params(config);
    auto const scan = stationary_entry_scan(params, config.horizon, config.seed);
    auto const mu = flux(params);
    Json row;
    row["n"] = params.types();
    row["M"] = params.window();
    row["seed"] = config.seed;
    row["horizon"] = scan.horizon;
    row["entries"] = scan.entries;
    row["flux_estimate"] = num(scan.flux_estimate);
    row["stderr"] = num(scan.stderr_estimate);
    row["exact_flux"] = exact_json(mu);
    row["exact_log"] = num(mu.log_value);
    std::optional<double> z;
    if (scan.stderr_estimate && *scan.stderr_estimate > 0.0) {
        z = (scan.flux_estimate - mu.value()) / *scan.stderr_estimate;
    }
    row["z_score"] = num(z);
    return {row, {row}};
}

Output cmd_theta(RunConfig const& config)
{
    auto const params = single_params(config);
    auto const est = theta_estimate(params, config.trials, config.seed);
    double const lambda = missing_mean(params);
    Json row;
    row["n"] = params.types();
    row["M"] = params.window();
    row["seed"] = config.seed;
    row["trials"] = est.trials;
    row["theta_hat"] = num(est.theta_hat);
    row["stderr"] = num(est.theta_stderr);
    row["lambda"] = num(lambda);
    row["log_M_over_lambda"] = num(std::log(static_cast<double>(params.window())) / lambda);
    row["endpoint_rate"] = num(est.offset_rates.back());
    row["endpoint_stderr"] = num(est.offset_stderr(params.window()));
    row["flux"] = num(flux(params).value());
    row["pair_bound_mean"] = num(est.bound_mean);
    return {row, {row}};
}

template <class F>
Json within_budget(F&& f)
{
    try {
        return f();
    } catch (BudgetError const&) {
        return nullptr;
    }
}

Output cmd_oracle(RunConfig const& config)
{
    auto const params = single_params(config);
    Json row;
    row["n"] = params.types();
    row["M"] = params.window();
    row["mass"] = within_budget([&] { return Json(oracle::enumerate_mass(params).get_str()); });
    row["flux"] = params.types() >= 2
                      ? within_budget([&] { return Json(oracle::enumerate_flux(params).get_str()); })
                      : Json(nullptr);
    Json states = nullptr;
    Json lumped = nullptr;
    Json value = nullptr;
    row["expected_T"] = within_budget([&] {
        auto const r = oracle::exact_expected_T(params);
        states = r.states;
        lumped = r.lumped_states;
        value = num(r.expected_T_value);
        return Json(r.expected_T.get_str());
    });
    row["expected_T_value"] = value;
    row["window_states"] = states;
    row["lumped_states"] = lumped;
    row["theta"] = params.types() >= 2
                       ? within_budget([&] { return Json(oracle::exact_theta(params).get_str()); })
                       : Json(nullptr);
    return {row, {row}};
}

Output cmd_ztp(RunConfig const& config)
{
    std::vector<std::pair<std::size_t, std::size_t>> grid;
    if (config.colors.empty() && config.totals.empty()) {
        grid = {{100, 200}, {200, 400}, {400, 800}};
    } else {
        if (config.colors.size() != config.totals.size()) {
            throw CLI::ValidationError("--N/--m", "give the same number of --N and --m values");
        }
        for (std::size_t i = 0; i < config.colors.size(); ++i) {
            grid.emplace_back(config.colors[i], config.totals[i]);
        }
    }
    Output out;
    out.doc = Json::array();
    for (auto [colors, total] : grid) {
        ZtpModel const model(colors, total);
        auto const exact = ztp_sum_exact(model);
        double const gauss = gaussian_local(model);
        Json row;
        row["N"] = colors;
        row["m"] = total;
        row["tau"] = num(model.tau());
        row["sigma2"] = num(model.variance());
        row["B"] = num(model.sum_variance());
        row["exact"] = num(exact.probability);
        row["gaussian"] = num(gauss);
        row["ratio"] = num(exact.probability / gauss);
        row["bounded_B"] = num(bounded_B_construction(model));
        row["truncated_mass"] = num(exact.truncated_mass);
        out.doc.push_back(row);
        out.rows.push_back(row);
    }
    return out;
}

Output cmd_rate(RunConfig const& config)
{
    if (!config.linear) {
        throw CLI::ValidationError("--a", "rate needs the linear window ratio --a");
    }
    if (config.window || config.alpha || config.offset) {
        throw CLI::ValidationError("--a", "rate takes only --a as window selector");
    }
    double const a = *config.linear;
    double const tau = tau_solve(a);
    double const rate = rate_I(a);
    Output out;
    out.doc["a"] = num(a);
    out.doc["tau"] = num(tau);
    out.doc["I"] = num(rate);
    Json rows = Json::array();
    for (std::size_t n : config.n) {
        ModelParams const params(n, resolve_window(config, n));
        double const per_n = -flux(params).log_value / static_cast<double>(n);
        Json row;
        row["a"] = num(a);
        row["tau"] = num(tau);
        row["I"] = num(rate);
        row["n"] = n;
        row["M"] = params.window();
        row["neg_log_flux_per_n"] = num(per_n);
        rows.push_back({{"n", n}, {"M", params.window()}, {"neg_log_flux_per_n", num(per_n)}});
        out.rows.push_back(row);
    }
    out.doc["rows"] = rows;
    return out;
}

Output cmd_regimes(RunConfig const& config)
{
    auto const params = single_params(config);
    auto const regime = describe_regime(params);
    Json row;
    row["n"] = params.types();
    row["M"] = params.window();
    row["lambda"] = num(regime.expected_missing);
    row["a"] = num(regime.linear_ratio);
    row["alpha"] = num(regime.log_ratio);
    row["c"] = num(regime.critical_offset);
    row["log_mass"] = num(mass(params, ExactBudget{0}).log_value);
    row["log_flux"] = params.types() >= 2 ? num(flux(params, ExactBudget{0}).log_value) : Json(nullptr);
    row["critical_pi_limit"] = nullptr;
    row["critical_n_flux_limit"] = nullptr;
    if (regime.critical_offset) {
        auto const limits = critical_limits(*regime.critical_offset);
        row["critical_pi_limit"] = num(limits.pi_limit);
        row["critical_n_flux_limit"] = num(limits.n_flux_limit);
    }
    row["alpha_leading_log"] = nullptr;
    row["alpha_sharp_flux"] = nullptr;
    if (config.alpha && *config.alpha > 0.0 && *config.alpha < 1.0) {
        auto const pred = fixed_alpha_prediction(params.types(), *config.alpha);
        row["alpha_leading_log"] = num(pred.leading_log);
        row["alpha_sharp_flux"] = num(pred.sharp_flux);
    }
    return {row, {row}};
}

Output dispatch(RunConfig const& config)
{
    switch (config.command) {
    case Command::flux: return cmd_probability(config, true);
    case Command::mass: return cmd_probability(config, false);
    case Command::simulate: return cmd_simulate(config);
    case Command::scan: return cmd_scan(config);
    case Command::theta: return cmd_theta(config);
    case Command::oracle: return cmd_oracle(config);
    case Command::ztp: return cmd_ztp(config);
    case Command::rate: return cmd_rate(config);
    case Command::regimes: return cmd_regimes(config);
    }
    throw std::logic_error("unknown command");
}

std::string csv_cell(Json const& v)
{
    if (v.is_null()) {
        return {};
    }
    if (v.is_number_float()) {
        return fmt15(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string render(Output const& result, OutputFormat format)
{
    if (format == OutputFormat::json) {
        return result.doc.dump() + "\n";
    }
    std::ostringstream os;
    if (result.rows.empty()) {
        return {};
    }
    bool first = true;
    for (auto const& [key, value] : result.rows.front().items()) {
        os << (first ? "" : ",") << key;
        first = false;
    }
    os << "\n";
    for (auto const& row : result.rows) {
        first = true;
        for (auto const& [key, value] : row.items()) {
            os << (first ? "" : ",") << csv_cell(value);
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

std::string error_object(char const* kind, std::string const& message)
{
    Json doc;
    doc["error"] = {{"kind", kind}, {"message", message}};
    return doc.dump() + "\n";
}

}  // namespace

std::size_t resolve_window(RunConfig const& config, std::size_t types)
{
    int const selectors = static_cast<int>(config.window.has_value()) + static_cast<int>(config.alpha.has_value()) +
                          static_cast<int>(config.linear.has_value()) + static_cast<int>(config.offset.has_value());
    if (selectors != 1) {
        throw CLI::ValidationError("--M/--alpha/--a/--c", "give exactly one window selector");
    }
    auto const n = static_cast<double>(types);
    double chosen = 0.0;
    if (config.window) {
        return *config.window;
    }
    if (config.alpha) {
        if (types < 2) {
            throw DomainError("--alpha needs n >= 2");
        }
        return fixed_alpha_window(types, *config.alpha);
    }
    if (config.linear) {
        chosen = std::floor(*config.linear * n);
    } else {
        if (types < 2) {
            throw DomainError("--c needs n >= 2");
        }
        chosen = std::ceil(n * std::log(n) + *config.offset * n);
    }
    if (!(chosen >= 0.0)) {
        throw DomainError("selected window is negative");
    }
    return static_cast<std::size_t>(chosen);
}

int run(RunConfig const& config, std::ostream& out)
{
    std::string text;
    int code = kOk;
    try {
        text = render(dispatch(config), config.format);
    } catch (CLI::Error const& e) {
        text = error_object("usage", e.what());
        code = kUsage;
    } catch (BudgetError const& e) {
        text = error_object("budget", e.what());
        code = kBudget;
    } catch (DomainError const& e) {
        text = error_object("domain", e.what());
        code = kDomain;
    } catch (std::invalid_argument const& e) {
        text = error_object("domain", e.what());
        code = kDomain;
    } catch (std::exception const& e) {
        text = error_object("internal", e.what());
        code = kInternal;
    }
    out << text;
    out.flush();
    return code;
}

int run_cli(int argc, char const* const* argv, std::ostream& out)
{
    CLI::App app{"Expiring coupon collector: exact flux, simulation and asymptotics"};
    app.require_subcommand(1);
    RunConfig config;
    std::string format = "json";

    auto const add_common = [&](CLI::App* sub, bool needs_window) {
        sub->add_option("--n", config.n, "number of coupon types")->required();
        if (needs_window) {
            sub->add_option("--M", config.window, "window length");
            sub->add_option("--alpha", config.alpha, "window floor(alpha n log n)");
            sub->add_option("--a", config.linear, "window floor(a n)");
            sub->add_option("--c", config.offset, "window ceil(n log n + c n)");
        }
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    struct Entry {
        char const* name;
        Command command;
        char const* help;
    };
    Entry const entries[] = {
        {"flux", Command::flux, "exact stationary entry flux"},
        {"mass", Command::mass, "exact stationary onto-window probability"},
        {"simulate", Command::simulate, "sample completion times and test mu*T against Exp(1)"},
        {"scan", Command::scan, "estimate the entry flux from a stationary run"},
        {"theta", Command::theta, "estimate theta from conditioned entries"},
        {"oracle", Command::oracle, "enumeration and exact chain results at tiny scale"},
        {"ztp", Command::ztp, "zero-truncated Poisson local-limit table"},
        {"rate", Command::rate, "linear-window rate I(a) against -(1/n) log mu"},
        {"regimes", Command::regimes, "regime diagnostics lambda, a, alpha, c"},
    };
    for (auto const& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        Command const command = e.command;
        sub->callback([&config, command] { config.command = command; });
        if (command == Command::ztp) {
            sub->add_option("--N", config.colors, "number of colours");
            sub->add_option("--m", config.totals, "total count");
            sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
            continue;
        }
        add_common(sub, true);
        if (command == Command::simulate || command == Command::theta) {
            sub->add_option("--trials", config.trials, "number of independent trials");
        }
        if (command == Command::simulate) {
            sub->add_option("--step-cap", config.step_cap, "draws after which a trial is truncated");
            sub->add_flag("--samples", config.emit_samples, "include every completion time");
        }
        if (command == Command::scan) {
            sub->add_option("--horizon", config.horizon, "stationary steps to scan");
        }
        if (command == Command::simulate || command == Command::scan || command == Command::theta) {
            sub->add_option("--seed", config.seed, "master seed");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return kOk;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (CLI::ParseError const& e) {
        out << error_object("usage", e.what());
        return kUsage;
    }
    config.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
    return run(config, out);
}

}  // namespace expiring::cli
