// biv: price, invert, simulate and batch-evaluate European calls on the
// binomial lattice.
//
// Exit codes: 0 ok, 1 pricer error, 2 usage, 3 no convergence, 4 I/O,
// 5 malformed input header.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "biv/biv.hpp"

namespace {

enum Exit { kOk = 0, kPricer = 1, kUsage = 2, kNoConvergence = 3, kIo = 4, kSchema = 5 };

struct IoFailure {
    std::string path;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure{path};
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoFailure{path};
}

struct QuoteFlags {
    double spot = 0;
    double strike = 0;
    double maturity = 0;
    double rate = 0;
};

void add_quote_flags(CLI::App* cmd, QuoteFlags& q) {
    cmd->add_option("--spot", q.spot, "Spot price S")->required();
    cmd->add_option("--strike", q.strike, "Strike K")->required();
    cmd->add_option("--maturity-years", q.maturity, "Time to expiry T in years")->required();
    cmd->add_option("--rate", q.rate, "Continuously compounded risk-free rate r")->capture_default_str();
}

struct SolverFlags {
    int steps = 10;
    double x0 = 0.2;
    double tol = 1e-5;
    int max_iter = 100;
    bool retries = false;
    std::string derivative = "ad";
};

void add_solver_flags(CLI::App* cmd, SolverFlags& s) {
    cmd->add_option("--steps", s.steps, "Lattice layers")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--x0", s.x0, "Initial volatility")->capture_default_str();
    cmd->add_option("--tol", s.tol, "Stop when successive objective values differ by less")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", s.max_iter, "Newton iteration cap")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--retries", s.retries, "Retry from 0.1, 0.4, 0.8 when the first start fails");
    cmd->add_option("--derivative", s.derivative, "d price / d sigma: ad, central or forward")
        ->capture_default_str()
        ->check(CLI::IsMember({"ad", "central", "forward"}));
}

biv::SolverConfig to_config(const SolverFlags& s) {
    biv::SolverConfig config;
    config.initial_sigma = s.x0;
    config.tolerance = s.tol;
    config.max_iterations = s.max_iter;
    if (s.retries) config.retry_initials = biv::retry_preset();
    if (s.derivative == "central") config.derivative = biv::CentralDifference{};
    if (s.derivative == "forward") config.derivative = biv::ForwardDifference{};
    return config;
}

nlohmann::json optional_json(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

int run_price(const QuoteFlags& q, double sigma, int steps, const std::string& model) {
    try {
        const biv::OptionQuote quote{q.spot, q.strike, q.maturity, q.rate, std::nullopt};
        const double price = model == "bs" ? biv::bs_call_price({q.spot, q.strike, q.rate, q.maturity, sigma})
                                           : biv::lattice_price(quote, sigma, {steps});
        std::printf("%#.10g\n", price);
        return kOk;
    } catch (const biv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPricer;
    }
}

int run_iv(const QuoteFlags& q, double price, const SolverFlags& s) {
    const biv::OptionQuote quote{q.spot, q.strike, q.maturity, q.rate, price};
    const biv::SolverResult r = biv::solve_implied_vol(quote, {s.steps}, to_config(s));
    nlohmann::ordered_json j;
    j["implied_vol"] = optional_json(r.implied_vol);
    j["status"] = std::string(biv::to_string(r.status));
    j["iterations"] = r.iterations;
    j["residual"] = optional_json(r.final_residual);
    std::cout << j.dump(2) << '\n';
    return r.status == biv::SolverStatus::Converged ? kOk : kNoConvergence;
}

struct SimulateFlags {
    biv::GbmSpec gbm;
    std::string out;
    std::string quotes_out;
    double strike = 100.0;
    int maturity_days = 90;
    double rate = 0.0;
    int lattice_steps = 10;
    std::string start_date = "2020-01-01";
};

int run_simulate(const SimulateFlags& f) {
    biv::PricePath path;
    try {
        path = biv::simulate_gbm(f.gbm);
    } catch (const biv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    auto out = open_output(f.out);
    biv::write_path_csv(out, path);
    finish(out, f.out);
    if (f.quotes_out.empty()) return kOk;

    const auto start = biv::parse_date(f.start_date);
    if (!start) {
        std::cerr << "error: --start-date must be YYYY-MM-DD\n";
        return kUsage;
    }
    std::vector<biv::SyntheticQuote> quotes;
    try {
        const std::vector<double> strikes{f.strike};
        quotes = biv::generate_synthetic_quotes(path, strikes, f.maturity_days, biv::default_sigma_grid(),
                                                {f.lattice_steps}, f.rate);
    } catch (const biv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == biv::ErrorCode::InvalidArgument ? kUsage : kPricer;
    }
    const auto records = biv::to_records(quotes, path, f.maturity_days, *start);
    auto qout = open_output(f.quotes_out);
    biv::write_quotes_csv(qout, records);
    finish(qout, f.quotes_out);
    return kOk;
}

struct BatchFlags {
    std::string in;
    std::string out;
    SolverFlags solver;
    double default_rate = 0.0;
    unsigned jobs = 1;
};

int run_batch(const BatchFlags& f) {
    std::ifstream in(f.in, std::ios::binary);
    if (!in) throw IoFailure{f.in};
    biv::ParsedQuotes parsed;
    try {
        parsed = biv::parse_quotes(in, f.default_rate);
    } catch (const biv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSchema;
    }
    const auto report = biv::run_batch(parsed.records, {f.solver.steps}, to_config(f.solver), f.jobs);

    auto out = open_output(f.out);
    biv::write_results_csv(out, report.per_quote);
    finish(out, f.out);

    const std::string summary_path = f.out + ".summary.json";
    auto summary = open_output(summary_path);
    summary << biv::summary_json(report.summary);
    finish(summary, summary_path);

    const std::string diag_path = f.out + ".diagnostics.csv";
    auto diag = open_output(diag_path);
    biv::write_diagnostics_csv(diag, parsed.diagnostics);
    finish(diag, diag_path);

    if (!parsed.diagnostics.empty()) {
        std::cerr << parsed.diagnostics.size() << " row(s) skipped, see " << diag_path << '\n';
    }
    return kOk;
}

int run_report(const std::string& in_path, const std::string& prefix, std::size_t bins) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw IoFailure{in_path};
    biv::ParsedResults parsed;
    try {
        parsed = biv::parse_results(in);
    } catch (const biv::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSchema;
    }
    if (!parsed.diagnostics.empty()) {
        std::cerr << parsed.diagnostics.size() << " malformed row(s) ignored\n";
    }

    const auto points = biv::scatter_points(parsed.rows);
    const std::string scatter_path = prefix + ".scatter.csv";
    auto scatter = open_output(scatter_path);
    biv::write_scatter_csv(scatter, points);
    finish(scatter, scatter_path);

    const auto errors = biv::signed_errors(parsed.rows);
    const std::string hist_path = prefix + ".hist.csv";
    auto hist = open_output(hist_path);
    biv::write_histogram_csv(hist, biv::histogram(errors, bins));
    finish(hist, hist_path);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Implied volatility from a binomial lattice via Newton-Raphson with forward-mode AD"};
    app.name("biv");
    app.require_subcommand(1);

    QuoteFlags price_quote;
    double price_sigma = 0.2;
    int price_steps = 10;
    std::string model = "lattice";
    auto* price = app.add_subcommand("price", "Price a European call");
    add_quote_flags(price, price_quote);
    price->add_option("--sigma", price_sigma, "Volatility")->capture_default_str();
    price->add_option("--steps", price_steps, "Lattice layers")->capture_default_str()->check(CLI::PositiveNumber);
    price->add_option("--model", model, "lattice or bs")->capture_default_str()->check(CLI::IsMember({"lattice", "bs"}));

    QuoteFlags iv_quote;
    double iv_price = 0;
    SolverFlags iv_solver;
    auto* iv = app.add_subcommand("iv", "Implied volatility of one quote");
    add_quote_flags(iv, iv_quote);
    iv->add_option("--price", iv_price, "Observed call price")->required();
    add_solver_flags(iv, iv_solver);

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a GBM price path");
    simulate->add_option("--s0", sim.gbm.initial_price, "Initial price")->capture_default_str();
    simulate->add_option("--mu", sim.gbm.drift, "Drift")->capture_default_str();
    simulate->add_option("--sigma", sim.gbm.volatility, "Volatility")->capture_default_str();
    simulate->add_option("--days", sim.gbm.horizon_days, "Horizon in days")->capture_default_str();
    simulate->add_option("--steps-per-day", sim.gbm.steps_per_day, "Time steps per day")->capture_default_str();
    simulate->add_option("--seed", sim.gbm.seed, "mt19937_64 seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "Path CSV (time_years,price)")->required();
    simulate->add_option("--quotes-out", sim.quotes_out, "Also write lattice-priced quotes over the 0.10..0.42 grid");
    simulate->add_option("--strike", sim.strike, "Strike for --quotes-out")->capture_default_str();
    simulate->add_option("--maturity-days", sim.maturity_days, "Days to expiry for --quotes-out")
        ->capture_default_str();
    simulate->add_option("--rate", sim.rate, "Rate for --quotes-out")->capture_default_str();
    simulate->add_option("--lattice-steps", sim.lattice_steps, "Lattice layers for --quotes-out")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--start-date", sim.start_date, "Quote date of the first path point")
        ->capture_default_str();

    BatchFlags batch_flags;
    auto* batch = app.add_subcommand("batch", "Solve every quote in a CSV");
    batch->add_option("--in", batch_flags.in, "Quotes CSV")->required();
    batch->add_option("--out", batch_flags.out, "Results CSV; also writes <out>.summary.json and <out>.diagnostics.csv")
        ->required();
    add_solver_flags(batch, batch_flags.solver);
    batch->add_option("--default-rate", batch_flags.default_rate, "Rate for rows without one")->capture_default_str();
    batch->add_option("--jobs", batch_flags.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    std::string report_in;
    std::string report_prefix;
    std::size_t bins = 50;
    auto* report = app.add_subcommand("report", "Scatter and histogram data from a results CSV");
    report->add_option("--in", report_in, "Results CSV from batch")->required();
    report->add_option("--out-prefix", report_prefix, "Writes <prefix>.scatter.csv and <prefix>.hist.csv")
        ->required();
    report->add_option("--bins", bins, "Histogram bins")->capture_default_str()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kUsage;
    }

    try {
        if (*price) return run_price(price_quote, price_sigma, price_steps, model);
        if (*iv) return run_iv(iv_quote, iv_price, iv_solver);
        if (*simulate) return run_simulate(sim);
        if (*batch) return run_batch(batch_flags);
        if (*report) return run_report(report_in, report_prefix, bins);
    } catch (const IoFailure& e) {
        std::cerr << "error: cannot access " << e.path << '\n';
        return kIo;
    }
    return kUsage;
}
