#include "biv/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "biv/black_scholes.hpp"

namespace biv {

namespace {

bool is_converged(SolverStatus s) {
    return s == SolverStatus::Converged || s == SolverStatus::ConvergedNegative;
}

ResultRow solve_record(const QuoteRecord& record, const LatticeSpec& spec, const SolverConfig& config) {
    const OptionQuote quote = to_quote(record);
    ResultRow row;
    row.quote_date = record.quote_date;
    row.expiry_date = record.expiry_date;
    row.spot = record.spot;
    row.strike = record.strike;
    row.option_price = record.option_price;
    row.reference_iv = record.reference_iv;
    if (!row.reference_iv) {
        try {
            row.reference_iv = bs_implied_vol(quote);
        } catch (const Error&) {
            // outside the no-arbitrage band: no reference
        }
    }

    const SolverResult result = solve_implied_vol(quote, spec, config);
    row.status = result.status;
    row.iterations = result.iterations;
    row.residual = result.final_residual;
    if (is_converged(result.status)) row.binomial_iv = result.implied_vol;
    return row;
}

}  // namespace

BatchReport run_batch(std::span<const QuoteRecord> records, const LatticeSpec& spec, const SolverConfig& config,
                      unsigned parallelism) {
    BatchReport report;
    report.per_quote.resize(records.size());

    const unsigned workers =
        std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(std::max<std::size_t>(records.size(), 1))));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            report.per_quote[i] = solve_record(records[i], spec, config);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    report.summary = summarize(report.per_quote);
    return report;
}

BatchSummary summarize(std::span<const ResultRow> rows) {
    BatchSummary s;
    s.count_total = rows.size();
    for (const auto& r : rows) {
        switch (r.status) {
            case SolverStatus::Converged: ++s.count_converged; break;
            case SolverStatus::ConvergedNegative: ++s.count_negative; break;
            default: ++s.count_failed; break;
        }
    }

    std::vector<double> errors = signed_errors(rows);
    s.error_count = errors.size();
    if (errors.empty()) return s;

    const double n = static_cast<double>(errors.size());
    const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / n;
    double sq = 0.0;
    std::size_t under = 0;
    for (double e : errors) {
        sq += (e - mean) * (e - mean);
        if (e < 0.0) ++under;
    }
    s.mean_error = mean;
    s.std_error = std::sqrt(sq / n);
    s.underestimate_fraction = static_cast<double>(under) / n;

    std::sort(errors.begin(), errors.end());
    const std::size_t mid = errors.size() / 2;
    s.median_error = errors.size() % 2 == 1 ? errors[mid] : 0.5 * (errors[mid - 1] + errors[mid]);
    return s;
}

std::string summary_json(const BatchSummary& s) {
    auto optional = [](const std::optional<double>& v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::ordered_json j;
    j["count_total"] = s.count_total;
    j["count_converged"] = s.count_converged;
    j["count_negative"] = s.count_negative;
    j["count_failed"] = s.count_failed;
    j["error_count"] = s.error_count;
    j["mean_error"] = optional(s.mean_error);
    j["median_error"] = optional(s.median_error);
    j["std_error"] = optional(s.std_error);
    j["underestimate_fraction"] = optional(s.underestimate_fraction);
    return j.dump(2) + "\n";
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bin_count) {
    if (bin_count == 0) throw Error(ErrorCode::InvalidArgument, "bin_count must be >= 1");
    if (values.empty()) return {};

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) {
        return {{lo - 0.5, lo + 0.5, values.size()}};
    }

    const double width = (hi - lo) / static_cast<double>(bin_count);
    std::vector<HistogramBin> bins(bin_count);
    for (std::size_t b = 0; b < bin_count; ++b) {
        bins[b].lower = lo + width * static_cast<double>(b);
        bins[b].upper = b + 1 == bin_count ? hi : lo + width * static_cast<double>(b + 1);
        bins[b].count = 0;
    }
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        b = std::min(b, bin_count - 1);
        // Rounding in (v - lo) / width can land a value one bin off.
        while (b > 0 && v < bins[b].lower) --b;
        while (b + 1 < bin_count && v >= bins[b + 1].lower) ++b;
        ++bins[b].count;
    }
    return bins;
}

std::vector<ScatterPoint> scatter_points(std::span<const ResultRow> rows) {
    std::vector<ScatterPoint> points;
    for (const auto& r : rows) {
        if (r.status == SolverStatus::Converged && r.reference_iv && r.binomial_iv) {
            points.push_back({*r.reference_iv, *r.binomial_iv});
        }
    }
    return points;
}

std::vector<double> signed_errors(std::span<const ResultRow> rows) {
    std::vector<double> errors;
    for (const auto& r : rows) {
        if (is_converged(r.status) && r.reference_iv && r.binomial_iv) {
            errors.push_back(*r.binomial_iv - *r.reference_iv);
        }
    }
    return errors;
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points) {
    out << "reference_iv,binomial_iv\n";
    for (const auto& p : points) out << format_number(p.reference_iv) << ',' << format_number(p.binomial_iv) << '\n';
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
    out << "bin_lower,bin_upper,count\n";
    for (const auto& b : bins) {
        out << format_number(b.lower) << ',' << format_number(b.upper) << ',' << b.count << '\n';
    }
}

}  // namespace biv
