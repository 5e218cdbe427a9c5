#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biv/ingest.hpp"
#include "biv/lattice.hpp"
#include "biv/solver.hpp"

namespace biv {

/// Aggregates over a batch. Error statistics use binomial_iv − reference_iv
/// over rows that converged (positive or negative root) and carry a
/// reference; they are absent when there are no such rows.
struct BatchSummary {
    std::size_t count_total = 0;
    std::size_t count_converged = 0;
    std::size_t count_negative = 0;
    std::size_t count_failed = 0;
    std::size_t error_count = 0;
    std::optional<double> mean_error;
    std::optional<double> median_error;
    std::optional<double> std_error;  ///< population standard deviation
    std::optional<double> underestimate_fraction;

    friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

struct BatchReport {
    std::vector<ResultRow> per_quote;  ///< same order as the input records
    BatchSummary summary;
};

/// Solves every record with `parallelism` worker threads. A record without
/// reference_iv gets one from bs_implied_vol when its price lies inside the
/// no-arbitrage band. binomial_iv is filled only for converged rows.
BatchReport run_batch(std::span<const QuoteRecord> records, const LatticeSpec& spec, const SolverConfig& config,
                      unsigned parallelism);

BatchSummary summarize(std::span<const ResultRow> rows);

/// JSON object with the BatchSummary field names; absent statistics are null.
std::string summary_json(const BatchSummary& summary);

struct HistogramBin {
    double lower;
    double upper;
    std::size_t count;

    friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Equal-width bins over [min, max], the last bin closed. When all values
/// coincide there is one unit-width bin centred on them. Throws
/// InvalidArgument when bin_count is 0.
std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bin_count);

struct ScatterPoint {
    double reference_iv;
    double binomial_iv;
};

/// Converged rows with a reference; negative roots are left out.
std::vector<ScatterPoint> scatter_points(std::span<const ResultRow> rows);

/// binomial_iv − reference_iv for Converged and ConvergedNegative rows.
std::vector<double> signed_errors(std::span<const ResultRow> rows);

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points);
void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins);

}  // namespace biv
