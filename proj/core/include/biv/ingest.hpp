#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biv/lattice.hpp"
#include "biv/solver.hpp"

namespace biv {

using Date = std::chrono::year_month_day;

/// ACT/365 fixed.
inline constexpr double kDaysPerYear = 365.0;

/// Strict YYYY-MM-DD.
std::optional<Date> parse_date(std::string_view text) noexcept;
std::string format_date(const Date& date);
/// Signed calendar-day count from `from` to `to`.
long days_between(const Date& from, const Date& to) noexcept;

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// One row of the quote interchange CSV:
///   quote_date,expiry_date,spot,strike,option_price[,rate][,reference_iv]
struct QuoteRecord {
    Date quote_date;
    Date expiry_date;
    double spot = 0.0;
    double strike = 0.0;
    double option_price = 0.0;
    double rate = 0.0;
    std::optional<double> reference_iv;

    friend bool operator==(const QuoteRecord&, const QuoteRecord&) = default;
};

struct RowDiagnostic {
    std::size_t line;  ///< 1-based line number in the input, header is line 1
    std::string reason;
};

struct ParsedQuotes {
    std::vector<QuoteRecord> records;
    std::vector<RowDiagnostic> diagnostics;
};

/// Parses the quote CSV. Columns may appear in any order; the five required
/// columns must be present and only `rate` and `reference_iv` may be added.
/// A missing or empty rate takes `default_rate`. Bad rows become diagnostics;
/// only a bad header throws (MalformedHeader).
ParsedQuotes parse_quotes(std::istream& input, double default_rate);
ParsedQuotes parse_quotes(std::string_view text, double default_rate);

/// Maturity is the ACT/365 year fraction between the two dates.
OptionQuote to_quote(const QuoteRecord& record);

/// Writes all seven columns; an absent reference_iv is an empty field.
void write_quotes_csv(std::ostream& out, std::span<const QuoteRecord> records);

/// One row of the batch results CSV:
///   quote_date,expiry_date,spot,strike,option_price,reference_iv,binomial_iv,status,iterations,residual
struct ResultRow {
    Date quote_date;
    Date expiry_date;
    double spot = 0.0;
    double strike = 0.0;
    double option_price = 0.0;
    std::optional<double> reference_iv;
    std::optional<double> binomial_iv;
    SolverStatus status = SolverStatus::MaxIterations;
    int iterations = 0;
    std::optional<double> residual;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kResultsHeader =
    "quote_date,expiry_date,spot,strike,option_price,reference_iv,binomial_iv,status,iterations,residual";

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);

struct ParsedResults {
    std::vector<ResultRow> rows;
    std::vector<RowDiagnostic> diagnostics;
};

/// Reads a results CSV. The header must match kResultsHeader exactly.
ParsedResults parse_results(std::istream& input);

/// `line,reason` sidecar.
void write_diagnostics_csv(std::ostream& out, std::span<const RowDiagnostic> diagnostics);

}  // namespace biv
