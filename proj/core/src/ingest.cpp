#include "biv/ingest.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <system_error>

namespace biv {

namespace {

constexpr std::array<std::string_view, 5> kRequiredColumns{"quote_date", "expiry_date", "spot", "strike",
                                                           "option_price"};
constexpr std::string_view kRateColumn = "rate";
constexpr std::string_view kReferenceColumn = "reference_iv";
constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

std::optional<double> parse_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<int> parse_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

// Splits the whole input into lines; a trailing '\r' is dropped by trim().
std::vector<std::string> read_lines(std::istream& input) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(input, line)) lines.push_back(std::move(line));
    if (!lines.empty() && lines.front().starts_with(kUtf8Bom)) {
        lines.front().erase(0, kUtf8Bom.size());
    }
    return lines;
}

std::string optional_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

struct QuoteColumns {
    std::array<std::size_t, 5> required{};
    std::optional<std::size_t> rate;
    std::optional<std::size_t> reference_iv;
    std::size_t count = 0;
};

QuoteColumns map_header(std::string_view header_line) {
    const auto names = split_fields(header_line);
    QuoteColumns cols;
    cols.count = names.size();
    std::array<bool, 5> seen{};
    auto fail = [](const std::string& why) { throw Error(ErrorCode::MalformedHeader, why); };

    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string_view name = names[i];
        bool known = false;
        for (std::size_t r = 0; r < kRequiredColumns.size(); ++r) {
            if (name == kRequiredColumns[r]) {
                if (seen[r]) fail("duplicate column '" + std::string(name) + "'");
                seen[r] = true;
                cols.required[r] = i;
                known = true;
            }
        }
        if (name == kRateColumn) {
            if (cols.rate) fail("duplicate column 'rate'");
            cols.rate = i;
            known = true;
        } else if (name == kReferenceColumn) {
            if (cols.reference_iv) fail("duplicate column 'reference_iv'");
            cols.reference_iv = i;
            known = true;
        }
        if (!known) fail("unknown column '" + std::string(name) + "'");
    }
    for (std::size_t r = 0; r < kRequiredColumns.size(); ++r) {
        if (!seen[r]) fail("missing column '" + std::string(kRequiredColumns[r]) + "'");
    }
    return cols;
}

// Returns the failure reason, or nullopt when the row produced a record.
std::optional<std::string> parse_quote_row(const std::vector<std::string_view>& f, const QuoteColumns& cols,
                                           double default_rate, QuoteRecord& out) {
    if (f.size() != cols.count) {
        return "expected " + std::to_string(cols.count) + " fields, found " + std::to_string(f.size());
    }
    const auto quote_date = parse_date(f[cols.required[0]]);
    if (!quote_date) return "invalid quote_date";
    const auto expiry_date = parse_date(f[cols.required[1]]);
    if (!expiry_date) return "invalid expiry_date";
    const auto spot = parse_double(f[cols.required[2]]);
    if (!spot) return "invalid spot";
    const auto strike = parse_double(f[cols.required[3]]);
    if (!strike) return "invalid strike";
    const auto price = parse_double(f[cols.required[4]]);
    if (!price) return "invalid option_price";

    double rate = default_rate;
    if (cols.rate && !f[*cols.rate].empty()) {
        const auto r = parse_double(f[*cols.rate]);
        if (!r) return "invalid rate";
        rate = *r;
    }
    std::optional<double> reference;
    if (cols.reference_iv && !f[*cols.reference_iv].empty()) {
        reference = parse_double(f[*cols.reference_iv]);
        if (!reference) return "invalid reference_iv";
    }

    if (days_between(*quote_date, *expiry_date) <= 0) return "expiry_date must be after quote_date";
    if (!(*spot > 0.0)) return "spot must be positive";
    if (!(*strike > 0.0)) return "strike must be positive";
    if (!(*price >= 0.0)) return "option_price must be non-negative";

    out = QuoteRecord{*quote_date, *expiry_date, *spot, *strike, *price, rate, reference};
    return std::nullopt;
}

std::string csv_escape(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    out += '"';
    return out;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) noexcept {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return std::nullopt;
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    const auto y = digits(0, 4);
    const auto m = digits(5, 2);
    const auto d = digits(8, 2);
    if (!y || !m || !d) return std::nullopt;
    const Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                    std::chrono::day{static_cast<unsigned>(*d)}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::string format_date(const Date& date) {
    char buf[16];
    const int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return std::string(buf, static_cast<std::size_t>(n));
}

long days_between(const Date& from, const Date& to) noexcept {
    return static_cast<long>((std::chrono::sys_days{to} - std::chrono::sys_days{from}).count());
}

std::string format_number(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

ParsedQuotes parse_quotes(std::istream& input, double default_rate) {
    const auto lines = read_lines(input);
    if (lines.empty() || trim(lines.front()).empty()) {
        throw Error(ErrorCode::MalformedHeader, "missing header line");
    }
    const QuoteColumns cols = map_header(lines.front());

    ParsedQuotes parsed;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        QuoteRecord record;
        if (auto reason = parse_quote_row(split_fields(lines[i]), cols, default_rate, record)) {
            parsed.diagnostics.push_back({i + 1, std::move(*reason)});
        } else {
            parsed.records.push_back(record);
        }
    }
    return parsed;
}

ParsedQuotes parse_quotes(std::string_view text, double default_rate) {
    std::istringstream in{std::string(text)};
    return parse_quotes(in, default_rate);
}

OptionQuote to_quote(const QuoteRecord& record) {
    return OptionQuote{record.spot, record.strike,
                       static_cast<double>(days_between(record.quote_date, record.expiry_date)) / kDaysPerYear,
                       record.rate, record.option_price};
}

void write_quotes_csv(std::ostream& out, std::span<const QuoteRecord> records) {
    out << "quote_date,expiry_date,spot,strike,option_price,rate,reference_iv\n";
    for (const auto& r : records) {
        out << format_date(r.quote_date) << ',' << format_date(r.expiry_date) << ',' << format_number(r.spot)
            << ',' << format_number(r.strike) << ',' << format_number(r.option_price) << ','
            << format_number(r.rate) << ',' << optional_number(r.reference_iv) << '\n';
    }
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
    out << kResultsHeader << '\n';
    for (const auto& r : rows) {
        out << format_date(r.quote_date) << ',' << format_date(r.expiry_date) << ',' << format_number(r.spot)
            << ',' << format_number(r.strike) << ',' << format_number(r.option_price) << ','
            << optional_number(r.reference_iv) << ',' << optional_number(r.binomial_iv) << ','
            << to_string(r.status) << ',' << r.iterations << ',' << optional_number(r.residual) << '\n';
    }
}

ParsedResults parse_results(std::istream& input) {
    const auto lines = read_lines(input);
    if (lines.empty() || trim(lines.front()) != kResultsHeader) {
        throw Error(ErrorCode::MalformedHeader, "expected header '" + std::string(kResultsHeader) + "'");
    }
    constexpr std::size_t kColumns = 10;

    ParsedResults parsed;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const auto f = split_fields(lines[i]);
        auto reject = [&](std::string reason) { parsed.diagnostics.push_back({i + 1, std::move(reason)}); };
        if (f.size() != kColumns) {
            reject("expected 10 fields, found " + std::to_string(f.size()));
            continue;
        }
        auto optional_field = [&](std::string_view s, bool& ok) -> std::optional<double> {
            if (s.empty()) return std::nullopt;
            auto v = parse_double(s);
            ok = ok && v.has_value();
            return v;
        };

        ResultRow row;
        const auto qd = parse_date(f[0]);
        const auto ed = parse_date(f[1]);
        const auto spot = parse_double(f[2]);
        const auto strike = parse_double(f[3]);
        const auto price = parse_double(f[4]);
        const auto status = parse_solver_status(f[7]);
        const auto iterations = parse_int(f[8]);
        bool ok = qd && ed && spot && strike && price && status && iterations;
        row.reference_iv = optional_field(f[5], ok);
        row.binomial_iv = optional_field(f[6], ok);
        row.residual = optional_field(f[9], ok);
        if (!ok) {
            reject("unparseable field");
            continue;
        }
        row.quote_date = *qd;
        row.expiry_date = *ed;
        row.spot = *spot;
        row.strike = *strike;
        row.option_price = *price;
        row.status = *status;
        row.iterations = *iterations;
        parsed.rows.push_back(row);
    }
    return parsed;
}

void write_diagnostics_csv(std::ostream& out, std::span<const RowDiagnostic> diagnostics) {
    out << "line,reason\n";
    for (const auto& d : diagnostics) out << d.line << ',' << csv_escape(d.reason) << '\n';
}

}  // namespace biv
