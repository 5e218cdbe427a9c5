#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "biv/ingest.hpp"

namespace {

using biv::ErrorCode;
using biv::QuoteRecord;

constexpr std::string_view kHeader = "quote_date,expiry_date,spot,strike,option_price,rate,reference_iv\n";

biv::Date ymd(int y, unsigned m, unsigned d) {
    return biv::Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

TEST(ParseQuotes, SingleValidRow) {
    const auto parsed = biv::parse_quotes(std::string(kHeader) + "2020-01-02,2020-04-01,100,95,7.5,0.018,0.21\n", 0.0);
    ASSERT_EQ(parsed.records.size(), 1u);
    EXPECT_TRUE(parsed.diagnostics.empty());
    const QuoteRecord& r = parsed.records[0];
    EXPECT_EQ(r.quote_date, ymd(2020, 1, 2));
    EXPECT_EQ(r.expiry_date, ymd(2020, 4, 1));
    EXPECT_EQ(r.spot, 100.0);
    EXPECT_EQ(r.strike, 95.0);
    EXPECT_EQ(r.option_price, 7.5);
    EXPECT_EQ(r.rate, 0.018);
    EXPECT_EQ(r.reference_iv, 0.21);
}

TEST(ParseQuotes, ExpiryBeforeQuoteIsADiagnostic) {
    const auto parsed = biv::parse_quotes(std::string(kHeader) + "2020-04-02,2020-04-01,100,95,7.5,,\n"
                                                                 "2020-04-01,2020-04-01,100,95,7.5,,\n",
                                          0.0);
    EXPECT_TRUE(parsed.records.empty());
    ASSERT_EQ(parsed.diagnostics.size(), 2u);
    EXPECT_EQ(parsed.diagnostics[0].line, 2u);
    EXPECT_EQ(parsed.diagnostics[1].line, 3u);
}

TEST(ParseQuotes, EmptyBody) {
    const auto parsed = biv::parse_quotes(kHeader, 0.0);
    EXPECT_TRUE(parsed.records.empty());
    EXPECT_TRUE(parsed.diagnostics.empty());
}

TEST(ParseQuotes, OptionalColumnsAndDefaultRate) {
    const auto parsed = biv::parse_quotes(
        "option_price,strike,spot,expiry_date,quote_date\r\n"
        "3.25,110,100,2019-06-21,2019-03-15\r\n"
        "\r\n",
        0.025);
    ASSERT_EQ(parsed.records.size(), 1u);
    EXPECT_TRUE(parsed.diagnostics.empty());
    EXPECT_EQ(parsed.records[0].rate, 0.025);
    EXPECT_EQ(parsed.records[0].strike, 110.0);
    EXPECT_FALSE(parsed.records[0].reference_iv);

    const auto blank_rate =
        biv::parse_quotes(std::string(kHeader) + "2019-03-15,2019-06-21,100,110,3.25,,\n", 0.031);
    ASSERT_EQ(blank_rate.records.size(), 1u);
    EXPECT_EQ(blank_rate.records[0].rate, 0.031);
}

TEST(ParseQuotes, Utf8BomIsIgnored) {
    const auto parsed =
        biv::parse_quotes("\xEF\xBB\xBFquote_date,expiry_date,spot,strike,option_price\n2019-03-15,2019-06-21,1,1,0\n", 0);
    EXPECT_EQ(parsed.records.size(), 1u);
}

TEST(ParseQuotes, RowLevelProblems) {
    const auto parsed = biv::parse_quotes(std::string(kHeader) +
                                              "2020-01-02,2020-04-01,100,95\n"           // too few fields
                                              "2020-02-30,2020-04-01,100,95,7.5,,\n"     // bad date
                                              "2020-01-02,2020-04-01,abc,95,7.5,,\n"     // bad number
                                              "2020-01-02,2020-04-01,100,95,-1,,\n"      // negative price
                                              "2020-01-02,2020-04-01,100,0,1,,\n"        // zero strike
                                              "2020-01-02,2020-04-01,nan,95,1,,\n"       // non-finite
                                              "2020-01-02,2020-04-01,100,95,7.5,x,\n"    // bad rate
                                              "2020-01-02,2020-04-01,100,95,7.5,0.01,?\n"  // bad reference
                                              "2020-01-02,2020-04-01,100,95,7.5,0.01,0.3\n",
                                          0.0);
    EXPECT_EQ(parsed.records.size(), 1u);
    EXPECT_EQ(parsed.diagnostics.size(), 8u);
}

TEST(ParseQuotes, MalformedHeaders) {
    for (std::string_view text : {
             std::string_view{""},
             std::string_view{"\n2020-01-02,2020-04-01,100,95,7.5\n"},
             std::string_view{"quote_date,expiry_date,spot,strike\n"},
             std::string_view{"quote_date,expiry_date,spot,strike,option_price,volume\n"},
             std::string_view{"quote_date,expiry_date,spot,strike,option_price,rate,rate\n"},
         }) {
        try {
            (void)biv::parse_quotes(text, 0.0);
            FAIL() << text;
        } catch (const biv::Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedHeader);
        }
    }
}

TEST(ToQuote, Act365) {
    QuoteRecord r{ymd(2020, 1, 1), ymd(2020, 12, 31), 100, 100, 5, 0.01, std::nullopt};
    EXPECT_EQ(biv::to_quote(r).maturity, 1.0);
    r.expiry_date = ymd(2020, 3, 31);
    EXPECT_NEAR(biv::to_quote(r).maturity, 0.246575, 1e-6);
    EXPECT_EQ(biv::to_quote(r).maturity, 90 / 365.0);
    EXPECT_EQ(biv::to_quote(r).market_price, 5.0);
    EXPECT_EQ(biv::to_quote(r).rate, 0.01);
}

TEST(Dates, ParseAndFormat) {
    EXPECT_EQ(biv::parse_date("2024-02-29"), ymd(2024, 2, 29));
    EXPECT_FALSE(biv::parse_date("2023-02-29"));
    EXPECT_FALSE(biv::parse_date("2023-2-28"));
    EXPECT_FALSE(biv::parse_date("2023/02/28"));
    EXPECT_FALSE(biv::parse_date("20a3-02-28"));
    EXPECT_EQ(biv::format_date(ymd(987, 3, 4)), "0987-03-04");
    EXPECT_EQ(biv::days_between(ymd(2020, 1, 1), ymd(2021, 1, 1)), 366);
}

TEST(IngestProperty, WriteThenParseIsLossless) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> price(0.01, 5000), frac(0, 1), iv(0.01, 3);
    std::uniform_int_distribution<int> day(0, 5000), len(1, 900);
    std::bernoulli_distribution has_ref(0.6);
    std::vector<QuoteRecord> records;
    for (int i = 0; i < 500; ++i) {
        const auto start = std::chrono::sys_days{ymd(2010, 1, 1)} + std::chrono::days{day(rng)};
        QuoteRecord r;
        r.quote_date = biv::Date{start};
        r.expiry_date = biv::Date{start + std::chrono::days{len(rng)}};
        r.spot = price(rng);
        r.strike = price(rng);
        r.option_price = i % 10 == 0 ? 0.0 : price(rng) * frac(rng);
        r.rate = frac(rng) * 0.1 - 0.01;
        if (has_ref(rng)) r.reference_iv = iv(rng);
        records.push_back(r);
    }
    std::ostringstream out;
    biv::write_quotes_csv(out, records);
    const auto parsed = biv::parse_quotes(out.str(), 0.5);
    EXPECT_TRUE(parsed.diagnostics.empty());
    EXPECT_EQ(parsed.records, records);
}

TEST(IngestProperty, ArbitraryBytesNeverCrash) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> byte(0, 255), length(0, 400);
    const std::string alphabet = "0123456789-.,\n\r eE+naif";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int i = 0; i < 3000; ++i) {
        std::string body;
        const int n = length(rng);
        for (int j = 0; j < n; ++j) {
            body += i % 2 == 0 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
        }
        for (const std::string& text : {body, std::string(kHeader) + body}) {
            try {
                const auto parsed = biv::parse_quotes(text, 0.0);
                for (const auto& r : parsed.records) {
                    EXPECT_GT(r.spot, 0.0);
                    EXPECT_GT(biv::days_between(r.quote_date, r.expiry_date), 0);
                }
            } catch (const biv::Error& e) {
                EXPECT_EQ(e.code(), ErrorCode::MalformedHeader);
            }
        }
    }
}

TEST(Results, WriteThenParse) {
    std::vector<biv::ResultRow> rows(3);
    rows[0] = {ymd(2020, 1, 2), ymd(2020, 4, 1), 100, 95, 7.5, 0.21, 0.2012, biv::SolverStatus::Converged, 4, 1e-9};
    rows[1] = {ymd(2020, 1, 2), ymd(2020, 4, 1), 100, 150, 0.01, std::nullopt, std::nullopt,
               biv::SolverStatus::ZeroDerivative, 0, 0.3};
    rows[2] = {ymd(2020, 1, 2), ymd(2020, 4, 1), 100, 95, 1, 0.3, -0.02, biv::SolverStatus::ConvergedNegative, 12,
               std::nullopt};
    std::ostringstream out;
    biv::write_results_csv(out, rows);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), biv::kResultsHeader);
    EXPECT_NE(out.str().find("2020-01-02,2020-04-01,100,150,0.01,,,ZeroDerivative,0,0.3\n"), std::string::npos);

    std::istringstream in(out.str() + "garbage,row\n");
    const auto parsed = biv::parse_results(in);
    EXPECT_EQ(parsed.rows, rows);
    ASSERT_EQ(parsed.diagnostics.size(), 1u);
    EXPECT_EQ(parsed.diagnostics[0].line, 5u);

    std::istringstream bad("quote_date,expiry_date\n");
    EXPECT_THROW((void)biv::parse_results(bad), biv::Error);
}

TEST(Diagnostics, CsvEscapesReasons) {
    std::ostringstream out;
    const std::vector<biv::RowDiagnostic> d{{3, "expected 7 fields, found 4"}, {9, "invalid spot"}};
    biv::write_diagnostics_csv(out, d);
    EXPECT_EQ(out.str(), "line,reason\n3,\"expected 7 fields, found 4\"\n9,invalid spot\n");
}

}  // namespace
