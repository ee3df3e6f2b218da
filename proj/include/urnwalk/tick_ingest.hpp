#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace urnwalk {

/// Exact decimal: value = mantissa * 10^-scale, scale >= 0.
struct Decimal {
    std::int64_t mantissa = 0;
    int scale = 0;

    /// Accepts [+-]digits[.digits][e[+-]digits]. Throws DataError otherwise,
    /// or when more than 18 significant digits are needed.
    static Decimal parse(std::string_view text);
    std::string to_string() const;
    double to_double() const;
};

/// Transaction prices s_t and the instrument's minimum price increment.
struct PriceSeries {
    std::vector<Decimal> prices;
    Decimal tick_size{1, 1};  // 0.1
    /// Optional 1-based source row of each price, used in error messages.
    std::vector<std::size_t> source_rows;
};

/// Unit tick movements, each -1 or +1.
struct TickSeries {
    std::vector<std::int8_t> ticks;
};

/// Prices expressed in whole ticks. A price counts as on-grid when
/// |price / tick - round(price / tick)| <= 1e-6; otherwise GridError names
/// its index.
std::vector<std::int64_t> tick_levels(const PriceSeries& series);

/// Splits every price change into |change| / tick unit moves in the
/// direction of the change; unchanged prices emit nothing.
/// Throws DataError for fewer than two prices and GridError off the grid.
TickSeries decompose(const PriceSeries& series);

/// Levels visited by a walk starting at `first_level`: size ticks + 1.
std::vector<std::int64_t> cumulative_levels(std::int64_t first_level, const TickSeries& ticks);

/// level * tick as an exact decimal.
Decimal level_to_price(std::int64_t level, const Decimal& tick);

/// Frequency of the block sum x_N over non-overlapping N-tick blocks.
/// p_mean[j] and p_err[j] refer to position x = -N + 2j.
struct EmpiricalHist {
    int n_block = 0;
    std::vector<double> p_mean;
    std::vector<double> p_err;
    std::size_t n_samples = 0;  // blocks used
    int n_subensembles = 0;

    int position(std::size_t j) const noexcept { return -n_block + 2 * static_cast<int>(j); }
};

/// Position auto-correlation C(n, l) for l = 1..max_lag; values[l-1].
struct EmpiricalAcf {
    int n_base = 0;
    std::vector<double> values;
    std::vector<double> errors;
    std::size_t n_samples = 0;  // windows used
    int n_subensembles = 0;

    int max_lag() const noexcept { return static_cast<int>(values.size()); }
};

/// Histogram of block sums. Blocks are consecutive and disjoint; block b
/// goes to sub-ensemble b mod n_subensembles, and p_err is the spread of the
/// per-sub-ensemble frequencies over sqrt(n_subensembles). A trailing
/// partial block is dropped. Requires at least 2 * n_subensembles blocks.
EmpiricalHist build_histogram(std::span<const std::int8_t> ticks, int n_block,
                              int n_subensembles = 100);

/// Auto-correlation over disjoint windows of n_base + max_lag ticks, with
/// x_n the sum of the first n_base ticks of the window and x_{n+l} the sum of
/// the first n_base + l. Same sub-ensemble scheme and minimum as the histogram.
EmpiricalAcf build_acf(std::span<const std::int8_t> ticks, int n_base, int max_lag,
                       int n_subensembles = 100);

// ---- CSV formats ----------------------------------------------------------

/// One price per row in the first column; a header row is detected when the
/// first field of the first row is not a number. Further columns are ignored.
PriceSeries read_price_csv(std::istream& in, const Decimal& tick_size);

/// One tick per line ("1" or "-1"), no header.
void write_ticks_csv(std::ostream& out, const TickSeries& ticks);
/// Accepts "1", "+1" or "-1" per line; an optional header row.
TickSeries read_ticks_csv(std::istream& in);

/// Columns x,mean,err,n_samples.
void write_hist_csv(std::ostream& out, const EmpiricalHist& hist);
EmpiricalHist read_hist_csv(std::istream& in);

/// Columns lag,mean,err,n_samples. The base step is not part of the file.
void write_acf_csv(std::ostream& out, const EmpiricalAcf& acf);
EmpiricalAcf read_acf_csv(std::istream& in, int n_base);

}  // namespace urnwalk
