#include "urnwalk/tick_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "urnwalk/error.hpp"
#include "urnwalk/io.hpp"
#include "urnwalk/stats.hpp"

namespace urnwalk {

namespace {

__extension__ typedef __int128 i128;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return s;
}

std::string_view first_field(std::string_view line) {
    return trim(line.substr(0, line.find(',')));
}

i128 pow10(int k) {
    i128 r = 1;
    for (int i = 0; i < k; ++i) r *= 10;
    return r;
}

bool try_parse(std::string_view text, Decimal& out) {
    try {
        out = Decimal::parse(text);
        return true;
    } catch (const DataError&) {
        return false;
    }
}

std::string row_label(const PriceSeries& series, std::size_t index) {
    std::string label = "price index " + std::to_string(index);
    if (index < series.source_rows.size()) {
        label += " (row " + std::to_string(series.source_rows[index]) + ")";
    }
    return label;
}

void check_subensembles(int n_subensembles) {
    if (n_subensembles < 1) throw ParameterError("n_subensembles must be >= 1");
}

// Splits a CSV into trimmed first fields, skipping blank lines; returns the
// 1-based line number of each.
struct Rows {
    std::vector<std::string> fields;
    std::vector<std::size_t> lines;
};

Rows read_first_fields(std::istream& in) {
    Rows rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto field = first_field(line);
        if (field.empty() && trim(line).empty()) continue;
        rows.fields.emplace_back(field);
        rows.lines.push_back(lineno);
    }
    return rows;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

// ---- Decimal ----------------------------------------------------------------

Decimal Decimal::parse(std::string_view text) {
    const std::string_view original = text;
    text = trim(text);
    auto fail = [&](const char* why) {
        return DataError("not a decimal number (" + std::string(why) + "): '" + std::string(original) + "'");
    };
    if (text.empty()) throw fail("empty");

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string digits;
    int frac_digits = 0;
    bool seen_point = false;
    bool any_digit = false;
    std::size_t i = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            any_digit = true;
            if (!(digits.empty() && c == '0')) digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail("no digits");
    int exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') throw fail("unexpected character");
        auto exp_text = text.substr(i + 1);
        if (!parse_number(exp_text, exponent)) throw fail("bad exponent");
    }

    int scale = frac_digits - exponent;
    // Normalize: drop trailing zeros while the scale is positive.
    while (scale > 0 && !digits.empty() && digits.back() == '0') {
        digits.pop_back();
        --scale;
    }
    if (digits.empty()) return Decimal{0, 0};
    if (scale < 0) {
        digits.append(static_cast<std::size_t>(-scale), '0');
        scale = 0;
    }
    if (digits.size() > 18) throw fail("too many significant digits");
    std::int64_t mantissa = 0;
    std::from_chars(digits.data(), digits.data() + digits.size(), mantissa);
    return Decimal{negative ? -mantissa : mantissa, scale};
}

std::string Decimal::to_string() const {
    std::string digits = std::to_string(mantissa < 0 ? -mantissa : mantissa);
    if (scale > 0) {
        if (digits.size() <= static_cast<std::size_t>(scale)) {
            digits.insert(0, static_cast<std::size_t>(scale) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(scale), ".");
    }
    return mantissa < 0 ? "-" + digits : digits;
}

double Decimal::to_double() const {
    return static_cast<double>(mantissa) / std::pow(10.0, scale);
}

// ---- Decomposition ------------------------------------------------------------

std::vector<std::int64_t> tick_levels(const PriceSeries& series) {
    const Decimal& tick = series.tick_size;
    if (tick.mantissa <= 0) throw ParameterError("tick size must be positive");

    std::vector<std::int64_t> levels;
    levels.reserve(series.prices.size());
    for (std::size_t idx = 0; idx < series.prices.size(); ++idx) {
        const Decimal& p = series.prices[idx];
        const int common = std::max(p.scale, tick.scale);
        const i128 price = static_cast<i128>(p.mantissa) * pow10(common - p.scale);
        const i128 step = static_cast<i128>(tick.mantissa) * pow10(common - tick.scale);

        i128 level = price / step;
        i128 rem = price - level * step;
        // Round to nearest.
        if (2 * (rem < 0 ? -rem : rem) > step) {
            level += rem < 0 ? -1 : 1;
            rem = price - level * step;
        }
        const i128 abs_rem = rem < 0 ? -rem : rem;
        if (abs_rem * 1000000 > step) {
            throw GridError(row_label(series, idx) + ": price " + p.to_string() +
                                " is not a multiple of tick size " + tick.to_string(),
                            idx);
        }
        levels.push_back(static_cast<std::int64_t>(level));
    }
    return levels;
}

TickSeries decompose(const PriceSeries& series) {
    if (series.prices.size() < 2) {
        throw DataError("decompose: need at least 2 prices, got " + std::to_string(series.prices.size()));
    }
    const auto levels = tick_levels(series);
    TickSeries out;
    for (std::size_t t = 1; t < levels.size(); ++t) {
        const std::int64_t diff = levels[t] - levels[t - 1];
        const std::int8_t sign = diff > 0 ? 1 : -1;
        for (std::int64_t k = 0; k < (diff < 0 ? -diff : diff); ++k) out.ticks.push_back(sign);
    }
    return out;
}

std::vector<std::int64_t> cumulative_levels(std::int64_t first_level, const TickSeries& ticks) {
    std::vector<std::int64_t> out;
    out.reserve(ticks.ticks.size() + 1);
    out.push_back(first_level);
    for (auto t : ticks.ticks) out.push_back(out.back() + t);
    return out;
}

Decimal level_to_price(std::int64_t level, const Decimal& tick) {
    return Decimal{level * tick.mantissa, tick.scale};
}

// ---- Empirical statistics -------------------------------------------------------

EmpiricalHist build_histogram(std::span<const std::int8_t> ticks, int n_block, int n_subensembles) {
    if (n_block < 1) throw ParameterError("build_histogram: n_block must be >= 1");
    check_subensembles(n_subensembles);
    const auto block = static_cast<std::size_t>(n_block);
    const auto subs = static_cast<std::size_t>(n_subensembles);
    const std::size_t needed = block * subs * 2;
    if (ticks.size() < needed) {
        throw DataError("build_histogram: need at least " + std::to_string(needed) + " ticks (" +
                        std::to_string(2 * subs) + " blocks of " + std::to_string(block) +
                        "), got " + std::to_string(ticks.size()));
    }

    const std::size_t n_blocks = ticks.size() / block;
    const std::size_t bins = block + 1;
    std::vector<std::size_t> counts(subs * bins, 0);
    std::vector<std::size_t> blocks_per_sub(subs, 0);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        int x = 0;
        for (std::size_t i = b * block; i < (b + 1) * block; ++i) x += ticks[i];
        const std::size_t s = b % subs;
        ++counts[s * bins + static_cast<std::size_t>((x + n_block) / 2)];
        ++blocks_per_sub[s];
    }

    EmpiricalHist hist;
    hist.n_block = n_block;
    hist.n_samples = n_blocks;
    hist.n_subensembles = n_subensembles;
    hist.p_mean.resize(bins);
    hist.p_err.resize(bins);
    std::vector<double> freq(subs);
    for (std::size_t j = 0; j < bins; ++j) {
        std::size_t total = 0;
        for (std::size_t s = 0; s < subs; ++s) {
            total += counts[s * bins + j];
            freq[s] = static_cast<double>(counts[s * bins + j]) / static_cast<double>(blocks_per_sub[s]);
        }
        hist.p_mean[j] = static_cast<double>(total) / static_cast<double>(n_blocks);
        hist.p_err[j] = subensemble_error(freq);
    }
    return hist;
}

EmpiricalAcf build_acf(std::span<const std::int8_t> ticks, int n_base, int max_lag, int n_subensembles) {
    if (n_base < 1 || max_lag < 1) throw ParameterError("build_acf: n_base and max_lag must be >= 1");
    check_subensembles(n_subensembles);
    const auto window = static_cast<std::size_t>(n_base + max_lag);
    const auto subs = static_cast<std::size_t>(n_subensembles);
    const std::size_t needed = window * subs * 2;
    if (ticks.size() < needed) {
        throw DataError("build_acf: need at least " + std::to_string(needed) + " ticks (" +
                        std::to_string(2 * subs) + " windows of " + std::to_string(window) +
                        "), got " + std::to_string(ticks.size()));
    }

    const std::size_t n_windows = ticks.size() / window;
    const auto lags = static_cast<std::size_t>(max_lag);
    // Per sub-ensemble and lag: sums of x_n x_{n+l} and x_{n+l}^2; per sub: sum of x_n^2.
    std::vector<long double> cross(subs * lags, 0), far_sq(subs * lags, 0), near_sq(subs, 0);
    for (std::size_t w = 0; w < n_windows; ++w) {
        const std::size_t s = w % subs;
        const std::int8_t* t = ticks.data() + w * window;
        long double x = 0;
        for (int i = 0; i < n_base; ++i) x += t[i];
        const long double xn = x;
        near_sq[s] += xn * xn;
        for (std::size_t l = 0; l < lags; ++l) {
            x += t[static_cast<std::size_t>(n_base) + l];
            cross[s * lags + l] += xn * x;
            far_sq[s * lags + l] += x * x;
        }
    }

    long double near_total = 0;
    for (auto v : near_sq) near_total += v;

    EmpiricalAcf acf;
    acf.n_base = n_base;
    acf.n_samples = n_windows;
    acf.n_subensembles = n_subensembles;
    std::vector<double> per_sub(subs);
    for (std::size_t l = 0; l < lags; ++l) {
        long double cross_total = 0, far_total = 0;
        for (std::size_t s = 0; s < subs; ++s) {
            const long double den = near_sq[s] * far_sq[s * lags + l];
            if (den <= 0) {
                throw DataError("build_acf: degenerate data, <x_n^2> or <x_{n+l}^2> is zero in a sub-ensemble");
            }
            per_sub[s] = static_cast<double>(cross[s * lags + l] / std::sqrt(den));
            cross_total += cross[s * lags + l];
            far_total += far_sq[s * lags + l];
        }
        acf.values.push_back(static_cast<double>(cross_total / std::sqrt(near_total * far_total)));
        acf.errors.push_back(subensemble_error(per_sub));
    }
    return acf;
}

// ---- CSV --------------------------------------------------------------------------

PriceSeries read_price_csv(std::istream& in, const Decimal& tick_size) {
    PriceSeries series;
    series.tick_size = tick_size;
    const Rows rows = read_first_fields(in);
    for (std::size_t r = 0; r < rows.fields.size(); ++r) {
        Decimal value;
        if (!try_parse(rows.fields[r], value)) {
            if (r == 0) continue;  // header
            throw DataError("row " + std::to_string(rows.lines[r]) + ": cannot parse price '" +
                            rows.fields[r] + "'");
        }
        series.prices.push_back(value);
        series.source_rows.push_back(rows.lines[r]);
    }
    return series;
}

void write_ticks_csv(std::ostream& out, const TickSeries& ticks) {
    for (auto t : ticks.ticks) out << (t > 0 ? "1\n" : "-1\n");
}

TickSeries read_ticks_csv(std::istream& in) {
    TickSeries out;
    const Rows rows = read_first_fields(in);
    for (std::size_t r = 0; r < rows.fields.size(); ++r) {
        int value = 0;
        if (!parse_number(rows.fields[r], value)) {
            if (r == 0) continue;
            throw DataError("row " + std::to_string(rows.lines[r]) + ": cannot parse tick '" +
                            rows.fields[r] + "'");
        }
        if (value != 1 && value != -1) {
            throw DataError("row " + std::to_string(rows.lines[r]) + ": tick must be +1 or -1, got " +
                            rows.fields[r]);
        }
        out.ticks.push_back(static_cast<std::int8_t>(value));
    }
    return out;
}

void write_hist_csv(std::ostream& out, const EmpiricalHist& hist) {
    out << "x,mean,err,n_samples\n";
    for (std::size_t j = 0; j < hist.p_mean.size(); ++j) {
        out << hist.position(j) << ',' << io::format_double(hist.p_mean[j]) << ','
            << io::format_double(hist.p_err[j]) << ',' << hist.n_samples << '\n';
    }
}

namespace {

struct StatRow {
    long long key;
    double mean, err;
    std::size_t n_samples;
};

std::vector<StatRow> read_stat_rows(std::istream& in, const char* what) {
    std::vector<StatRow> rows;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        StatRow row{};
        const bool ok = fields.size() >= 4 && parse_number(fields[0], row.key) &&
                        parse_number(fields[1], row.mean) && parse_number(fields[2], row.err) &&
                        parse_number(fields[3], row.n_samples);
        if (!ok) {
            if (first) {
                first = false;
                continue;
            }
            throw DataError(std::string(what) + " CSV row " + std::to_string(lineno) +
                            ": expected 4 numeric columns");
        }
        first = false;
        if (row.err < 0) throw DataError(std::string(what) + " CSV row " + std::to_string(lineno) + ": negative error");
        rows.push_back(row);
    }
    if (rows.empty()) throw DataError(std::string(what) + " CSV has no data rows");
    return rows;
}

}  // namespace

EmpiricalHist read_hist_csv(std::istream& in) {
    auto rows = read_stat_rows(in, "histogram");
    std::sort(rows.begin(), rows.end(), [](const StatRow& a, const StatRow& b) { return a.key < b.key; });
    const long long n = -rows.front().key;
    if (n < 1 || rows.back().key != n || rows.size() != static_cast<std::size_t>(n) + 1) {
        throw DataError("histogram CSV must list every position -N, -N+2, ..., N exactly once");
    }
    EmpiricalHist hist;
    hist.n_block = static_cast<int>(n);
    hist.n_samples = rows.front().n_samples;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].key != hist.position(j)) {
            throw DataError("histogram CSV must list every position -N, -N+2, ..., N exactly once");
        }
        hist.p_mean.push_back(rows[j].mean);
        hist.p_err.push_back(rows[j].err);
    }
    return hist;
}

void write_acf_csv(std::ostream& out, const EmpiricalAcf& acf) {
    out << "lag,mean,err,n_samples\n";
    for (std::size_t l = 0; l < acf.values.size(); ++l) {
        out << l + 1 << ',' << io::format_double(acf.values[l]) << ','
            << io::format_double(acf.errors[l]) << ',' << acf.n_samples << '\n';
    }
}

EmpiricalAcf read_acf_csv(std::istream& in, int n_base) {
    if (n_base < 1) throw ParameterError("read_acf_csv: n_base must be >= 1");
    auto rows = read_stat_rows(in, "ACF");
    std::sort(rows.begin(), rows.end(), [](const StatRow& a, const StatRow& b) { return a.key < b.key; });
    EmpiricalAcf acf;
    acf.n_base = n_base;
    acf.n_samples = rows.front().n_samples;
    for (std::size_t l = 0; l < rows.size(); ++l) {
        if (rows[l].key != static_cast<long long>(l) + 1) {
            throw DataError("ACF CSV must list lags 1..L exactly once");
        }
        acf.values.push_back(rows[l].mean);
        acf.errors.push_back(rows[l].err);
    }
    return acf;
}

}  // namespace urnwalk
