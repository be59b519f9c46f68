#include "qsb/data/ohlc.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace qsb::data {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
            field.pop_back();
        }
        std::size_t start = 0;
        while (start < field.size() && field[start] == ' ') {
            ++start;
        }
        fields.push_back(field.substr(start));
    }
    return fields;
}

double parse_price(const std::string& text, long line_number) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("non-numeric price '" + text + "'", line_number);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite price", line_number);
    }
    return value;
}

bool looks_like_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
        return false;
    }
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

OhlcSeries load_ohlc_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    std::string line;
    long line_number = 0;
    if (!std::getline(in, line)) {
        throw DataError("empty file: " + path);
    }
    ++line_number;
    {
        const auto header = split_csv_line(line);
        const std::vector<std::string> expected = {"Date", "Open", "High", "Low",
                                                   "Close"};
        if (header != expected) {
            throw ParseError("expected header Date,Open,High,Low,Close", line_number);
        }
    }

    struct Row {
        std::string date;
        double o, h, l, c;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()),
                             line_number);
        }
        if (!looks_like_iso_date(fields[0])) {
            throw ParseError("expected ISO date, got '" + fields[0] + "'", line_number);
        }
        rows.push_back({fields[0], parse_price(fields[1], line_number),
                        parse_price(fields[2], line_number),
                        parse_price(fields[3], line_number),
                        parse_price(fields[4], line_number)});
    }
    if (rows.empty()) {
        throw DataError("no data rows in " + path);
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].date == rows[i - 1].date) {
            throw DataError("duplicate date " + rows[i].date);
        }
    }
    OhlcSeries series;
    series.dates.reserve(rows.size());
    for (const auto& r : rows) {
        series.dates.push_back(r.date);
        series.open.push_back(r.o);
        series.high.push_back(r.h);
        series.low.push_back(r.l);
        series.close.push_back(r.c);
    }
    return series;
}

void save_ohlc_csv(const OhlcSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path);
    }
    out << "Date,Open,High,Low,Close\n";
    char buf[128];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g,%.10g,%.10g\n",
                      series.dates[i].c_str(), series.open[i], series.high[i],
                      series.low[i], series.close[i]);
        out << buf;
    }
}

namespace {

class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    // Box-Muller on hand-rolled uniforms; bit-stable across platforms.
    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) {
            u1 = unit();
        }
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::string iso_date_for_day(int day_index) {
    using namespace std::chrono;
    const sys_days start = sys_days{year{2000} / January / 1};
    const year_month_day ymd{start + days{day_index}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

} // namespace

OhlcSeries synth_ohlc(std::uint64_t seed, int n_days, const SynthParams& params) {
    if (n_days < 10) {
        throw ConfigError("synthetic series needs at least 10 days");
    }
    GaussianSource noise(seed);
    OhlcSeries series;
    series.dates.reserve(static_cast<std::size_t>(n_days));
    double walk = 0.0;
    double prev_close = params.base_price;
    for (int d = 0; d < n_days; ++d) {
        walk += params.drift + params.noise_sigma * noise.next();
        const double cycle =
            1.0 + params.sin_amplitude *
                      std::sin(2.0 * std::numbers::pi * static_cast<double>(d) /
                               params.sin_period);
        const double close = params.base_price * cycle * std::exp(walk);
        const double open = d == 0 ? params.base_price : prev_close;
        const double hi_spread = std::abs(noise.next()) * params.spread_sigma;
        const double lo_spread = std::abs(noise.next()) * params.spread_sigma;
        series.dates.push_back(iso_date_for_day(d));
        series.open.push_back(open);
        series.high.push_back(std::max(open, close) * (1.0 + hi_spread));
        series.low.push_back(std::min(open, close) * (1.0 - lo_spread));
        series.close.push_back(close);
        prev_close = close;
    }
    return series;
}

} // namespace qsb::data
