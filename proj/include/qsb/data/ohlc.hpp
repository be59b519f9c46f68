#pragma once

#include "qsb/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsb::data {

/// Daily OHLC price series with strictly increasing ISO dates.
struct OhlcSeries {
    std::vector<std::string> dates;
    std::vector<double> open;
    std::vector<double> high;
    std::vector<double> low;
    std::vector<double> close;

    std::size_t size() const { return dates.size(); }
};

/// Parses `Date,Open,High,Low,Close` CSV (header required, ISO dates,
/// decimal-point prices), sorts by date, rejects duplicate dates.
OhlcSeries load_ohlc_csv(const std::string& path);

/// Writes the series back out in the same format.
void save_ohlc_csv(const OhlcSeries& series, const std::string& path);

struct SynthParams {
    double base_price = 1.10;
    double sin_amplitude = 0.04;
    double sin_period = 40.0;
    double noise_sigma = 0.002;
    double drift = 0.0;
    double spread_sigma = 0.0015;
};

/// Deterministic sinusoid-plus-noise series: the close follows
/// base * (1 + A sin(2 pi d / T)) * exp(random walk), open is the previous
/// close, high/low bracket them with seeded spreads. Prices stay positive.
OhlcSeries synth_ohlc(std::uint64_t seed, int n_days, const SynthParams& params = {});

} // namespace qsb::data
