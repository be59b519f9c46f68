#pragma once

#include "qsb/data/ohlc.hpp"
#include "qsb/matrix.hpp"

#include <array>

namespace qsb::data {

/// One rolling window: 5 days x OHLC, min-max normalized, plus the target
/// (next-day close under the same scale) and the scale itself for
/// denormalization. The target may fall outside [0,1]; features cannot.
struct WindowSample {
    std::array<double, 20> features{};
    double target = 0.0;
    double scale_min = 0.0;
    double scale_max = 1.0;
};

/// Joint: one min/max over all 20 values of the window (default; keeps one
/// scale for the target). PerChannel: min/max per OHLC column, target
/// scaled by the close channel.
enum class NormalizationMode { Joint, PerChannel };

/// Window t covers rows [t, t+seq_len-1], target close[t+seq_len]; yields
/// size(series) - seq_len windows. A flat window (max == min) maps to all
/// 0.5 with scale (min, min+1).
std::vector<WindowSample> make_windows(const OhlcSeries& series, int seq_len = 5,
                                       NormalizationMode mode = NormalizationMode::Joint);

struct Dataset {
    std::vector<WindowSample> train;
    std::vector<WindowSample> test;
};

/// Chronological split with |train| = floor(0.8 N).
Dataset split_80_20(std::vector<WindowSample> windows);

double denormalize(double value, const WindowSample& sample);

/// Stacks window features into a B x 20 matrix for batched execution.
Matrix feature_matrix(std::span<const WindowSample> samples);

} // namespace qsb::data
