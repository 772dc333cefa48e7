#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace qaus {

struct BootstrapEstimate {
    double mean_of_medians = 0.0;
    double std_of_medians = 0.0;
    /// Two standard deviations of the resampled medians.
    double error_bar = 0.0;
    int resamples = 0;
    std::size_t sample_size = 0;
};

/// Midpoint of the two central order statistics for even counts.
double median(std::span<const double> values);

/// Resamples `values` with replacement `resamples` times and summarizes the medians.
/// Resampling indices address the sorted input, so the result is independent of input order.
BootstrapEstimate bootstrap_median(std::span<const double> values, int resamples, std::uint64_t seed);

}  // namespace qaus
