#include "qaus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace qaus {

namespace {

double median_in_place(std::vector<double>& v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

double median(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median of an empty sample");
    }
    std::vector<double> copy(values.begin(), values.end());
    return median_in_place(copy);
}

BootstrapEstimate bootstrap_median(std::span<const double> values, int resamples, std::uint64_t seed) {
    if (values.empty()) {
        throw std::invalid_argument("bootstrap of an empty sample");
    }
    if (resamples < 1) {
        throw std::invalid_argument("bootstrap needs at least one resample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
    std::vector<double> draw(sorted.size());
    std::vector<double> medians;
    medians.reserve(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        for (auto& x : draw) {
            x = sorted[pick(rng)];
        }
        medians.push_back(median_in_place(draw));
    }

    double mean = 0.0;
    for (double m : medians) {
        mean += m;
    }
    mean /= static_cast<double>(medians.size());
    double var = 0.0;
    for (double m : medians) {
        var += (m - mean) * (m - mean);
    }
    var = medians.size() > 1 ? var / static_cast<double>(medians.size() - 1) : 0.0;

    BootstrapEstimate out;
    out.mean_of_medians = std::clamp(mean, sorted.front(), sorted.back());
    out.std_of_medians = std::sqrt(var);
    out.error_bar = 2.0 * out.std_of_medians;
    out.resamples = resamples;
    out.sample_size = sorted.size();
    return out;
}

}  // namespace qaus
