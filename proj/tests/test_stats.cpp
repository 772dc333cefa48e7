#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qaus/stats.hpp"

using namespace qaus;

TEST_CASE("median of odd and even samples") {
    CHECK(median(std::vector<double>{3.0, 1.0, 2.0}) == 2.0);
    CHECK(median(std::vector<double>{4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK(median(std::vector<double>{7.0}) == 7.0);
    CHECK_THROWS(median(std::vector<double>{}));
}

TEST_CASE("bootstrap of a constant sample has zero spread") {
    const std::vector<double> sample(51, 0.3);
    const BootstrapEstimate est = bootstrap_median(sample, 200, 1);
    CHECK(est.mean_of_medians == 0.3);
    CHECK(est.std_of_medians <= 1e-12);
    CHECK(est.error_bar <= 1e-12);
    CHECK(est.resamples == 200);
    CHECK(est.sample_size == 51);
}

TEST_CASE("bootstrap is deterministic and ignores input order") {
    std::mt19937_64 rng(4);
    std::exponential_distribution<double> dist(1.0);
    std::vector<double> sample(101);
    for (double& x : sample) {
        x = dist(rng);
    }
    const BootstrapEstimate a = bootstrap_median(sample, 500, 42);
    std::vector<double> shuffled = sample;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const BootstrapEstimate b = bootstrap_median(shuffled, 500, 42);
    CHECK(a.mean_of_medians == b.mean_of_medians);
    CHECK(a.std_of_medians == b.std_of_medians);
    CHECK(a.error_bar == 2.0 * a.std_of_medians);
    const BootstrapEstimate c = bootstrap_median(sample, 500, 43);
    CHECK(a.mean_of_medians != c.mean_of_medians);
    CHECK_THROWS(bootstrap_median(sample, 0, 1));
    CHECK_THROWS(bootstrap_median(std::vector<double>{}, 10, 1));
}

TEST_CASE("bootstrap spread matches the asymptotic median standard error") {
    // For Exp(1), median ln 2 with density 1/2 there: se = 1 / (2 f sqrt(n)) = 1/sqrt(n).
    std::mt19937_64 rng(17);
    std::exponential_distribution<double> dist(1.0);
    std::vector<double> sample(2000);
    for (double& x : sample) {
        x = dist(rng);
    }
    const BootstrapEstimate est = bootstrap_median(sample, 2000, 9);
    CHECK(est.mean_of_medians == doctest::Approx(std::log(2.0)).epsilon(0.1));
    CHECK(est.std_of_medians == doctest::Approx(1.0 / std::sqrt(2000.0)).epsilon(0.3));
}
