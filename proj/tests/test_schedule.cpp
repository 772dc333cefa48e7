#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "qaus/schedule.hpp"
#include "qaus/spectrum.hpp"

using namespace qaus;

TEST_CASE("runtime formula") {
    // T = N/(eps sqrt(N-1)) atan(sqrt(N-1)); N = 4: 4/(0.01 sqrt3) * pi/3.
    CHECK(total_time(4, 0.01) == doctest::Approx(4.0 / (0.01 * std::sqrt(3.0)) * std::numbers::pi / 3.0));
    for (int n : {2, 6, 10, 16}) {
        const std::size_t dim = std::size_t{1} << n;
        CHECK(oracle::integrated_runtime(dim, 0.01) == doctest::Approx(total_time(dim, 0.01)).epsilon(1e-6));
    }
    CHECK(total_time(std::size_t{1} << 30, 0.01) ==
          doctest::Approx(asymptotic_total_time(std::size_t{1} << 30, 0.01)).epsilon(1e-4));
    CHECK(make_schedule_params(64).epsilon == 0.01);
}

TEST_CASE("exact schedule identities") {
    for (int n : {2, 5, 10, 20, 30}) {
        const ScheduleParams params = make_schedule_params(std::size_t{1} << n, 0.01);
        const double t_total = params.total_time;
        CHECK(s_exact(0.0, params) == 0.0);
        CHECK(s_exact(0.5 * t_total, params) == 0.5);
        CHECK(s_exact(t_total, params) == 1.0);
        for (int i = 1; i < 20; ++i) {
            const double t = t_total * i / 20.0;
            CHECK(s_exact(t, params) + s_exact(t_total - t, params) == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(s_exact(t_total * (1.0 + 1e-12), params) == 1.0);
        CHECK(s_exact(-1e-12 * t_total, params) == 0.0);
        CHECK_THROWS(s_exact(1.01 * t_total, params));
        CHECK_THROWS(s_exact(-0.01 * t_total, params));
    }
}

TEST_CASE("exact schedule obeys ds/dt = eps gap^2") {
    for (int n : {4, 12, 20}) {
        const std::size_t dim = std::size_t{1} << n;
        const Schedule schedule = Schedule::exact(make_schedule_params(dim, 0.01));
        for (int i = 1; i < 50; ++i) {
            const double t = schedule.total_time() * i / 50.0;
            const double d = gap(schedule.value(t), dim);
            const double h = 1e-4 / (0.01 * d);
            const double fd = (schedule.value(t + h) - schedule.value(t - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(0.01 * d * d).epsilon(1e-6));
            CHECK(ds_dt(t, schedule) == doctest::Approx(0.01 * d * d).epsilon(1e-14));
        }
    }
}

TEST_CASE("piecewise schedules interpolate the exact schedule at the knots") {
    const ScheduleParams params = make_schedule_params(256, 0.01);
    for (int k : {1, 2, 3, 4, 7}) {
        const Schedule schedule = Schedule::piecewise(k, params);
        CHECK(schedule.pieces() == k);
        CHECK(schedule.label() == "k" + std::to_string(k));
        CHECK(schedule.knots().size() == static_cast<std::size_t>(k + 1));
        CHECK(schedule.breakpoints().size() == static_cast<std::size_t>(k + 1));
        for (int j = 0; j <= k; ++j) {
            const double t = j * params.total_time / k;
            CHECK(schedule.value(t) == doctest::Approx(s_exact(t, params)).epsilon(1e-14));
        }
        CHECK(schedule.value(0.0) == 0.0);
        CHECK(schedule.value(params.total_time) == 1.0);
    }
    const Schedule ramp = Schedule::piecewise(1, params);
    CHECK(ramp.value(0.25 * params.total_time) == doctest::Approx(0.25));
    CHECK(ramp.slope(0.3) == doctest::Approx(1.0 / params.total_time));
    // k = 2 has its single interior knot at s = 1/2, i.e. it is the same ramp.
    const Schedule two = Schedule::piecewise(2, params);
    CHECK(two.value(0.3 * params.total_time) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(Schedule::exact(params).label() == "exact");
    CHECK(Schedule::exact(params).breakpoints().size() == 2);
    CHECK_THROWS(Schedule::piecewise(0, params));
}

TEST_CASE("3-piece middle slope: T*slope ~ 1/sqrt(N), ds/dt ~ 1/N") {
    auto middle = [](std::size_t dim) {
        const ScheduleParams params = make_schedule_params(dim, 0.01);
        const Schedule schedule = Schedule::piecewise(3, params);
        return std::pair{schedule.slope(0.5 * params.total_time), params.total_time};
    };
    for (int n : {10, 14, 18}) {
        const auto [slope_a, t_a] = middle(std::size_t{1} << n);
        const auto [slope_b, t_b] = middle(std::size_t{1} << (n + 2));
        CHECK((t_b * slope_b) / (t_a * slope_a) == doctest::Approx(0.5).epsilon(0.05));
        CHECK(slope_b / slope_a == doctest::Approx(0.25).epsilon(0.05));
    }
}

TEST_CASE("schedule CSV") {
    const ScheduleParams params = make_schedule_params(1024, 0.01);
    std::ostringstream out;
    write_schedule_csv(out, Schedule::piecewise(3, params));
    const std::string text = out.str();
    CHECK(text.rfind("t,s\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    CHECK(text.back() == '\n');

    std::ostringstream exact;
    write_schedule_csv(exact, Schedule::exact(params), 11);
    const std::string e = exact.str();
    CHECK(std::count(e.begin(), e.end(), '\n') == 12);
    CHECK(e.find("\n0,0\n") != std::string::npos);
}
