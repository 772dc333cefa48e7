#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace qaus {

/// Step-size control for the embedded Runge-Kutta-Fehlberg 4(5) pair.
struct StepControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-2;
    double max_step = 5.0;
    double min_step = 1e-10;
    double safety = 0.9;
    double max_growth = 5.0;
    double min_shrink = 0.1;
    std::int64_t max_steps = 100'000'000;

    void validate() const {
        if (!(rel_tol > 0.0 && abs_tol > 0.0)) {
            throw std::invalid_argument("integrator tolerances must be positive");
        }
        if (!(min_step > 0.0 && min_step < max_step && initial_step > 0.0)) {
            throw std::invalid_argument("integrator step bounds must satisfy 0 < min_step < max_step");
        }
        if (!(safety > 0.0 && safety <= 1.0 && max_growth > 1.0 && min_shrink > 0.0 && min_shrink < 1.0)) {
            throw std::invalid_argument("invalid step-size controller factors");
        }
    }
};

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
    bool underflow = false;
    bool step_limit = false;

    bool ok() const { return !underflow && !step_limit; }
};

namespace fehlberg {
inline constexpr double c2 = 1.0 / 4.0, c3 = 3.0 / 8.0, c4 = 12.0 / 13.0, c6 = 1.0 / 2.0;
inline constexpr double a21 = 1.0 / 4.0;
inline constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
inline constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0, a43 = 7296.0 / 2197.0;
inline constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0, a54 = -845.0 / 4104.0;
inline constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0, a64 = 1859.0 / 4104.0,
                        a65 = -11.0 / 40.0;
// Fifth-order weights.
inline constexpr double b1 = 16.0 / 135.0, b3 = 6656.0 / 12825.0, b4 = 28561.0 / 56430.0, b5 = -9.0 / 50.0,
                        b6 = 2.0 / 55.0;
// Fifth minus fourth order.
inline constexpr double e1 = 1.0 / 360.0, e3 = -128.0 / 4275.0, e4 = -2197.0 / 75240.0, e5 = 1.0 / 50.0,
                        e6 = 2.0 / 55.0;
}  // namespace fehlberg

/// Adaptive RKF45 integration of dy/dt = rhs(t, y) from t0 to t1, landing exactly on t1.
/// `step` carries the proposed step size in and out so consecutive segments can chain.
/// The fifth-order solution is propagated; the embedded difference drives the controller.
template <class Vec, class Rhs>
void rkf45_integrate(Rhs&& rhs, Vec& y, double t0, double t1, const StepControl& control, double& step,
                     StepStats& stats) {
    using namespace fehlberg;
    if (!(t1 > t0)) {
        return;
    }
    const auto dim = y.size();
    Vec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), stage(dim), err(dim);

    double t = t0;
    double h = std::clamp(step, control.min_step, control.max_step);
    while (t < t1) {
        if (stats.accepted + stats.rejected >= control.max_steps) {
            stats.step_limit = true;
            return;
        }
        bool last = false;
        if (t + h >= t1 || (t1 - t - h) < 1e-12 * (t1 - t0)) {
            h = t1 - t;
            last = true;
        }

        rhs(t, y, k1);
        stage = y + h * a21 * k1;
        rhs(t + c2 * h, stage, k2);
        stage = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, stage, k3);
        stage = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, stage, k4);
        stage = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + h, stage, k5);
        stage = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + c6 * h, stage, k6);

        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6);
        const double scale = std::max(control.abs_tol, control.rel_tol * y.norm());
        const double ratio = err.norm() / scale;

        double factor = (ratio == 0.0) ? control.max_growth : control.safety * std::pow(ratio, -0.2);
        factor = std::clamp(factor, control.min_shrink, control.max_growth);

        if (ratio <= 1.0) {
            y += h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            t = last ? t1 : t + h;
            ++stats.accepted;
            h = std::min(h * factor, control.max_step);
            if (last) {
                // Keep a usable proposal for the next segment rather than the truncated step.
                step = std::max(h, step);
                step = std::min(step, control.max_step);
                return;
            }
        } else {
            ++stats.rejected;
            h *= std::min(factor, 1.0);
            if (h < control.min_step) {
                stats.underflow = true;
                return;
            }
        }
        step = h;
    }
}

}  // namespace qaus
