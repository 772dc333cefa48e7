#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace qaus {

/// Locally adiabatic rate constant and the runtime it implies.
struct ScheduleParams {
    std::size_t dim = 4;
    double epsilon = 0.01;
    double total_time = 0.0;
};

/// N / (eps sqrt(N-1)) * atan(sqrt(N-1)).
double total_time(std::size_t dim, double epsilon);
/// Large-N form (pi / 2 eps) sqrt(N).
double asymptotic_total_time(std::size_t dim, double epsilon);
ScheduleParams make_schedule_params(std::size_t dim, double epsilon = 0.01);

/// Overshoot past either end of [0, T] tolerated (and clamped) as a fraction of T.
inline constexpr double kScheduleClampFraction = 1e-9;

/// Roland-Cerf schedule solving ds/dt = eps * gap(s)^2 with s(0) = 0, s(T) = 1.
double s_exact(double t, const ScheduleParams& params);

enum class ScheduleKind { exact, piecewise };

struct Knot {
    double t;
    double s;
};

class Schedule {
public:
    static Schedule exact(const ScheduleParams& params);
    /// k linear segments through the exact schedule at t_j = j T / k.
    static Schedule piecewise(int pieces, const ScheduleParams& params);

    ScheduleKind kind() const { return kind_; }
    const ScheduleParams& params() const { return params_; }
    double total_time() const { return params_.total_time; }
    int pieces() const { return static_cast<int>(knots_.size()) - 1; }
    const std::vector<Knot>& knots() const { return knots_; }

    double value(double t) const;
    /// ds/dt; for piecewise schedules the right-segment slope at interior knots.
    double slope(double t) const;
    /// Times at which an integrator should restart: {0, T} or all knot times.
    std::vector<double> breakpoints() const;
    /// "exact" or "k<pieces>".
    std::string label() const;

private:
    Schedule(ScheduleKind kind, ScheduleParams params, std::vector<Knot> knots);
    std::size_t segment(double t) const;

    ScheduleKind kind_;
    ScheduleParams params_;
    std::vector<Knot> knots_;
};

Schedule piecewise_schedule(int pieces, const ScheduleParams& params);
double ds_dt(double t, const Schedule& schedule);

/// Writes "t,s" rows: the knots for piecewise schedules, `samples` uniform points for the exact one.
void write_schedule_csv(std::ostream& out, const Schedule& schedule, std::size_t samples = 401);

}  // namespace qaus
