#include "qaus/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "qaus/format.hpp"
#include "qaus/spectrum.hpp"

namespace qaus {

double total_time(std::size_t dim, double epsilon) {
    if (dim < 2) {
        throw std::invalid_argument("Hilbert dimension must be at least 2");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("adiabatic rate epsilon must be positive");
    }
    const double n = static_cast<double>(dim);
    const double root = std::sqrt(n - 1.0);
    return n / (epsilon * root) * std::atan(root);
}

double asymptotic_total_time(std::size_t dim, double epsilon) {
    return std::numbers::pi / (2.0 * epsilon) * std::sqrt(static_cast<double>(dim));
}

ScheduleParams make_schedule_params(std::size_t dim, double epsilon) {
    return {dim, epsilon, total_time(dim, epsilon)};
}

namespace {

double clamp_time(double t, double total) {
    const double slack = kScheduleClampFraction * total;
    if (t < -slack || t > total + slack || std::isnan(t)) {
        throw std::domain_error("schedule evaluated outside [0, T]");
    }
    return std::clamp(t, 0.0, total);
}

}  // namespace

double s_exact(double t, const ScheduleParams& params) {
    t = clamp_time(t, params.total_time);
    if (t == 0.0) {
        return 0.0;
    }
    if (t == params.total_time) {
        return 1.0;
    }
    const double root = std::sqrt(static_cast<double>(params.dim) - 1.0);
    const double phase = (2.0 * t / params.total_time - 1.0) * std::atan(root);
    return std::clamp(0.5 + std::tan(phase) / (2.0 * root), 0.0, 1.0);
}

Schedule::Schedule(ScheduleKind kind, ScheduleParams params, std::vector<Knot> knots)
    : kind_(kind), params_(params), knots_(std::move(knots)) {}

Schedule Schedule::exact(const ScheduleParams& params) {
    return Schedule(ScheduleKind::exact, params, {{0.0, 0.0}, {params.total_time, 1.0}});
}

Schedule Schedule::piecewise(int pieces, const ScheduleParams& params) {
    if (pieces < 1) {
        throw std::invalid_argument("piecewise schedule needs at least one segment");
    }
    std::vector<Knot> knots;
    knots.reserve(static_cast<std::size_t>(pieces) + 1);
    for (int j = 0; j <= pieces; ++j) {
        const double t = (j == pieces) ? params.total_time
                                       : params.total_time * static_cast<double>(j) / pieces;
        knots.push_back({t, s_exact(t, params)});
    }
    return Schedule(ScheduleKind::piecewise, params, std::move(knots));
}

std::size_t Schedule::segment(double t) const {
    // First knot strictly after t, minus one; the last segment owns t = T.
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                     [](double value, const Knot& k) { return value < k.t; });
    const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, knots_.size() - 2);
}

double Schedule::value(double t) const {
    if (kind_ == ScheduleKind::exact) {
        return s_exact(t, params_);
    }
    t = clamp_time(t, params_.total_time);
    const std::size_t seg = segment(t);
    const Knot& a = knots_[seg];
    const Knot& b = knots_[seg + 1];
    if (t == a.t) {
        return a.s;
    }
    if (t == b.t) {
        return b.s;
    }
    return a.s + (b.s - a.s) * (t - a.t) / (b.t - a.t);
}

double Schedule::slope(double t) const {
    if (kind_ == ScheduleKind::exact) {
        const double delta = gap(s_exact(t, params_), params_.dim);
        return params_.epsilon * delta * delta;
    }
    t = clamp_time(t, params_.total_time);
    const std::size_t seg = segment(t);
    const Knot& a = knots_[seg];
    const Knot& b = knots_[seg + 1];
    return (b.s - a.s) / (b.t - a.t);
}

std::vector<double> Schedule::breakpoints() const {
    std::vector<double> out;
    out.reserve(knots_.size());
    for (const auto& k : knots_) {
        out.push_back(k.t);
    }
    return out;
}

std::string Schedule::label() const {
    return kind_ == ScheduleKind::exact ? "exact" : "k" + std::to_string(pieces());
}

Schedule piecewise_schedule(int pieces, const ScheduleParams& params) {
    return Schedule::piecewise(pieces, params);
}

double ds_dt(double t, const Schedule& schedule) { return schedule.slope(t); }

void write_schedule_csv(std::ostream& out, const Schedule& schedule, std::size_t samples) {
    out << "t,s\n";
    if (schedule.kind() == ScheduleKind::piecewise) {
        for (const auto& k : schedule.knots()) {
            out << format_double(k.t) << ',' << format_double(k.s) << '\n';
        }
        return;
    }
    samples = std::max<std::size_t>(samples, 2);
    const double total = schedule.total_time();
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = (i + 1 == samples) ? total : total * static_cast<double>(i) / (samples - 1);
        out << format_double(t) << ',' << format_double(schedule.value(t)) << '\n';
    }
}

}  // namespace qaus
