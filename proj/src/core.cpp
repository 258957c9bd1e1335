#include "csp/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace csp {

namespace {

// Slack for comparing derived quantities (magnitudes after rotation, ratios)
// against declared bounds.
constexpr double kBoundSlack = 1e-12;

bool exceeds(double value, double limit) {
    return value > limit * (1.0 + kBoundSlack) + std::numeric_limits<double>::min();
}

bool below(double value, double limit) { return value < limit * (1.0 - kBoundSlack); }

std::string violation(const char* what, int id) {
    return std::string(what) + ": demand " + std::to_string(id);
}

}  // namespace

CapacityProfile::CapacityProfile(std::vector<double> capacities)
    : values_(std::move(capacities)) {}

double CapacityProfile::at(int t) const {
    if (t < 1 || t > horizon()) {
        throw std::out_of_range("slot " + std::to_string(t) + " outside horizon 1.." +
                                std::to_string(horizon()));
    }
    return values_[static_cast<std::size_t>(t - 1)];
}

double CapacityProfile::min() const {
    if (values_.empty()) return 0.0;
    return *std::min_element(values_.begin(), values_.end());
}

double CapacityProfile::min_over(SlotInterval interval) const {
    double lo = std::numeric_limits<double>::infinity();
    for (int t = interval.first; t <= interval.last; ++t) lo = std::min(lo, at(t));
    return lo;
}

SystemBounds SystemBounds::from_demands(std::span<const Demand> demands,
                                        double theta_override) {
    SystemBounds b;
    double a_lo = std::numeric_limits<double>::infinity();
    double a_hi = 0.0;
    double u_lo = std::numeric_limits<double>::infinity();
    double u_hi = 0.0;
    int t_hi = 1;
    for (const auto& d : demands) {
        const double mag = d.magnitude();
        if (mag > 0.0 && d.utility > 0.0) {
            a_lo = std::min(a_lo, mag / d.utility);
            a_hi = std::max(a_hi, mag / d.utility);
        }
        if (d.utility > 0.0) {
            u_lo = std::min(u_lo, d.utility);
            u_hi = std::max(u_hi, d.utility);
        }
        t_hi = std::max(t_hi, d.interval.length());
    }
    if (a_hi > 0.0) {
        b.a_min = a_lo;
        b.a_max = a_hi;
    }
    if (u_hi > 0.0) {
        b.u_min = u_lo;
        b.u_max = u_hi;
    }
    b.t_max = t_hi;
    b.theta = theta_override >= 0.0 ? theta_override : phase_spread(demands);
    return b;
}

void canonical_rotation(std::span<Demand> demands) {
    double min_arg = std::numeric_limits<double>::infinity();
    for (const auto& d : demands) {
        if (d.magnitude() > 0.0) min_arg = std::min(min_arg, std::arg(d.power));
    }
    if (!std::isfinite(min_arg) || min_arg == 0.0) return;
    const ComplexPower rot = std::polar(1.0, -min_arg);
    for (auto& d : demands) {
        const double mag = d.magnitude();
        if (mag == 0.0) continue;
        const double phase = std::arg(d.power) - min_arg;
        ComplexPower r = d.power * rot;
        // Snap roundoff below the real axis; the minimum-phase demand lands on it exactly.
        if (phase == 0.0) r = {mag, 0.0};
        if (r.imag() < 0.0 && r.imag() > -1e-12 * mag) r.imag(0.0);
        if (r.real() < 0.0 && r.real() > -1e-12 * mag) r.real(0.0);
        d.power = r;
    }
}

Instance::Instance(CapacityProfile capacities, std::vector<Demand> demands,
                   SystemBounds bounds)
    : capacities_(std::move(capacities)), demands_(std::move(demands)), bounds_(bounds) {
    canonical_rotation(demands_);
}

int ScheduleDecision::count() const {
    return static_cast<int>(std::count(accepted.begin(), accepted.end(), std::uint8_t{1}));
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    auto& out = report.violations;
    const auto& caps = inst.capacities();
    const auto& b = inst.bounds();

    if (caps.horizon() < 1) out.emplace_back("horizon: empty capacity profile");
    for (int t = 1; t <= caps.horizon(); ++t) {
        if (!(caps.at(t) > 0.0) || !std::isfinite(caps.at(t)))
            out.push_back("capacity: slot " + std::to_string(t));
    }
    if (!(b.a_min > 0.0 && b.a_min <= b.a_max)) out.emplace_back("bounds: a_min/a_max");
    if (!(b.u_min > 0.0 && b.u_min <= b.u_max)) out.emplace_back("bounds: u_min/u_max");
    if (b.t_max < 1) out.emplace_back("bounds: t_max");
    if (!(b.theta >= 0.0 && b.theta <= std::numbers::pi / 2 + kBoundSlack))
        out.emplace_back("bounds: theta");

    const double c_min = caps.min();
    int expected_id = 1;
    for (const auto& d : inst.demands()) {
        if (d.id != expected_id) out.push_back(violation("id", d.id));
        ++expected_id;
        const double mag = d.magnitude();
        if (!std::isfinite(mag)) {
            out.push_back(violation("power", d.id));
            continue;
        }
        if (!(d.utility > 0.0)) {
            out.push_back(violation("utility", d.id));
        } else {
            if (below(d.utility, b.u_min)) out.push_back(violation("u_min", d.id));
            if (exceeds(d.utility, b.u_max)) out.push_back(violation("u_max", d.id));
            if (mag > 0.0) {
                if (below(mag / d.utility, b.a_min)) out.push_back(violation("a_min", d.id));
                if (exceeds(mag / d.utility, b.a_max)) out.push_back(violation("a_max", d.id));
            }
        }
        if (d.interval.first < 1 || d.interval.last > caps.horizon() ||
            d.interval.first > d.interval.last) {
            out.push_back(violation("interval", d.id));
        } else if (d.interval.length() > b.t_max) {
            out.push_back(violation("t_max", d.id));
        }
        if (exceeds(mag, c_min)) out.push_back(violation("NBA", d.id));
        if (d.power.real() < 0.0 || d.power.imag() < 0.0) out.push_back(violation("quadrant", d.id));
    }
    if (phase_spread(inst.demands()) > b.theta + kBoundSlack) out.emplace_back("theta: phase spread exceeds bound");
    return report;
}

ComplexPower aggregate_load(const ScheduleDecision& decision, const Instance& inst, int t) {
    if (t < 1 || t > inst.horizon()) {
        throw std::domain_error("aggregate_load: slot " + std::to_string(t) + " out of range");
    }
    ComplexPower sum{};
    for (const auto& d : inst.demands()) {
        if (decision.accepted.at(static_cast<std::size_t>(d.id - 1)) && d.interval.contains(t)) {
            sum += d.power;
        }
    }
    return sum;
}

bool feasibility_check(const ScheduleDecision& decision, const Instance& inst) {
    if (decision.accepted.size() != static_cast<std::size_t>(inst.size())) return false;
    std::vector<ComplexPower> load(static_cast<std::size_t>(inst.horizon()));
    for (const auto& d : inst.demands()) {
        if (!decision.accepted[static_cast<std::size_t>(d.id - 1)]) continue;
        for (int t = d.interval.first; t <= d.interval.last; ++t)
            load[static_cast<std::size_t>(t - 1)] += d.power;
    }
    for (int t = 1; t <= inst.horizon(); ++t) {
        const double cap = inst.capacities().at(t);
        if (std::abs(load[static_cast<std::size_t>(t - 1)]) > cap * (1.0 + kFeasibilityTolerance))
            return false;
    }
    return true;
}

double objective_of(const ScheduleDecision& decision, const Instance& inst) {
    double sum = 0.0;
    for (const auto& d : inst.demands()) {
        if (decision.accepted.at(static_cast<std::size_t>(d.id - 1))) sum += d.utility;
    }
    return sum;
}

double phase_spread(std::span<const Demand> demands) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& d : demands) {
        if (d.magnitude() == 0.0) continue;
        const double a = std::arg(d.power);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return hi >= lo ? hi - lo : 0.0;
}

}  // namespace csp
