#include "csp/online.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace csp {

const char* to_string(CorrectionMode mode) {
    return mode == CorrectionMode::Exact ? "exact" : "strict";
}

const char* to_string(RlForm form) { return form == RlForm::MaxOverMin ? "umax-over-umin" : "umin-over-umax"; }

CorrectionMode parse_correction_mode(const std::string& text) {
    if (text == "exact") return CorrectionMode::Exact;
    if (text == "strict") return CorrectionMode::Strict;
    throw std::invalid_argument("unknown correction mode '" + text + "' (expected exact|strict)");
}

RlForm parse_rl_form(const std::string& text) {
    if (text == "umax-over-umin") return RlForm::MaxOverMin;
    if (text == "umin-over-umax") return RlForm::MinOverMax;
    throw std::invalid_argument("unknown r_L form '" + text + "' (expected umax-over-umin|umin-over-umax)");
}

double small_stream_factor(const SystemBounds& b) {
    const double hi = std::max(1.0, b.a_max);
    const double lo = std::min(1.0, b.a_min);
    return 2.0 * std::log1p(static_cast<double>(b.t_max + 1) * hi / lo);
}

double large_stream_factor(const SystemBounds& b, RlForm form) {
    const double ratio = form == RlForm::MaxOverMin ? b.u_max / b.u_min : b.u_min / b.u_max;
    return 2.0 * std::log1p(static_cast<double>(b.t_max) * ratio);
}

AlgorithmParams AlgorithmParams::from_bounds(const SystemBounds& bounds, CorrectionMode correction,
                                             RlForm rl_form) {
    AlgorithmParams p;
    p.r_small = small_stream_factor(bounds);
    p.r_large = large_stream_factor(bounds, rl_form);
    p.correction = correction;
    p.rl_form = rl_form;
    return p;
}

double competitive_bound(const SystemBounds& bounds, const AlgorithmParams& params) {
    return 0.5 * std::cos(bounds.theta / 2.0) *
           std::min(0.0035 / params.r_small, 0.0139 / params.r_large);
}

// ---------------------------------------------------------------------------

CapacityTracker::CapacityTracker(const CapacityProfile& capacities, CorrectionMode mode)
    : capacities_(&capacities),
      mode_(mode),
      aggregate_(static_cast<std::size_t>(capacities.horizon())),
      residual_(capacities.values().begin(), capacities.values().end()) {}

bool CapacityTracker::try_accept(const Demand& d) {
    for (int t = d.interval.first; t <= d.interval.last; ++t) {
        const auto i = static_cast<std::size_t>(t - 1);
        const double limit = mode_ == CorrectionMode::Exact ? capacities_->at(t) : residual_[i];
        if (std::abs(aggregate_[i] + d.power) > limit) return false;
    }
    const double mag = d.magnitude();
    for (int t = d.interval.first; t <= d.interval.last; ++t) {
        const auto i = static_cast<std::size_t>(t - 1);
        aggregate_[i] += d.power;
        residual_[i] -= mag;
    }
    return true;
}

double CapacityTracker::remaining(int t) const {
    const auto i = static_cast<std::size_t>(t - 1);
    if (mode_ == CorrectionMode::Strict) return residual_.at(i);
    return capacities_->at(t) - std::abs(aggregate_.at(i));
}

double CapacityTracker::remaining_min() const {
    double lo = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= capacities_->horizon(); ++t) lo = std::min(lo, remaining(t));
    return lo;
}

std::string to_json_line(const TraceRecord& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "{\"k\":%d,\"class\":\"%s\",\"frac\":%.17g,\"p\":%.17g,\"draw\":%.17g,"
                  "\"clamped\":%s,\"corrected\":%s,\"x_k\":%d,\"remaining_min\":%.17g}",
                  r.k, r.cls == DemandClass::Small ? "S" : "L", r.frac, r.p, r.draw,
                  r.clamped ? "true" : "false", r.corrected ? "true" : "false", r.x,
                  r.remaining_min);
    return buf;
}

// ---------------------------------------------------------------------------

OnlineState::OnlineState(const CapacityProfile& caps, AlgorithmParams p, std::uint64_t seed)
    : params(p),
      rng(seed),
      tau(static_cast<int>(rng.bits(0) & 1U)),
      small_pd(std::vector<double>(caps.values().begin(), caps.values().end())),
      large_pd(std::vector<double>(static_cast<std::size_t>(caps.horizon()), 1.0)),
      capacities(&caps),
      tracker(caps, p.correction) {}

DemandClass classify_demand(const Demand& d, const CapacityProfile& capacities, double delta) {
    return d.magnitude() <= delta * capacities.min_over(d.interval) ? DemandClass::Small
                                                                    : DemandClass::Large;
}

PackingColumn build_small_column(const Demand& d, OnlineState& state) {
    if (!(d.utility > 0.0)) throw std::domain_error("demand utility must be positive");
    PackingColumn col;
    col.id = static_cast<int>(state.small_ids.size()) + 1;
    const double a = d.magnitude() / d.utility;
    for (int t = d.interval.first; t <= d.interval.last; ++t) col.entries.push_back({t, a});
    const int dummy = state.small_pd.add_slot(d.utility);
    col.entries.push_back({dummy, 1.0});
    return col;
}

PackingColumn build_large_column(const Demand& d) {
    if (!(d.utility > 0.0)) throw std::domain_error("demand utility must be positive");
    PackingColumn col;
    col.id = d.id;
    for (int t = d.interval.first; t <= d.interval.last; ++t)
        col.entries.push_back({t, 1.0 / d.utility});
    return col;
}

RoundingProbability rounding_probability(DemandClass cls, double frac, const Demand& d, int tau,
                                         const AlgorithmParams& params) {
    if (d.magnitude() == 0.0) return {1.0, false};
    double p = 0.0;
    if (cls == DemandClass::Large) {
        p = params.alpha * tau * frac / (d.utility * params.r_large);
    } else {
        p = (1 - tau) * frac / (2.0 * d.utility * params.r_small);
    }
    RoundingProbability out{p, false};
    if (p > 1.0) out = {1.0, true};
    if (p < 0.0) out = {0.0, true};
    return out;
}

int round_and_correct(const Demand& d, DemandClass cls, double frac, OnlineState& state) {
    TraceRecord rec;
    rec.k = d.id;
    rec.cls = cls;
    rec.frac = frac;
    const auto prob = rounding_probability(cls, frac, d, state.tau, state.params);
    rec.p = prob.p;
    rec.clamped = prob.clamped;
    rec.draw = state.rng.uniform(static_cast<std::uint64_t>(d.id));
    int x = rec.draw < rec.p ? 1 : 0;
    if (x == 1 && !state.tracker.try_accept(d)) {
        x = 0;
        rec.corrected = true;
    }
    rec.x = x;
    rec.remaining_min = state.tracker.remaining_min();
    state.decisions.push_back(static_cast<std::uint8_t>(x));
    state.trace.push_back(rec);
    return x;
}

int process_arrival(const Demand& d, OnlineState& state) {
    if (d.id != static_cast<int>(state.decisions.size()) + 1)
        throw std::invalid_argument("demands must arrive in id order");
    const DemandClass cls = classify_demand(d, *state.capacities, state.params.delta);
    double frac = 0.0;
    if (cls == DemandClass::Small) {
        PackingColumn col = build_small_column(d, state);
        frac = state.small_pd.process_column(col);
        state.small_ids.push_back(d.id);
    } else {
        frac = state.large_pd.process_column(build_large_column(d));
        state.large_ids.push_back(d.id);
    }
    return round_and_correct(d, cls, frac, state);
}

namespace {

void require_valid(const Instance& inst) {
    const auto report = validate_instance(inst);
    if (report.ok()) return;
    std::string msg = "invalid instance:";
    for (const auto& v : report.violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
}

}  // namespace

OnlineRun run_online(const Instance& inst, std::uint64_t seed) {
    return run_online(inst, seed, AlgorithmParams::from_bounds(inst.bounds()));
}

OnlineRun run_online(const Instance& inst, std::uint64_t seed, const AlgorithmParams& params) {
    require_valid(inst);
    OnlineState state(inst.capacities(), params, seed);
    for (const auto& d : inst.demands()) process_arrival(d, state);

    OnlineRun run;
    run.decision.accepted = std::move(state.decisions);
    run.decision.objective = objective_of(run.decision, inst);
    run.tau = state.tau;
    run.trace = std::move(state.trace);
    run.small_pd = std::move(state.small_pd);
    run.large_pd = std::move(state.large_pd);
    return run;
}

FractionalPlan plan_fractional(const Instance& inst, const AlgorithmParams& params) {
    require_valid(inst);
    FractionalPlan plan;
    plan.params = params;
    // The fractional side never looks at the coin or the draws; drive it with a
    // throwaway state and read the probabilities for the selecting coin value.
    OnlineState state(inst.capacities(), params, 0);
    for (const auto& d : inst.demands()) {
        PlannedArrival a;
        a.cls = classify_demand(d, inst.capacities(), params.delta);
        if (a.cls == DemandClass::Small) {
            a.frac = state.small_pd.process_column(build_small_column(d, state));
            state.small_ids.push_back(d.id);
        } else {
            a.frac = state.large_pd.process_column(build_large_column(d));
            state.large_ids.push_back(d.id);
        }
        const int selecting_tau = a.cls == DemandClass::Large ? 1 : 0;
        const auto prob = rounding_probability(a.cls, a.frac, d, selecting_tau, params);
        a.p_selected = prob.p;
        a.clamped = prob.clamped;
        plan.arrivals.push_back(a);
    }
    return plan;
}

ScheduleDecision round_plan(const FractionalPlan& plan, const Instance& inst, std::uint64_t seed) {
    const CounterRng rng(seed);
    const int tau = static_cast<int>(rng.bits(0) & 1U);
    CapacityTracker tracker(inst.capacities(), plan.params.correction);
    ScheduleDecision out = ScheduleDecision::none(inst.size());
    for (const auto& d : inst.demands()) {
        const auto& a = plan.arrivals[static_cast<std::size_t>(d.id - 1)];
        const double p = rounding_probability(a.cls, a.frac, d, tau, plan.params).p;
        const double draw = rng.uniform(static_cast<std::uint64_t>(d.id));
        if (draw < p && tracker.try_accept(d)) {
            out.accepted[static_cast<std::size_t>(d.id - 1)] = 1;
            out.objective += d.utility;
        }
    }
    return out;
}

}  // namespace csp
