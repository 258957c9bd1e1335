#include "csp/packing_pd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace csp {

PackingState::PackingState(std::vector<double> capacities)
    : capacity_(std::move(capacities)),
      y_(capacity_.size(), 0.0),
      load_(capacity_.size(), 0.0) {
    for (double c : capacity_) {
        if (!(c > 0.0)) throw std::domain_error("packing capacity must be positive");
    }
}

int PackingState::add_slot(double capacity) {
    if (!(capacity > 0.0)) throw std::domain_error("packing capacity must be positive");
    capacity_.push_back(capacity);
    y_.push_back(0.0);
    load_.push_back(0.0);
    return slot_count();
}

double PackingState::exp_term(std::size_t row, double extra_load) const {
    const double scaled = (load_[row] + extra_load) / (2.0 * capacity_[row]);
    return std::expm1(scaled) / (static_cast<double>(t_max_) * a_max_);
}

double PackingState::coverage(const PackingColumn& column, double x) const {
    double g = 0.0;
    for (const auto& e : column.entries) {
        const std::size_t row = index(e.slot);
        g += e.coeff * std::max(y_[row], exp_term(row, e.coeff * x));
    }
    return g;
}

double PackingState::process_column(const PackingColumn& column) {
    if (column.entries.empty()) throw std::domain_error("packing column has no entries");
    bool any_positive = false;
    for (const auto& e : column.entries) {
        if (e.slot < 1 || e.slot > slot_count())
            throw std::domain_error("packing column references unknown slot " +
                                    std::to_string(e.slot));
        if (!(e.coeff >= 0.0) || !std::isfinite(e.coeff))
            throw std::domain_error("packing coefficients must be finite and non-negative");
        any_positive = any_positive || e.coeff > 0.0;
    }
    if (!any_positive) throw std::domain_error("packing column has only zero coefficients");

    t_max_ = std::max(t_max_, static_cast<int>(column.entries.size()));
    for (const auto& e : column.entries) {
        if (e.coeff > 0.0) {
            a_max_ = std::max(a_max_, e.coeff);
            a_min_ = std::min(a_min_, e.coeff);
        }
    }

    RoundRecord record;
    record.round = column_count() + 1;

    double x = 0.0;
    if (coverage(column, 0.0) < 1.0) {
        // g(x) is continuous and non-decreasing; find the smallest x with g(x) >= 1.
        double hi = std::numeric_limits<double>::infinity();
        const double ratio = static_cast<double>(t_max_) * a_max_;
        for (const auto& e : column.entries) {
            if (e.coeff <= 0.0) continue;
            const double c = capacity_[index(e.slot)];
            hi = std::min(hi, 2.0 * c * std::log1p(ratio / e.coeff) / e.coeff);
        }
        while (coverage(column, hi) < 1.0) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 400; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
            if (coverage(column, mid) >= 1.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        x = hi;
    }

    for (const auto& e : column.entries) {
        const std::size_t row = index(e.slot);
        load_[row] += e.coeff * x;
        const double before = y_[row];
        y_[row] = std::max(y_[row], exp_term(row, 0.0));
        if (y_[row] != before) record.y_updates.push_back({e.slot, before, y_[row]});
    }
    x_.push_back(x);
    columns_.push_back(column);

    record.x = x;
    std::tie(record.primal, record.dual) = objectives(*this);
    last_ = std::move(record);
    return x;
}

std::pair<double, double> objectives(const PackingState& state) {
    double primal = 0.0;
    for (int t = 1; t <= state.slot_count(); ++t) primal += state.capacity(t) * state.y(t);
    double dual = 0.0;
    for (double v : state.xs()) dual += v;
    return {primal, dual};
}

double competitive_factor(const PackingState& state) {
    if (state.column_count() == 0) return 0.0;
    return 2.0 * std::log1p(static_cast<double>(state.t_bar_max()) * state.a_bar_max() /
                            state.a_bar_min());
}

ClaimReport check_claims(const PackingState& state) {
    return check_claims(state, competitive_factor(state));
}

ClaimReport check_claims(const PackingState& state, double r_hat) {
    ClaimReport report;

    const auto [primal, dual] = objectives(state);
    report.a1.worst_margin = dual * (1.0 + kClaimA1Tolerance) - primal;
    report.a1.pass = report.a1.worst_margin >= 0.0;

    report.a2.worst_margin = 0.0;
    for (const auto& col : state.columns()) {
        double cover = 0.0;
        for (const auto& e : col.entries) cover += e.coeff * state.y(e.slot);
        report.a2.worst_margin = std::min(report.a2.worst_margin, cover - (1.0 - kClaimA2Tolerance));
    }
    report.a2.pass = report.a2.worst_margin >= 0.0;

    report.a3.worst_margin = 0.0;
    for (int t = 1; t <= state.slot_count(); ++t) {
        const double bound = state.capacity(t) * r_hat * (1.0 + kClaimA3Tolerance);
        report.a3.worst_margin = std::min(report.a3.worst_margin, bound - state.load(t));
    }
    report.a3.pass = report.a3.worst_margin >= 0.0;
    return report;
}

std::string ClaimReport::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "A1 %s (%.3g), A2 %s (%.3g), A3 %s (%.3g)",
                  a1.pass ? "pass" : "FAIL", a1.worst_margin, a2.pass ? "pass" : "FAIL",
                  a2.worst_margin, a3.pass ? "pass" : "FAIL", a3.worst_margin);
    return buf;
}

}  // namespace csp
