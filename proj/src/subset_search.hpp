#pragma once

// Include-first depth-first search over accept/reject assignments, shared by
// the serial and parallel exact oracles.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "csp/core.hpp"
#include "csp/oracle.hpp"

namespace csp::detail {

class SubsetSearch {
public:
    explicit SubsetSearch(const Instance& inst)
        : inst_(inst),
          n_(inst.size()),
          load_(static_cast<std::size_t>(inst.horizon())),
          chosen_(static_cast<std::size_t>(inst.size()), 0),
          best_set_(static_cast<std::size_t>(inst.size()), 0),
          suffix_(static_cast<std::size_t>(inst.size()) + 1, 0.0),
          saved_(static_cast<std::size_t>(inst.size())) {
        for (int k = n_ - 1; k >= 0; --k)
            suffix_[static_cast<std::size_t>(k)] =
                suffix_[static_cast<std::size_t>(k) + 1] + inst.demands()[static_cast<std::size_t>(k)].utility;
    }

    /// Fixes the first `depth` decisions from `prefix` (bit depth-1-i clear
    /// means demand i is included). Returns false if the prefix is infeasible.
    bool apply_prefix(int depth, std::uint32_t prefix) {
        for (int i = 0; i < depth; ++i) {
            const bool include = ((prefix >> (depth - 1 - i)) & 1U) == 0;
            if (!include) continue;
            if (!fits(i)) return false;
            add(i);
        }
        return true;
    }

    void run(int from) { descend(from); }

    /// Prune against the best value any cooperating search has reached. Only
    /// the bound is shared; each search still adopts strict local improvements,
    /// so the first optimum in visiting order is never cut.
    void share_floor(std::atomic<double>* floor) { shared_ = floor; }

    bool found() const { return best_ >= 0.0; }
    double best_value() const { return best_; }
    const std::vector<std::uint8_t>& best_set() const { return best_set_; }
    std::uint64_t explored() const { return explored_; }

private:
    const Demand& demand(int k) const { return inst_.demands()[static_cast<std::size_t>(k)]; }

    bool fits(int k) const {
        const Demand& d = demand(k);
        for (int t = d.interval.first; t <= d.interval.last; ++t) {
            if (std::abs(load_[static_cast<std::size_t>(t - 1)] + d.power) > inst_.capacities().at(t))
                return false;
        }
        return true;
    }

    void add(int k) {
        const Demand& d = demand(k);
        for (int t = d.interval.first; t <= d.interval.last; ++t) load_[static_cast<std::size_t>(t - 1)] += d.power;
        chosen_[static_cast<std::size_t>(k)] = 1;
        value_ += d.utility;
    }

    void descend(int k) {
        if (k == n_) {
            ++explored_;
            if (value_ > best_) {
                best_ = value_;
                best_set_ = chosen_;
                publish(best_);
            }
            return;
        }
        // Prune only subtrees that cannot reach the incumbent even allowing for
        // roundoff in the bound; ties are never adopted, so this stays exact.
        const double bound = value_ + suffix_[static_cast<std::size_t>(k)];
        const double floor = shared_ ? std::max(best_, shared_->load(std::memory_order_relaxed)) : best_;
        if (floor >= 0.0 && bound < floor * (1.0 - 1e-12)) return;

        if (fits(k)) {
            auto& saved = saved_[static_cast<std::size_t>(k)];
            const Demand& d = demand(k);
            saved.assign(load_.begin() + (d.interval.first - 1), load_.begin() + d.interval.last);
            const double saved_value = value_;
            add(k);
            descend(k + 1);
            std::copy(saved.begin(), saved.end(), load_.begin() + (d.interval.first - 1));
            value_ = saved_value;
            chosen_[static_cast<std::size_t>(k)] = 0;
        }
        descend(k + 1);
    }

    void publish(double value) {
        if (!shared_) return;
        double seen = shared_->load(std::memory_order_relaxed);
        while (value > seen && !shared_->compare_exchange_weak(seen, value, std::memory_order_relaxed)) {
        }
    }

    const Instance& inst_;
    std::atomic<double>* shared_ = nullptr;
    int n_;
    std::vector<ComplexPower> load_;
    std::vector<std::uint8_t> chosen_;
    std::vector<std::uint8_t> best_set_;
    std::vector<double> suffix_;
    std::vector<std::vector<ComplexPower>> saved_;
    double value_ = 0.0;
    double best_ = -1.0;
    std::uint64_t explored_ = 0;
};

/// Throws unless the instance is small enough and in the first quadrant, where
/// adding a demand never shrinks a slot's apparent power and infeasible
/// prefixes can be cut.
void require_searchable(const Instance& inst);

OracleResult to_result(const Instance& inst, const std::vector<std::uint8_t>& set,
                       std::uint64_t explored);

}  // namespace csp::detail
