#pragma once

// Online fractional packing by the primal-dual schema with exponential
// covering updates. Columns (packing variables) arrive one at a time; each is
// raised until its covering constraint Σ_t a_{k,t} y_t >= 1 is met.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace csp {

struct PackingEntry {
    int slot = 1;        // 1-based row of the packing program
    double coeff = 0.0;  // a_{k,t} >= 0
};

struct PackingColumn {
    int id = 0;
    std::vector<PackingEntry> entries;
};

/// Change made to one covering variable during a round; used by the trace.
struct DualUpdate {
    int slot = 0;
    double before = 0.0;
    double after = 0.0;
};

struct RoundRecord {
    int round = 0;
    double x = 0.0;
    std::vector<DualUpdate> y_updates;
    double primal = 0.0;
    double dual = 0.0;
};

/// Live primal/dual variables of one primal-dual run. Single writer: columns
/// must be processed in arrival order.
class PackingState {
public:
    PackingState() = default;
    explicit PackingState(std::vector<double> capacities);

    /// Appends a new row with the given capacity; returns its 1-based slot.
    int add_slot(double capacity);

    /// Raises the new column's variable until its covering constraint holds and
    /// returns the resulting fractional value. Throws std::domain_error on an
    /// all-zero, negative or out-of-range column.
    double process_column(const PackingColumn& column);

    int slot_count() const { return static_cast<int>(capacity_.size()); }
    int column_count() const { return static_cast<int>(x_.size()); }
    double capacity(int slot) const { return capacity_.at(index(slot)); }
    double y(int slot) const { return y_.at(index(slot)); }
    double load(int slot) const { return load_.at(index(slot)); }
    double x(int column) const { return x_.at(static_cast<std::size_t>(column)); }
    std::span<const double> xs() const { return x_; }
    std::span<const PackingColumn> columns() const { return columns_; }

    double a_bar_max() const { return a_max_; }
    double a_bar_min() const { return a_min_; }
    int t_bar_max() const { return t_max_; }

    /// Last round's record; empty before the first column.
    const std::optional<RoundRecord>& last_round() const { return last_; }

    /// Test hook: overwrite a covering variable.
    void set_y_for_testing(int slot, double value) { y_.at(index(slot)) = value; }

private:
    std::size_t index(int slot) const { return static_cast<std::size_t>(slot - 1); }
    double exp_term(std::size_t row, double extra_load) const;
    double coverage(const PackingColumn& column, double x) const;

    std::vector<double> capacity_;
    std::vector<double> y_;
    std::vector<double> load_;  // Σ_j a_{j,t} x_j
    std::vector<double> x_;
    std::vector<PackingColumn> columns_;
    double a_max_ = 0.0;
    double a_min_ = std::numeric_limits<double>::infinity();
    int t_max_ = 0;
    std::optional<RoundRecord> last_;
};

/// Primal (covering) objective Σ_t C̄_t y_t and dual (packing) objective Σ_k x_k.
std::pair<double, double> objectives(const PackingState& state);

/// 2 ln(1 + T̄_max ā_max / ā_min) from the state's running extremes.
double competitive_factor(const PackingState& state);

struct ClaimStatus {
    bool pass = true;
    double worst_margin = 0.0;  // most negative slack seen (>= 0 when passing)
};

struct ClaimReport {
    ClaimStatus a1;  // P <= D
    ClaimStatus a2;  // every processed column covered
    ClaimStatus a3;  // per-slot load <= C̄_t r_hat
    bool all_pass() const { return a1.pass && a2.pass && a3.pass; }
    std::string describe() const;
};

inline constexpr double kClaimA1Tolerance = 1e-7;
inline constexpr double kClaimA2Tolerance = 1e-9;
inline constexpr double kClaimA3Tolerance = 1e-9;

ClaimReport check_claims(const PackingState& state, double r_hat);
ClaimReport check_claims(const PackingState& state);

}  // namespace csp
