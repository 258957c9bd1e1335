#pragma once

// Domain types for online complex-demand scheduling: demands, capacity
// profiles, instances and the apparent-power feasibility arithmetic.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace csp {

/// Complex power in volt-amperes: real part is active power, imaginary part
/// is reactive power.
using ComplexPower = std::complex<double>;

/// Relative slack applied when checking |aggregate| <= C_t after the fact.
inline constexpr double kFeasibilityTolerance = 1e-9;

/// Inclusive range of 1-based time slots.
struct SlotInterval {
    int first = 1;
    int last = 1;

    int length() const { return last - first + 1; }
    bool contains(int t) const { return t >= first && t <= last; }
};

struct Demand {
    int id = 0;  // 1-based arrival index
    ComplexPower power{};
    double utility = 0.0;
    SlotInterval interval{};

    double magnitude() const { return std::abs(power); }
};

/// Per-slot apparent-power capacities C_1..C_m, addressed with 1-based slots.
class CapacityProfile {
public:
    CapacityProfile() = default;
    explicit CapacityProfile(std::vector<double> capacities);

    int horizon() const { return static_cast<int>(values_.size()); }
    double at(int t) const;
    double min() const;
    double min_over(SlotInterval interval) const;
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> values_;
};

/// A-priori bounds on the demand stream.
struct SystemBounds {
    double a_min = 1.0;  // lower bound on |S_k| / u_k
    double a_max = 1.0;
    double u_min = 1.0;
    double u_max = 1.0;
    int t_max = 1;       // longest interval
    double theta = 0.0;  // phase spread, radians

    /// Tightest bounds containing the given demands; theta is the realized
    /// phase spread unless `theta_override` is non-negative.
    static SystemBounds from_demands(std::span<const Demand> demands,
                                     double theta_override = -1.0);
};

/// An online scheduling instance. Construction applies the canonical rotation
/// so every demand lies in the closed first quadrant whenever the phase spread
/// allows it.
class Instance {
public:
    Instance() = default;
    Instance(CapacityProfile capacities, std::vector<Demand> demands,
             SystemBounds bounds);

    int horizon() const { return capacities_.horizon(); }
    const CapacityProfile& capacities() const { return capacities_; }
    std::span<const Demand> demands() const { return demands_; }
    const Demand& demand(int id) const { return demands_.at(id - 1); }
    int size() const { return static_cast<int>(demands_.size()); }
    const SystemBounds& bounds() const { return bounds_; }

private:
    CapacityProfile capacities_;
    std::vector<Demand> demands_;
    SystemBounds bounds_;
};

/// Binary accept/reject per demand, indexed by demand id - 1.
struct ScheduleDecision {
    std::vector<std::uint8_t> accepted;
    double objective = 0.0;

    static ScheduleDecision none(int n) {
        return {std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0), 0.0};
    }
    int count() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Rotates every demand by -min arg(S_k) over demands with nonzero magnitude.
/// Magnitudes and pairwise angles are preserved.
void canonical_rotation(std::span<Demand> demands);

ValidationReport validate_instance(const Instance& inst);

/// Σ S_k over accepted demands whose interval covers slot t.
ComplexPower aggregate_load(const ScheduleDecision& decision,
                            const Instance& inst, int t);

bool feasibility_check(const ScheduleDecision& decision, const Instance& inst);

/// Recomputes the objective Σ u_k x_k of a decision.
double objective_of(const ScheduleDecision& decision, const Instance& inst);

/// max arg - min arg over demands with nonzero magnitude; zero when fewer
/// than two such demands exist.
double phase_spread(std::span<const Demand> demands);

}  // namespace csp
