#pragma once

// Randomized online scheduler for the apparent-power-constrained problem:
// demands are split into δ-small and δ-large streams, each stream runs its own
// primal-dual packing instance, one run-level coin selects which stream is
// rounded, and a correction step vetoes any acceptance that would break
// capacity.

#include <cstdint>
#include <string>
#include <vector>

#include "csp/core.hpp"
#include "csp/packing_pd.hpp"
#include "csp/rng.hpp"

namespace csp {

enum class DemandClass { Small, Large };
enum class CorrectionMode { Exact, Strict };
/// Which orientation of the large-stream log factor to use.
enum class RlForm { MaxOverMin, MinOverMax };

const char* to_string(CorrectionMode mode);
const char* to_string(RlForm form);
CorrectionMode parse_correction_mode(const std::string& text);
RlForm parse_rl_form(const std::string& text);

struct AlgorithmParams {
    double alpha = 0.138;
    double delta = 0.333;
    double r_small = 1.0;
    double r_large = 1.0;
    CorrectionMode correction = CorrectionMode::Exact;
    RlForm rl_form = RlForm::MaxOverMin;

    static AlgorithmParams from_bounds(const SystemBounds& bounds,
                                       CorrectionMode correction = CorrectionMode::Exact,
                                       RlForm rl_form = RlForm::MaxOverMin);
};

/// 2 ln(1 + (T_max + 1) max(1, a_max) / min(1, a_min)); the dummy row of every
/// small column carries coefficient 1, so 1 always sits between the extremes.
double small_stream_factor(const SystemBounds& bounds);

/// 2 ln(1 + T_max u_max / u_min) by default; MinOverMax inverts the utility ratio.
double large_stream_factor(const SystemBounds& bounds, RlForm form = RlForm::MaxOverMin);

/// Lower bound on E[Online] / OPT guaranteed by the analysis:
/// ½ cos(θ/2) min{0.0035 / r_S, 0.0139 / r_L}.
double competitive_bound(const SystemBounds& bounds, const AlgorithmParams& params);

/// Per-slot accepted load bookkeeping shared by every rounding path.
class CapacityTracker {
public:
    CapacityTracker(const CapacityProfile& capacities, CorrectionMode mode);

    /// Commits the demand if it keeps every slot in its interval feasible.
    bool try_accept(const Demand& d);

    ComplexPower aggregate(int t) const { return aggregate_.at(static_cast<std::size_t>(t - 1)); }
    /// Residual capacity: C_t - |aggregate| in exact mode, the decremented C'_t
    /// in strict mode.
    double remaining(int t) const;
    double remaining_min() const;

private:
    const CapacityProfile* capacities_;
    CorrectionMode mode_;
    std::vector<ComplexPower> aggregate_;
    std::vector<double> residual_;  // C'_t, strict mode only
};

struct TraceRecord {
    int k = 0;
    DemandClass cls = DemandClass::Small;
    double frac = 0.0;
    double p = 0.0;
    double draw = 0.0;
    bool clamped = false;
    bool corrected = false;
    int x = 0;
    double remaining_min = 0.0;
};

std::string to_json_line(const TraceRecord& rec);

struct OnlineState {
    OnlineState(const CapacityProfile& capacities, AlgorithmParams params, std::uint64_t seed);

    AlgorithmParams params;
    CounterRng rng;
    int tau = 0;
    std::vector<int> small_ids;
    std::vector<int> large_ids;
    PackingState small_pd;
    PackingState large_pd;
    const CapacityProfile* capacities;
    CapacityTracker tracker;
    std::vector<std::uint8_t> decisions;
    std::vector<TraceRecord> trace;
};

DemandClass classify_demand(const Demand& d, const CapacityProfile& capacities, double delta);

/// Appends a dummy row of capacity u_k to the small stream and returns the
/// column a = |S_k|/u_k on T_k plus a = 1 on the dummy row.
PackingColumn build_small_column(const Demand& d, OnlineState& state);

/// Column a = 1/u_k on T_k for the unit-capacity large stream.
PackingColumn build_large_column(const Demand& d);

struct RoundingProbability {
    double p = 0.0;
    bool clamped = false;
};

/// Probability of tentatively accepting a demand given its stream's
/// fractional value and the run-level coin.
RoundingProbability rounding_probability(DemandClass cls, double frac, const Demand& d,
                                         int tau, const AlgorithmParams& params);

/// Randomized rounding followed by the correction step; commits the result.
int round_and_correct(const Demand& d, DemandClass cls, double frac, OnlineState& state);

int process_arrival(const Demand& d, OnlineState& state);

struct OnlineRun {
    ScheduleDecision decision;
    int tau = 0;
    std::vector<TraceRecord> trace;
    PackingState small_pd;
    PackingState large_pd;
};

/// Runs the scheduler over the whole arrival sequence. Throws
/// std::invalid_argument if the instance fails validation.
OnlineRun run_online(const Instance& inst, std::uint64_t seed, const AlgorithmParams& params);
OnlineRun run_online(const Instance& inst, std::uint64_t seed);

/// Seed-independent part of a run: classification, fractional values and the
/// rounding probability each demand would get when its stream is selected.
struct PlannedArrival {
    DemandClass cls = DemandClass::Small;
    double frac = 0.0;
    double p_selected = 0.0;
    bool clamped = false;
};

struct FractionalPlan {
    AlgorithmParams params;
    std::vector<PlannedArrival> arrivals;
};

FractionalPlan plan_fractional(const Instance& inst, const AlgorithmParams& params);

/// Replays only the randomized part of run_online; produces the same decision
/// as run_online(inst, seed, plan.params).
ScheduleDecision round_plan(const FractionalPlan& plan, const Instance& inst, std::uint64_t seed);

}  // namespace csp
