#pragma once

#include <string>
#include <vector>

#include "tdos/scenario.hpp"
#include "tdos/trace.hpp"

namespace tdos {

// Scalar totals plus per-window time distributions of one capability
// over one window interval: the "state A / state B" object compared by
// the TPS relation and the TDoS classifiers.
struct StateSummary {
    std::string capability_id;
    int first_window = 0;
    int window_count = 0;
    double na_total = 0.0;
    double nt_total = 0.0;
    double nc_total = 0.0;
    double td_total = 0.0; // peak by default, sum when configured
    std::vector<double> na_dist;
    std::vector<double> nt_dist;
    std::vector<double> nc_dist;
    std::vector<double> td_dist;
};

struct SimilarityResult {
    bool similar = false;
    double score = 0.0; // relative deviation (scalar) or L1 distance (dist)
};

struct DominanceResult {
    bool dominates = false;
    double ratio = 0.0;
    double difference = 0.0;
};

// Demand-side equivalence: all four of nA, nA(t), nT, nT(t) similar.
struct TpsEvidence {
    SimilarityResult na_scalar;
    SimilarityResult na_dist;
    SimilarityResult nt_scalar;
    SimilarityResult nt_dist;
    bool holds = false;
};

struct ConditionEvidence {
    DominanceResult dominance;
    SimilarityResult distribution; // condition needs this to be DISsimilar
    bool satisfied = false;
};

enum class VerdictClass { Normal, NotTdosDemandShift, UTdos, DTdos, UDTdos };

const char* to_string(VerdictClass v);
VerdictClass verdict_from_string(const std::string& s); // throws ValidationError

struct Verdict {
    VerdictClass cls = VerdictClass::Normal;
    TpsEvidence tps;
    ConditionEvidence cost;   // upkeep: nC dominance + nC(t) dissimilarity
    ConditionEvidence deploy; // deployment: tD dominance + tD(t) dissimilarity
};

// ~ on scalars: |x-y| <= eps * max(x, y, 1).
SimilarityResult scalar_similar(double x, double y, double eps);

// ~ on distributions: unit-sum normalization (all-zero -> uniform), then
// L1 distance in [0,2] against delta. Throws LengthMismatch.
SimilarityResult dist_similar(const std::vector<double>& p, const std::vector<double>& q,
                              double delta);

// <<: y >= kappa*x AND y - x >= floor.
DominanceResult dominates(double x, double y, double kappa, double floor_abs);

TpsEvidence tps_check(const StateSummary& a, const StateSummary& b, const DetectorConfig& cfg);

Verdict classify(const StateSummary& a, const StateSummary& b, const DetectorConfig& cfg);

// Extracts totals and series from the trace windows. Throws
// IntervalOutOfRange.
StateSummary summarize(const SimTrace& trace, const std::string& capability,
                       int first_window, int window_count, const DetectorConfig& cfg);

struct LazyClusterResult {
    std::vector<std::size_t> flagged; // indices into the input, lower group
    double separation = 0.0;          // between-group gap / overall stddev
    double split_value = 0.0;         // productivity below which flags apply
};

// 1-D two-group split minimizing within-group variance, exhaustive over
// the sorted split points. Flags the lower group iff separation > 1.0.
// Throws TooFewInstances for fewer than 2 values.
LazyClusterResult cluster_productivity(const std::vector<double>& productivity);

// requests_served / max(cpu_load, tiny)
inline double productivity_of(double requests_served, double cpu_load) {
    const double tiny = 1e-9;
    return requests_served / (cpu_load > tiny ? cpu_load : tiny);
}

} // namespace tdos
