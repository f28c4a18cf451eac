#include "tdos/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tdos/errors.hpp"

namespace tdos {

const char* to_string(VerdictClass v) {
    switch (v) {
        case VerdictClass::Normal: return "Normal";
        case VerdictClass::NotTdosDemandShift: return "NotTdosDemandShift";
        case VerdictClass::UTdos: return "UTdos";
        case VerdictClass::DTdos: return "DTdos";
        case VerdictClass::UDTdos: return "UDTdos";
    }
    return "?";
}

VerdictClass verdict_from_string(const std::string& s) {
    if (s == "Normal") return VerdictClass::Normal;
    if (s == "NotTdosDemandShift") return VerdictClass::NotTdosDemandShift;
    if (s == "UTdos") return VerdictClass::UTdos;
    if (s == "DTdos") return VerdictClass::DTdos;
    if (s == "UDTdos") return VerdictClass::UDTdos;
    throw ValidationError("unknown verdict class '" + s + "'");
}

SimilarityResult scalar_similar(double x, double y, double eps) {
    const double denom = std::max({x, y, 1.0});
    SimilarityResult r;
    r.score = std::abs(x - y) / denom;
    r.similar = r.score <= eps;
    return r;
}

SimilarityResult dist_similar(const std::vector<double>& p, const std::vector<double>& q,
                              double delta) {
    if (p.size() != q.size())
        throw LengthMismatch("series lengths differ: " + std::to_string(p.size()) + " vs " +
                             std::to_string(q.size()));
    const std::size_t n = p.size();
    const double sp = std::accumulate(p.begin(), p.end(), 0.0);
    const double sq = std::accumulate(q.begin(), q.end(), 0.0);

    // All-zero series normalizes to uniform, so two quiescent states
    // compare as similar.
    auto at = [n](const std::vector<double>& v, double sum, std::size_t i) {
        return sum > 0.0 ? v[i] / sum : 1.0 / static_cast<double>(n);
    };

    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) l1 += std::abs(at(p, sp, i) - at(q, sq, i));

    SimilarityResult r;
    r.score = l1;
    r.similar = l1 <= delta;
    return r;
}

DominanceResult dominates(double x, double y, double kappa, double floor_abs) {
    DominanceResult r;
    r.ratio = x > 0.0 ? y / x : (y > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    r.difference = y - x;
    r.dominates = (y >= kappa * x) && (r.difference >= floor_abs);
    return r;
}

TpsEvidence tps_check(const StateSummary& a, const StateSummary& b, const DetectorConfig& cfg) {
    if (a.window_count != b.window_count)
        throw LengthMismatch("summary interval lengths differ");
    TpsEvidence e;
    e.na_scalar = scalar_similar(a.na_total, b.na_total, cfg.eps_scalar);
    e.na_dist = dist_similar(a.na_dist, b.na_dist, cfg.delta_dist);
    e.nt_scalar = scalar_similar(a.nt_total, b.nt_total, cfg.eps_scalar);
    e.nt_dist = dist_similar(a.nt_dist, b.nt_dist, cfg.delta_dist);
    e.holds = e.na_scalar.similar && e.na_dist.similar && e.nt_scalar.similar && e.nt_dist.similar;
    return e;
}

static ConditionEvidence evaluate_condition(double total_a, double total_b,
                                            const std::vector<double>& dist_a,
                                            const std::vector<double>& dist_b,
                                            double floor_abs, const DetectorConfig& cfg) {
    ConditionEvidence e;
    e.dominance = dominates(total_a, total_b, cfg.kappa, floor_abs);
    e.distribution = dist_similar(dist_a, dist_b, cfg.delta_dist);
    e.satisfied = cfg.or_conditions
                      ? (e.dominance.dominates || !e.distribution.similar)
                      : (e.dominance.dominates && !e.distribution.similar);
    return e;
}

Verdict classify(const StateSummary& a, const StateSummary& b, const DetectorConfig& cfg) {
    Verdict v;
    v.tps = tps_check(a, b, cfg);
    v.cost = evaluate_condition(a.nc_total, b.nc_total, a.nc_dist, b.nc_dist, cfg.floor_nc, cfg);
    v.deploy = evaluate_condition(a.td_total, b.td_total, a.td_dist, b.td_dist, cfg.floor_td, cfg);

    if (!v.tps.holds) {
        v.cls = VerdictClass::NotTdosDemandShift;
    } else if (v.cost.satisfied && v.deploy.satisfied) {
        v.cls = VerdictClass::UDTdos;
    } else if (v.cost.satisfied) {
        v.cls = VerdictClass::UTdos;
    } else if (v.deploy.satisfied) {
        v.cls = VerdictClass::DTdos;
    } else {
        v.cls = VerdictClass::Normal;
    }
    return v;
}

StateSummary summarize(const SimTrace& trace, const std::string& capability,
                       int first_window, int window_count, const DetectorConfig& cfg) {
    if (first_window < 0 || window_count < cfg.min_windows ||
        first_window + window_count > trace.window_count)
        throw IntervalOutOfRange("summary interval [" + std::to_string(first_window) + ", " +
                                 std::to_string(first_window + window_count) +
                                 ") invalid for a trace of " + std::to_string(trace.window_count) +
                                 " windows (min " + std::to_string(cfg.min_windows) + ")");

    StateSummary s;
    s.capability_id = capability;
    s.first_window = first_window;
    s.window_count = window_count;
    s.na_dist.resize(static_cast<std::size_t>(window_count), 0.0);
    s.nt_dist.resize(static_cast<std::size_t>(window_count), 0.0);
    s.nc_dist.resize(static_cast<std::size_t>(window_count), 0.0);
    s.td_dist.resize(static_cast<std::size_t>(window_count), 0.0);

    for (int w = 0; w < window_count; ++w) {
        const CrownWindow* cw = trace.find_window(first_window + w, capability);
        if (!cw)
            throw IntervalOutOfRange("no window " + std::to_string(first_window + w) +
                                     " for capability '" + capability + "'");
        const auto i = static_cast<std::size_t>(w);
        s.na_dist[i] = static_cast<double>(cw->actions);
        s.nt_dist[i] = static_cast<double>(cw->dependents);
        s.nc_dist[i] = cw->cost;
        s.td_dist[i] = static_cast<double>(cw->supplier_nodes);
    }
    s.na_total = std::accumulate(s.na_dist.begin(), s.na_dist.end(), 0.0);
    s.nt_total = std::accumulate(s.nt_dist.begin(), s.nt_dist.end(), 0.0);
    s.nc_total = std::accumulate(s.nc_dist.begin(), s.nc_dist.end(), 0.0);
    s.td_total = cfg.td_total_is_sum
                     ? std::accumulate(s.td_dist.begin(), s.td_dist.end(), 0.0)
                     : *std::max_element(s.td_dist.begin(), s.td_dist.end());
    return s;
}

LazyClusterResult cluster_productivity(const std::vector<double>& productivity) {
    if (productivity.size() < 2)
        throw TooFewInstances("productivity clustering needs at least 2 instances");

    const std::size_t n = productivity.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return productivity[i] < productivity[j]; });

    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = productivity[order[i]];

    const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : sorted) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double stddev = std::sqrt(var);

    LazyClusterResult result;
    if (stddev == 0.0) return result; // zero-variance guard: nothing to split

    // Exhaustive split: lower group = sorted[0..k), upper = sorted[k..n).
    double best_within = std::numeric_limits<double>::infinity();
    std::size_t best_k = 0;
    for (std::size_t k = 1; k < n; ++k) {
        auto group_ss = [&](std::size_t lo, std::size_t hi) {
            const double m = std::accumulate(sorted.begin() + static_cast<long>(lo),
                                             sorted.begin() + static_cast<long>(hi), 0.0) /
                             static_cast<double>(hi - lo);
            double ss = 0.0;
            for (std::size_t i = lo; i < hi; ++i) ss += (sorted[i] - m) * (sorted[i] - m);
            return ss;
        };
        const double within = group_ss(0, k) + group_ss(k, n);
        if (within < best_within) {
            best_within = within;
            best_k = k;
        }
    }

    const double gap = sorted[best_k] - sorted[best_k - 1];
    result.separation = gap / stddev;
    result.split_value = sorted[best_k];
    if (result.separation > 1.0) {
        for (std::size_t i = 0; i < best_k; ++i) result.flagged.push_back(order[i]);
        std::sort(result.flagged.begin(), result.flagged.end());
    }
    return result;
}

} // namespace tdos
