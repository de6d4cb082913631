#pragma once

#include <vector>

#include "padfuse/roc.hpp"

namespace padfuse {

// Rates of the AND-gated cascade of detector and matcher. The cascade order
// does not matter: both orders reduce to the same three products.
struct FusedRates {
    double gar_seq = 0.0;
    double fmr_seq = 0.0;
    double iapmr_seq = 0.0;

    bool operator==(const FusedRates&) const = default;
};

// gar·(1-bpcer), fmr·(1-bpcer), iapmr·apcer. Inputs outside [0,1] throw DomainError.
FusedRates compose_sequential(const MatcherRates& matcher, const PadRates& pad);

// Global false match rate: zero-effort and attack acceptance mixed by the
// attack prior w = P(spoof | impostor).
double gfmr(const FusedRates& fused, double w);

// Overall acceptance rate of a trial stream with P(genuine) = p_genuine.
double acceptance_rate(const FusedRates& fused, double w, double p_genuine);

struct FusedPoint {
    double match_threshold;
    FusedRates rates;

    bool operator==(const FusedPoint&) const = default;
};

// compose_sequential at every listed matcher threshold.
std::vector<FusedPoint> fused_table(const MatcherCharacteristic& matcher,
                                    const ResolvedOperatingPoint& pad_point);

struct GrocPoint {
    double match_threshold;
    double gar;
    double gfmr;

    bool operator==(const GrocPoint&) const = default;
};

// GAR against GFMR as the match threshold sweeps, at a fixed detector point
// and attack prior. Points ascend in threshold; both rates are non-increasing.
struct GrocCurve {
    double w = 0.0;
    ResolvedOperatingPoint pad_point;
    std::vector<GrocPoint> points;

    bool is_individual() const { return pad_point.is_pass_through(); }
    bool operator==(const GrocCurve&) const = default;
};

GrocCurve groc_curve(const MatcherCharacteristic& matcher, const ResolvedOperatingPoint& pad_point,
                     double w);

// The matcher alone, i.e. groc_curve with the pass-through detector.
GrocCurve individual_groc_curve(const MatcherCharacteristic& matcher, double w);

}  // namespace padfuse
