#include "padfuse/fusion.hpp"

#include "padfuse/errors.hpp"

namespace padfuse {

FusedRates compose_sequential(const MatcherRates& matcher, const PadRates& pad) {
    require_probability(matcher.gar, "gar");
    require_probability(matcher.fmr, "fmr");
    require_probability(matcher.iapmr, "iapmr");
    require_probability(pad.apcer, "apcer");
    require_probability(pad.bpcer, "bpcer");

    // Live samples pass the detector with probability 1-bpcer, spoofs with apcer.
    const double live_pass = 1.0 - pad.bpcer;
    return {matcher.gar * live_pass, matcher.fmr * live_pass, matcher.iapmr * pad.apcer};
}

double gfmr(const FusedRates& fused, double w) {
    require_probability(w, "w");
    return fused.fmr_seq * (1.0 - w) + fused.iapmr_seq * w;
}

double acceptance_rate(const FusedRates& fused, double w, double p_genuine) {
    require_probability(p_genuine, "p_genuine");
    return fused.gar_seq * p_genuine + gfmr(fused, w) * (1.0 - p_genuine);
}

std::vector<FusedPoint> fused_table(const MatcherCharacteristic& matcher,
                                    const ResolvedOperatingPoint& pad_point) {
    std::vector<FusedPoint> table;
    table.reserve(matcher.points().size());
    for (const auto& p : matcher.points()) {
        table.push_back({p.threshold, compose_sequential(p.rates(), pad_point.rates())});
    }
    return table;
}

GrocCurve groc_curve(const MatcherCharacteristic& matcher, const ResolvedOperatingPoint& pad_point,
                     double w) {
    require_probability(w, "w");
    GrocCurve curve{w, pad_point, {}};
    curve.points.reserve(matcher.points().size());
    for (const auto& p : matcher.points()) {
        const auto fused = compose_sequential(p.rates(), pad_point.rates());
        curve.points.push_back({p.threshold, fused.gar_seq, gfmr(fused, w)});
    }
    return curve;
}

GrocCurve individual_groc_curve(const MatcherCharacteristic& matcher, double w) {
    return groc_curve(matcher, ResolvedOperatingPoint::pass_through(), w);
}

}  // namespace padfuse
