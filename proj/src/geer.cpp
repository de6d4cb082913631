#include "padfuse/geer.hpp"

#include <cmath>

#include "padfuse/errors.hpp"

namespace padfuse {

GeerResult geer(const GrocCurve& curve) {
    if (curve.points.empty()) throw Error(ErrorCode::EmptyCurve, "GROC curve has no points");

    const GrocPoint* best = nullptr;
    double best_gap = 0.0;
    // Points ascend in threshold, so keeping the first strict minimum breaks
    // ties toward the smallest threshold.
    for (const auto& p : curve.points) {
        const double gap = std::abs(p.gfmr - (1.0 - p.gar));
        if (best == nullptr || gap < best_gap) {
            best = &p;
            best_gap = gap;
        }
    }
    const double fnr = 1.0 - best->gar;
    return {(best->gfmr + fnr) / 2.0, best->match_threshold, best->gfmr, fnr};
}

std::vector<double> make_w_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(start <= stop) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw Error(ErrorCode::DomainError, "w grid needs finite start <= stop and step > 0");
    }
    const double span = (stop - start) / step;
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9));
    std::vector<double> grid;
    grid.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(start + static_cast<double>(i) * step);
    if (std::abs(grid.back() - stop) <= 1e-9 * std::max(1.0, std::abs(stop))) grid.back() = stop;
    require_w_grid(grid);
    return grid;
}

void require_w_grid(std::span<const double> grid) {
    if (grid.empty()) throw Error(ErrorCode::DomainError, "w grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        require_probability(grid[i], "w grid entry");
        if (i > 0 && grid[i] < grid[i - 1]) {
            throw Error(ErrorCode::DomainError, "w grid must be sorted");
        }
    }
}

GeerSweep geer_sweep(const MatcherCharacteristic& matcher, const ResolvedOperatingPoint& pad_point,
                     std::span<const double> w_grid) {
    require_w_grid(w_grid);
    GeerSweep sweep{{w_grid.begin(), w_grid.end()}, {}, SweepKind::Integrated};
    sweep.geer_values.reserve(w_grid.size());
    for (double w : w_grid) sweep.geer_values.push_back(geer(groc_curve(matcher, pad_point, w)).geer);
    return sweep;
}

GeerSweep individual_eer_sweep(const MatcherCharacteristic& matcher, std::span<const double> w_grid) {
    auto sweep = geer_sweep(matcher, ResolvedOperatingPoint::pass_through(), w_grid);
    sweep.kind = SweepKind::Individual;
    return sweep;
}

WStarResult find_w_star(const GeerSweep& integrated, const GeerSweep& individual) {
    if (integrated.w_grid != individual.w_grid ||
        integrated.geer_values.size() != integrated.w_grid.size() ||
        individual.geer_values.size() != individual.w_grid.size()) {
        throw Error(ErrorCode::GridMismatch, "GEER sweeps do not share the same w grid");
    }
    const auto& w = integrated.w_grid;
    if (w.empty()) throw Error(ErrorCode::EmptyInput, "GEER sweeps are empty");

    double prev = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double d = integrated.geer_values[i] - individual.geer_values[i];
        if (d == 0.0) return {w[i], CrossingKind::Crossing};
        if (i > 0 && (prev < 0.0) != (d < 0.0)) {
            const double fraction = prev / (prev - d);
            return {w[i - 1] + (w[i] - w[i - 1]) * fraction, CrossingKind::Crossing};
        }
        prev = d;
    }
    // No sign change and no zero: the sign of the first entry holds throughout.
    return {std::nullopt, prev > 0.0 ? CrossingKind::IndividualAlwaysBetter
                                     : CrossingKind::IntegratedAlwaysBetter};
}

EmbedDecision embed_decision(const WStarResult& w_star, double w_hat) {
    require_probability(w_hat, "w_hat");
    switch (w_star.crossing_kind) {
        case CrossingKind::Crossing:
            return *w_star.w_star <= w_hat ? EmbedDecision::Embed : EmbedDecision::DoNotEmbed;
        case CrossingKind::IntegratedAlwaysBetter: return EmbedDecision::Embed;
        case CrossingKind::IndividualAlwaysBetter: return EmbedDecision::DoNotEmbed;
    }
    return EmbedDecision::DoNotEmbed;
}

std::string_view to_string(SweepKind kind) {
    return kind == SweepKind::Integrated ? "integrated" : "individual";
}

std::string_view to_string(CrossingKind kind) {
    switch (kind) {
        case CrossingKind::Crossing: return "crossing";
        case CrossingKind::IntegratedAlwaysBetter: return "integrated_always_better";
        case CrossingKind::IndividualAlwaysBetter: return "individual_always_better";
    }
    return "?";
}

std::string_view to_string(EmbedDecision decision) {
    return decision == EmbedDecision::Embed ? "embed" : "do_not_embed";
}

}  // namespace padfuse
