#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "padfuse/fusion.hpp"

namespace padfuse {

struct GeerResult {
    double geer = 0.0;
    double tau_star = 0.0;     // match threshold, always a listed point of the curve
    double gfmr_at_tau = 0.0;
    double fnr_at_tau = 0.0;   // 1 - gar

    bool operator==(const GeerResult&) const = default;
};

// Global equal error rate: at the listed threshold minimising
// |gfmr - (1 - gar)| (ties to the smallest threshold), the mean of the two.
// Throws EmptyCurve.
GeerResult geer(const GrocCurve& curve);

enum class SweepKind { Integrated, Individual };

struct GeerSweep {
    std::vector<double> w_grid;
    std::vector<double> geer_values;
    SweepKind kind = SweepKind::Integrated;

    bool operator==(const GeerSweep&) const = default;
};

// Inclusive grid start, start+step, ..., up to stop. Each entry is computed
// as start + i·step (no accumulated drift); the last entry is clamped to stop
// when it lands within rounding of it. Throws DomainError on bad bounds.
std::vector<double> make_w_grid(double start, double stop, double step);

// Throws DomainError unless the grid is non-empty, sorted and inside [0,1].
void require_w_grid(std::span<const double> grid);

GeerSweep geer_sweep(const MatcherCharacteristic& matcher, const ResolvedOperatingPoint& pad_point,
                     std::span<const double> w_grid);

GeerSweep individual_eer_sweep(const MatcherCharacteristic& matcher, std::span<const double> w_grid);

enum class CrossingKind { Crossing, IntegratedAlwaysBetter, IndividualAlwaysBetter };

struct WStarResult {
    std::optional<double> w_star;
    CrossingKind crossing_kind = CrossingKind::IndividualAlwaysBetter;

    bool operator==(const WStarResult&) const = default;
};

// Break-even attack prior: first zero of integrated - individual over the
// shared grid, linearly interpolated between grid points. Throws GridMismatch.
WStarResult find_w_star(const GeerSweep& integrated, const GeerSweep& individual);

enum class EmbedDecision { Embed, DoNotEmbed };

// Embed the detector iff the designer's attack prior w_hat reaches w*.
EmbedDecision embed_decision(const WStarResult& w_star, double w_hat);

std::string_view to_string(SweepKind kind);
std::string_view to_string(CrossingKind kind);
std::string_view to_string(EmbedDecision decision);

}  // namespace padfuse
