#pragma once

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "padfuse/scores.hpp"

namespace padfuse {

inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPlusInf = std::numeric_limits<double>::infinity();

// Acceptance is always `score > threshold`; a score equal to the threshold
// is rejected. Characteristics are step functions of the threshold.

struct PadRates {
    double apcer = 1.0;
    double bpcer = 0.0;

    bool operator==(const PadRates&) const = default;
};

struct PadPoint {
    double threshold;
    double apcer;
    double bpcer;

    PadRates rates() const { return {apcer, bpcer}; }
    bool operator==(const PadPoint&) const = default;
};

struct MatcherRates {
    double gar = 1.0;
    double fmr = 1.0;
    double iapmr = 1.0;

    bool operator==(const MatcherRates&) const = default;
};

struct MatcherPoint {
    double threshold;
    double gar;
    double fmr;
    double iapmr;

    MatcherRates rates() const { return {gar, fmr, iapmr}; }
    bool operator==(const MatcherPoint&) const = default;
};

// APCER(t)/BPCER(t) of a presentation-attack detector. Points are strictly
// increasing in threshold and always start at the -inf sentinel
// (apcer=1, bpcer=0) and end at the +inf sentinel (apcer=0, bpcer=1).
class PadCharacteristic {
public:
    PadCharacteristic();

    // Validates ordering, range and monotonicity; missing sentinels are added.
    // Throws DomainError on violation.
    static PadCharacteristic from_points(std::vector<PadPoint> points);

    std::span<const PadPoint> points() const { return points_; }

    bool operator==(const PadCharacteristic&) const = default;

private:
    explicit PadCharacteristic(std::vector<PadPoint> points) : points_(std::move(points)) {}

    std::vector<PadPoint> points_;
};

// GAR(t)/FMR(t)/IAPMR(t) of a matcher, with sentinels at -inf (all rates 1)
// and +inf (all rates 0).
class MatcherCharacteristic {
public:
    MatcherCharacteristic();

    static MatcherCharacteristic from_points(std::vector<MatcherPoint> points);

    std::span<const MatcherPoint> points() const { return points_; }

    bool operator==(const MatcherCharacteristic&) const = default;

private:
    explicit MatcherCharacteristic(std::vector<MatcherPoint> points)
        : points_(std::move(points)) {}

    std::vector<MatcherPoint> points_;
};

// Live records (genuine + zero-effort) against presentation attacks, over the
// liveness score. Throws EmptyClass if either side is absent.
PadCharacteristic build_pad_characteristic(const ScoreDataset& data);

// Needs at least one record of every class; throws EmptyClass otherwise.
MatcherCharacteristic build_matcher_characteristic(const ScoreDataset& data);

// Rates of the greatest listed threshold <= t. NaN is a DomainError.
PadRates rates_at(const PadCharacteristic& pad, double t);
MatcherRates rates_at(const MatcherCharacteristic& matcher, double t);

enum class OperatingPointMode { ApcerAt, BpcerAt };

std::string_view to_string(OperatingPointMode mode);  // apcer_at / bpcer_at

struct OperationalPointSpec {
    OperatingPointMode mode = OperatingPointMode::ApcerAt;
    double target = 0.01;

    // Throws DomainError unless 0 < target < 1.
    static OperationalPointSpec apcer_at(double target);
    static OperationalPointSpec bpcer_at(double target);

    bool operator==(const OperationalPointSpec&) const = default;
};

struct ResolvedOperatingPoint {
    double threshold = kMinusInf;
    double apcer = 1.0;
    double bpcer = 0.0;
    // Constrained rate equals the requested target exactly.
    bool exact = true;
    // No finite threshold satisfied the constraint; a sentinel was used.
    bool unreachable = false;

    PadRates rates() const { return {apcer, bpcer}; }

    // The detector disabled: accepts every sample.
    static ResolvedOperatingPoint pass_through() { return {}; }
    bool is_pass_through() const { return threshold == kMinusInf && apcer == 1.0 && bpcer == 0.0; }

    bool operator==(const ResolvedOperatingPoint&) const = default;
};

// ApcerAt(p): smallest threshold with apcer <= p.
// BpcerAt(p): largest threshold with bpcer <= p.
// When only a sentinel qualifies the sentinel is returned with
// exact=false, unreachable=true.
ResolvedOperatingPoint resolve_operating_point(const PadCharacteristic& pad,
                                               const OperationalPointSpec& spec);

// Pointwise mean of several detectors on a shared threshold grid. The inputs
// must share a score scale; that is not checked. Throws EmptyInput on an empty
// list and DomainError on an unsorted grid.
PadCharacteristic average_pad_characteristics(std::span<const PadCharacteristic> pads,
                                              std::span<const double> grid);

}  // namespace padfuse
