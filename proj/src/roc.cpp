#include "padfuse/roc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "padfuse/errors.hpp"

namespace padfuse {
namespace {

// Fraction of sorted `values` strictly above t.
double fraction_above(const std::vector<double>& sorted, double t) {
    auto first_above = std::upper_bound(sorted.begin(), sorted.end(), t);
    return static_cast<double>(sorted.end() - first_above) / static_cast<double>(sorted.size());
}

// Fraction of sorted `values` at or below t.
double fraction_at_or_below(const std::vector<double>& sorted, double t) {
    auto first_above = std::upper_bound(sorted.begin(), sorted.end(), t);
    return static_cast<double>(first_above - sorted.begin()) / static_cast<double>(sorted.size());
}

std::vector<double> sorted_copy(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Listed thresholds: every distinct score, duplicates collapsed.
std::vector<double> unique_thresholds(std::vector<double> scores) {
    std::sort(scores.begin(), scores.end());
    scores.erase(std::unique(scores.begin(), scores.end()), scores.end());
    return scores;
}

void require_rate(double value, const char* name, std::size_t index) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::DomainError, std::string(name) + " at point " +
                                                std::to_string(index) + " is outside [0, 1]");
    }
}

template <typename Point>
void require_increasing_thresholds(const std::vector<Point>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (std::isnan(points[i].threshold)) {
            throw Error(ErrorCode::DomainError, "threshold at point " + std::to_string(i) + " is NaN");
        }
        if (i > 0 && !(points[i - 1].threshold < points[i].threshold)) {
            throw Error(ErrorCode::DomainError,
                        "thresholds must be strictly increasing (point " + std::to_string(i) + ")");
        }
    }
}

template <typename Point>
std::size_t step_index(std::span<const Point> points, double t) {
    if (std::isnan(t)) throw Error(ErrorCode::DomainError, "threshold query is NaN");
    auto it = std::upper_bound(points.begin(), points.end(), t,
                               [](double value, const Point& p) { return value < p.threshold; });
    // points.front() is the -inf sentinel, so `it` is never begin().
    return static_cast<std::size_t>(it - points.begin()) - 1;
}

}  // namespace

PadCharacteristic::PadCharacteristic()
    : points_{{kMinusInf, 1.0, 0.0}, {kPlusInf, 0.0, 1.0}} {}

PadCharacteristic PadCharacteristic::from_points(std::vector<PadPoint> points) {
    require_increasing_thresholds(points);
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_rate(points[i].apcer, "apcer", i);
        require_rate(points[i].bpcer, "bpcer", i);
        if (i > 0 && (points[i].apcer > points[i - 1].apcer || points[i].bpcer < points[i - 1].bpcer)) {
            throw Error(ErrorCode::DomainError,
                        "pad characteristic is not monotone at point " + std::to_string(i));
        }
    }
    if (points.empty() || points.front().threshold != kMinusInf) {
        points.insert(points.begin(), PadPoint{kMinusInf, 1.0, 0.0});
    } else if (points.front().apcer != 1.0 || points.front().bpcer != 0.0) {
        throw Error(ErrorCode::DomainError, "-inf sentinel must have apcer=1, bpcer=0");
    }
    if (points.back().threshold != kPlusInf) {
        points.push_back(PadPoint{kPlusInf, 0.0, 1.0});
    } else if (points.back().apcer != 0.0 || points.back().bpcer != 1.0) {
        throw Error(ErrorCode::DomainError, "+inf sentinel must have apcer=0, bpcer=1");
    }
    return PadCharacteristic(std::move(points));
}

MatcherCharacteristic::MatcherCharacteristic()
    : points_{{kMinusInf, 1.0, 1.0, 1.0}, {kPlusInf, 0.0, 0.0, 0.0}} {}

MatcherCharacteristic MatcherCharacteristic::from_points(std::vector<MatcherPoint> points) {
    require_increasing_thresholds(points);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        require_rate(p.gar, "gar", i);
        require_rate(p.fmr, "fmr", i);
        require_rate(p.iapmr, "iapmr", i);
        if (i > 0) {
            const auto& q = points[i - 1];
            if (p.gar > q.gar || p.fmr > q.fmr || p.iapmr > q.iapmr) {
                throw Error(ErrorCode::DomainError,
                            "matcher characteristic is not monotone at point " + std::to_string(i));
            }
        }
    }
    if (points.empty() || points.front().threshold != kMinusInf) {
        points.insert(points.begin(), MatcherPoint{kMinusInf, 1.0, 1.0, 1.0});
    } else if (points.front().rates() != MatcherRates{1.0, 1.0, 1.0}) {
        throw Error(ErrorCode::DomainError, "-inf sentinel must have all rates equal to 1");
    }
    if (points.back().threshold != kPlusInf) {
        points.push_back(MatcherPoint{kPlusInf, 0.0, 0.0, 0.0});
    } else if (points.back().rates() != MatcherRates{0.0, 0.0, 0.0}) {
        throw Error(ErrorCode::DomainError, "+inf sentinel must have all rates equal to 0");
    }
    return MatcherCharacteristic(std::move(points));
}

PadCharacteristic build_pad_characteristic(const ScoreDataset& data) {
    std::vector<double> live, fake, all;
    live.reserve(data.counts().live());
    fake.reserve(data.counts().presentation_attack);
    all.reserve(data.size());
    for (const auto& r : data.records()) {
        (is_live(r.klass) ? live : fake).push_back(r.liveness_score);
        all.push_back(r.liveness_score);
    }
    if (live.empty()) {
        throw Error(ErrorCode::EmptyClass, "dataset '" + data.name() + "' has no live records");
    }
    if (fake.empty()) {
        throw Error(ErrorCode::EmptyClass,
                    "dataset '" + data.name() + "' has no presentation_attack records");
    }
    live = sorted_copy(std::move(live));
    fake = sorted_copy(std::move(fake));

    std::vector<PadPoint> points;
    const auto thresholds = unique_thresholds(std::move(all));
    points.reserve(thresholds.size() + 2);
    points.push_back({kMinusInf, 1.0, 0.0});
    for (double t : thresholds) {
        points.push_back({t, fraction_above(fake, t), fraction_at_or_below(live, t)});
    }
    points.push_back({kPlusInf, 0.0, 1.0});
    return PadCharacteristic::from_points(std::move(points));
}

MatcherCharacteristic build_matcher_characteristic(const ScoreDataset& data) {
    for (ScoreClass klass : kAllClasses) require_class(data, klass);

    std::vector<double> by_class[3], all;
    all.reserve(data.size());
    for (const auto& r : data.records()) {
        by_class[static_cast<int>(r.klass)].push_back(r.match_score);
        all.push_back(r.match_score);
    }
    for (auto& v : by_class) v = sorted_copy(std::move(v));
    const auto& genuine = by_class[static_cast<int>(ScoreClass::Genuine)];
    const auto& zero_effort = by_class[static_cast<int>(ScoreClass::ZeroEffort)];
    const auto& attack = by_class[static_cast<int>(ScoreClass::PresentationAttack)];

    std::vector<MatcherPoint> points;
    const auto thresholds = unique_thresholds(std::move(all));
    points.reserve(thresholds.size() + 2);
    points.push_back({kMinusInf, 1.0, 1.0, 1.0});
    for (double t : thresholds) {
        points.push_back({t, fraction_above(genuine, t), fraction_above(zero_effort, t),
                          fraction_above(attack, t)});
    }
    points.push_back({kPlusInf, 0.0, 0.0, 0.0});
    return MatcherCharacteristic::from_points(std::move(points));
}

PadRates rates_at(const PadCharacteristic& pad, double t) {
    return pad.points()[step_index(pad.points(), t)].rates();
}

MatcherRates rates_at(const MatcherCharacteristic& matcher, double t) {
    return matcher.points()[step_index(matcher.points(), t)].rates();
}

std::string_view to_string(OperatingPointMode mode) {
    return mode == OperatingPointMode::ApcerAt ? "apcer_at" : "bpcer_at";
}

OperationalPointSpec OperationalPointSpec::apcer_at(double target) {
    if (!(target > 0.0 && target < 1.0)) {
        throw Error(ErrorCode::DomainError, "operating point target must lie strictly in (0, 1)");
    }
    return {OperatingPointMode::ApcerAt, target};
}

OperationalPointSpec OperationalPointSpec::bpcer_at(double target) {
    auto spec = apcer_at(target);
    spec.mode = OperatingPointMode::BpcerAt;
    return spec;
}

ResolvedOperatingPoint resolve_operating_point(const PadCharacteristic& pad,
                                               const OperationalPointSpec& spec) {
    if (!(spec.target > 0.0 && spec.target < 1.0)) {
        throw Error(ErrorCode::DomainError, "operating point target must lie strictly in (0, 1)");
    }
    const auto points = pad.points();
    const PadPoint* chosen = nullptr;
    bool unreachable = false;
    double achieved = 0.0;

    if (spec.mode == OperatingPointMode::ApcerAt) {
        // apcer is non-increasing: the first qualifying point is the smallest threshold.
        auto it = std::find_if(points.begin(), points.end(),
                               [&](const PadPoint& p) { return p.apcer <= spec.target; });
        chosen = &*it;  // the +inf sentinel always qualifies
        unreachable = (it == points.end() - 1);
        achieved = chosen->apcer;
    } else {
        auto it = std::find_if(points.rbegin(), points.rend(),
                               [&](const PadPoint& p) { return p.bpcer <= spec.target; });
        chosen = &*it;  // the -inf sentinel always qualifies
        unreachable = (it == points.rend() - 1);
        achieved = chosen->bpcer;
    }

    ResolvedOperatingPoint out;
    out.threshold = chosen->threshold;
    out.apcer = chosen->apcer;
    out.bpcer = chosen->bpcer;
    out.unreachable = unreachable;
    out.exact = !unreachable && achieved == spec.target;
    return out;
}

PadCharacteristic average_pad_characteristics(std::span<const PadCharacteristic> pads,
                                              std::span<const double> grid) {
    if (pads.empty()) throw Error(ErrorCode::EmptyInput, "no characteristics to average");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::isnan(grid[i]) || (i > 0 && grid[i] < grid[i - 1])) {
            throw Error(ErrorCode::DomainError, "averaging grid must be sorted and free of NaN");
        }
    }

    const double n = static_cast<double>(pads.size());
    std::vector<PadPoint> points;
    points.reserve(grid.size());
    for (double t : grid) {
        if (std::isinf(t)) continue;  // sentinels are re-added by from_points
        if (!points.empty() && points.back().threshold == t) continue;
        double apcer = 0.0;
        double bpcer = 0.0;
        for (const auto& pad : pads) {
            const auto r = rates_at(pad, t);
            apcer += r.apcer;
            bpcer += r.bpcer;
        }
        points.push_back({t, apcer / n, bpcer / n});
    }
    return PadCharacteristic::from_points(std::move(points));
}

}  // namespace padfuse
