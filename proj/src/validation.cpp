#include "padfuse/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "padfuse/errors.hpp"

namespace padfuse {
namespace {

std::size_t class_index(ScoreClass klass) { return static_cast<std::size_t>(klass); }

double percentage_points(double a, double b) { return std::abs(a - b) * 100.0; }

// Linear interpolation between order statistics at h = (n-1)·p.
double quantile_sorted(std::span<const double> sorted, double p) {
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double count_above(const std::vector<double>& sorted, double t) {
    return static_cast<double>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
}

}  // namespace

FusedRates empirical_fused_rates(const ScoreDataset& data, double s_f_star, double s_m_star) {
    for (ScoreClass klass : kAllClasses) require_class(data, klass);

    std::array<std::size_t, 3> accepted{};
    for (const auto& r : data.records()) {
        if (r.liveness_score > s_f_star && r.match_score > s_m_star) ++accepted[class_index(r.klass)];
    }
    const auto& n = data.counts();
    return {static_cast<double>(accepted[0]) / static_cast<double>(n.genuine),
            static_cast<double>(accepted[1]) / static_cast<double>(n.zero_effort),
            static_cast<double>(accepted[2]) / static_cast<double>(n.presentation_attack)};
}

ModelError model_error(const FusedRates& predicted, const FusedRates& empirical) {
    return {percentage_points(predicted.fmr_seq, empirical.fmr_seq),
            percentage_points(predicted.gar_seq, empirical.gar_seq),
            percentage_points(predicted.iapmr_seq, empirical.iapmr_seq)};
}

ErrorStats error_statistics(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values to summarise");

    // Work on the sorted copy so every statistic is independent of input order.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    ErrorStats s;
    s.count = sorted.size();
    s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    if (sorted.size() > 1) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / (n - 1.0));
    }
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    s.iqr = s.q3 - s.q1;
    const double low_fence = s.q1 - 1.5 * s.iqr;
    const double high_fence = s.q3 + 1.5 * s.iqr;
    for (double v : sorted) {
        if (v < low_fence || v > high_fence) s.outliers.push_back(v);
    }
    return s;
}

CorrelationReport independence_diagnostic(const ScoreDataset& data) {
    std::array<std::vector<const ScoreRecord*>, 3> by_class;
    for (const auto& r : data.records()) by_class[class_index(r.klass)].push_back(&r);

    CorrelationReport report;
    for (ScoreClass klass : kAllClasses) {
        const auto& records = by_class[class_index(klass)];
        auto& out = report.classes[class_index(klass)];
        out.klass = klass;
        out.count = records.size();
        if (records.size() < 2) {
            out.flag = CorrelationFlag::TooFewSamples;
            continue;
        }
        const double n = static_cast<double>(records.size());
        double mean_l = 0.0, mean_m = 0.0;
        for (const auto* r : records) {
            mean_l += r->liveness_score;
            mean_m += r->match_score;
        }
        mean_l /= n;
        mean_m /= n;
        double sll = 0.0, smm = 0.0, slm = 0.0;
        for (const auto* r : records) {
            const double dl = r->liveness_score - mean_l;
            const double dm = r->match_score - mean_m;
            sll += dl * dl;
            smm += dm * dm;
            slm += dl * dm;
        }
        if (sll == 0.0 || smm == 0.0) {
            out.flag = CorrelationFlag::ConstantColumn;
            continue;
        }
        out.coefficient = std::clamp(slm / std::sqrt(sll * smm), -1.0, 1.0);
    }
    return report;
}

ValidationResult validate_model(const ScoreDataset& data, const OperationalPointSpec& spec) {
    const auto pad = build_pad_characteristic(data);
    const auto matcher = build_matcher_characteristic(data);

    ValidationResult result;
    result.dataset = data.name();
    result.spec = spec;
    result.pad_point = resolve_operating_point(pad, spec);

    // Match scores of the records the detector lets through, per class.
    std::array<std::vector<double>, 3> passed;
    for (const auto& r : data.records()) {
        if (r.liveness_score > result.pad_point.threshold) {
            passed[class_index(r.klass)].push_back(r.match_score);
        }
    }
    for (auto& v : passed) std::sort(v.begin(), v.end());
    const auto& n = data.counts();

    result.rows.reserve(matcher.points().size());
    for (const auto& p : matcher.points()) {
        ValidationRow row;
        row.match_threshold = p.threshold;
        row.predicted = compose_sequential(p.rates(), result.pad_point.rates());
        row.empirical = {count_above(passed[0], p.threshold) / static_cast<double>(n.genuine),
                         count_above(passed[1], p.threshold) / static_cast<double>(n.zero_effort),
                         count_above(passed[2], p.threshold) /
                             static_cast<double>(n.presentation_attack)};
        row.error = model_error(row.predicted, row.empirical);
        result.rows.push_back(row);
    }
    return result;
}

ModelErrorSummary summarize(const ValidationResult& result) {
    return pool_model_errors(std::span(&result, 1), Pooling::Pooled);
}

ModelErrorSummary pool_model_errors(std::span<const ValidationResult> results, Pooling pooling) {
    std::vector<double> fmr, gar, iapmr;
    for (const auto& result : results) {
        if (pooling == Pooling::Pooled) {
            for (const auto& row : result.rows) {
                fmr.push_back(row.error.d_fmr);
                gar.push_back(row.error.d_gar);
                iapmr.push_back(row.error.d_iapmr);
            }
        } else if (!result.rows.empty()) {
            ModelError sum;
            for (const auto& row : result.rows) {
                sum.d_fmr += row.error.d_fmr;
                sum.d_gar += row.error.d_gar;
                sum.d_iapmr += row.error.d_iapmr;
            }
            const double n = static_cast<double>(result.rows.size());
            fmr.push_back(sum.d_fmr / n);
            gar.push_back(sum.d_gar / n);
            iapmr.push_back(sum.d_iapmr / n);
        }
    }
    return {error_statistics(fmr), error_statistics(gar), error_statistics(iapmr)};
}

std::string_view to_string(CorrelationFlag flag) {
    switch (flag) {
        case CorrelationFlag::Ok: return "ok";
        case CorrelationFlag::TooFewSamples: return "too_few_samples";
        case CorrelationFlag::ConstantColumn: return "constant_column";
    }
    return "?";
}

std::string_view to_string(Pooling pooling) {
    return pooling == Pooling::Pooled ? "pooled" : "per_dataset_mean";
}

}  // namespace padfuse
