#include "padfuse/scenario.hpp"

#include "padfuse/errors.hpp"

namespace padfuse {

AnalyzedDataset analyze(ScoreDataset data) {
    auto pad = build_pad_characteristic(data);
    auto matcher = build_matcher_characteristic(data);
    return {std::move(data), std::move(pad), std::move(matcher)};
}

ResolvedOperatingPoint resolve_point(const AnalyzedDataset& ds,
                                     const std::optional<OperationalPointSpec>& spec) {
    return spec ? resolve_operating_point(ds.pad, *spec) : ResolvedOperatingPoint::pass_through();
}

CharacteristicsSection run_characteristics(const AnalyzedDataset& ds) { return {ds.pad, ds.matcher}; }

ComposeSection run_compose(const AnalyzedDataset& ds, const std::optional<OperationalPointSpec>& spec,
                           std::span<const double> w_values, std::optional<double> p_genuine) {
    if (w_values.empty()) throw Error(ErrorCode::DomainError, "at least one w value is required");
    if (p_genuine) require_probability(*p_genuine, "p_genuine");

    ComposeSection s;
    s.pad_point = resolve_point(ds, spec);
    s.fused = fused_table(ds.matcher, s.pad_point);
    for (double w : w_values) {
        s.integrated.push_back(groc_curve(ds.matcher, s.pad_point, w));
        s.individual.push_back(individual_groc_curve(ds.matcher, w));
        if (p_genuine) {
            AcceptanceCurve a{w, *p_genuine, {}, {}};
            for (const auto& f : s.fused) {
                a.match_threshold.push_back(f.match_threshold);
                a.acceptance_rate.push_back(acceptance_rate(f.rates, w, *p_genuine));
            }
            s.acceptance.push_back(std::move(a));
        }
    }
    return s;
}

GeerSection run_geer(const AnalyzedDataset& ds, const std::optional<OperationalPointSpec>& spec,
                     std::span<const double> w_grid, std::optional<double> w_hat) {
    if (w_hat) require_probability(*w_hat, "w_hat");

    GeerSection s;
    s.pad_point = resolve_point(ds, spec);
    s.integrated = geer_sweep(ds.matcher, s.pad_point, w_grid);
    s.individual = individual_eer_sweep(ds.matcher, w_grid);
    for (double w : w_grid) {
        s.integrated_detail.push_back(geer(groc_curve(ds.matcher, s.pad_point, w)));
        s.individual_detail.push_back(geer(individual_groc_curve(ds.matcher, w)));
    }
    s.w_star = find_w_star(s.integrated, s.individual);
    if (w_hat) s.decision = embed_decision(s.w_star, *w_hat);
    return s;
}

ValidationSection run_validation(std::span<const ScoreDataset> datasets, const OperationalPointSpec& spec,
                                 Pooling pooling, bool include_rows) {
    if (datasets.empty()) throw Error(ErrorCode::EmptyInput, "no datasets to validate");

    std::vector<ValidationResult> results;
    for (const auto& data : datasets) results.push_back(validate_model(data, spec));

    ValidationSection s;
    s.pooling = pooling;
    s.summary = pool_model_errors(results, pooling);
    for (std::size_t i = 0; i < results.size(); ++i) {
        DatasetValidation dv;
        dv.summary = summarize(results[i]);
        dv.correlation = independence_diagnostic(datasets[i]);
        dv.result = std::move(results[i]);
        if (!include_rows) dv.result.rows.clear();
        s.datasets.push_back(std::move(dv));
    }
    return s;
}

}  // namespace padfuse
