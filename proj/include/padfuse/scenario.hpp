#pragma once

#include <optional>
#include <span>

#include "padfuse/io.hpp"

namespace padfuse {

// A dataset together with both of its characteristics, built once.
struct AnalyzedDataset {
    ScoreDataset data;
    PadCharacteristic pad;
    MatcherCharacteristic matcher;
};

AnalyzedDataset analyze(ScoreDataset data);

// The report sections behind every CLI command and HTTP endpoint. An absent
// spec means the pass-through detector.
ResolvedOperatingPoint resolve_point(const AnalyzedDataset& ds,
                                     const std::optional<OperationalPointSpec>& spec);

CharacteristicsSection run_characteristics(const AnalyzedDataset& ds);

ComposeSection run_compose(const AnalyzedDataset& ds, const std::optional<OperationalPointSpec>& spec,
                           std::span<const double> w_values, std::optional<double> p_genuine);

GeerSection run_geer(const AnalyzedDataset& ds, const std::optional<OperationalPointSpec>& spec,
                     std::span<const double> w_grid, std::optional<double> w_hat);

ValidationSection run_validation(std::span<const ScoreDataset> datasets, const OperationalPointSpec& spec,
                                 Pooling pooling, bool include_rows);

}  // namespace padfuse
