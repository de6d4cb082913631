#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "padfuse/fusion.hpp"

namespace padfuse {

// Rates measured by running the real AND-gated decision over joint records:
// accepted iff liveness > s_f_star and match > s_m_star. Throws EmptyClass.
FusedRates empirical_fused_rates(const ScoreDataset& data, double s_f_star, double s_m_star);

// Absolute prediction errors in percentage points.
struct ModelError {
    double d_fmr = 0.0;
    double d_gar = 0.0;
    double d_iapmr = 0.0;

    bool operator==(const ModelError&) const = default;
};

ModelError model_error(const FusedRates& predicted, const FusedRates& empirical);

// Box-plot summary. Quartiles interpolate linearly between order statistics
// at h = (n-1)·p; std uses the n-1 denominator (0 for a single value).
// Outliers lie outside [q1 - 1.5·iqr, q3 + 1.5·iqr]; they are reported and
// still contribute to mean and std.
struct ErrorStats {
    std::size_t count = 0;
    double mean = 0.0;
    double std = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double iqr = 0.0;
    std::vector<double> outliers;

    bool operator==(const ErrorStats&) const = default;
};

// Throws EmptyInput.
ErrorStats error_statistics(std::span<const double> values);

enum class CorrelationFlag { Ok, TooFewSamples, ConstantColumn };

struct ClassCorrelation {
    ScoreClass klass;
    std::size_t count = 0;
    std::optional<double> coefficient;  // Pearson r; absent unless flag == Ok
    CorrelationFlag flag = CorrelationFlag::Ok;

    bool operator==(const ClassCorrelation&) const = default;
};

// Liveness/match score correlation per class, the empirical check of the
// conditional-independence assumptions behind the cascade model.
struct CorrelationReport {
    std::array<ClassCorrelation, 3> classes;

    const ClassCorrelation& of(ScoreClass klass) const {
        return classes[static_cast<std::size_t>(klass)];
    }
    bool operator==(const CorrelationReport&) const = default;
};

CorrelationReport independence_diagnostic(const ScoreDataset& data);

struct ValidationRow {
    double match_threshold;
    FusedRates predicted;
    FusedRates empirical;
    ModelError error;

    bool operator==(const ValidationRow&) const = default;
};

struct ValidationResult {
    std::string dataset;
    OperationalPointSpec spec;
    ResolvedOperatingPoint pad_point;
    std::vector<ValidationRow> rows;  // one per listed matcher threshold

    bool operator==(const ValidationResult&) const = default;
};

// Builds both characteristics from the data, resolves the detector point,
// predicts with compose_sequential and measures with the joint decision at
// every listed matcher threshold.
ValidationResult validate_model(const ScoreDataset& data, const OperationalPointSpec& spec);

struct ModelErrorSummary {
    ErrorStats fmr;
    ErrorStats gar;
    ErrorStats iapmr;

    bool operator==(const ModelErrorSummary&) const = default;
};

ModelErrorSummary summarize(const ValidationResult& result);

// How errors from several validations are combined into one box plot.
enum class Pooling {
    Pooled,          // every row of every validation is one sample
    PerDatasetMean,  // one sample per validation: its mean row error
};

ModelErrorSummary pool_model_errors(std::span<const ValidationResult> results, Pooling pooling);

std::string_view to_string(CorrelationFlag flag);
std::string_view to_string(Pooling pooling);

// Published reference rows. They need the original competition score files
// and are not reproducible from synthetic data.
struct ReferenceErrorRow {
    std::string_view edition;
    std::string_view operating_point;
    std::string_view rate;
    double mean_pp;
    double std_pp;
};

inline constexpr ReferenceErrorRow kReferenceErrorRows[] = {
    {"LivDet2017", "APCER_01", "FMR", 0.0265, 0.023},
    {"LivDet2017", "APCER_01", "GAR", 0.9376, 0.388},
    {"LivDet2017", "APCER_01", "IAPMR", 0.0254, 0.021},
    {"LivDet2017", "BPCER_01", "FMR", 0.0094, 0.011},
    {"LivDet2017", "BPCER_01", "GAR", 0.1532, 0.046},
    {"LivDet2017", "BPCER_01", "IAPMR", 0.1910, 0.150},
    {"LivDet2019", "APCER_01", "FMR", 0.0206, 0.023},
    {"LivDet2019", "APCER_01", "GAR", 0.2911, 0.265},
    {"LivDet2019", "APCER_01", "IAPMR", 0.0475, 0.136},
    {"LivDet2019", "BPCER_01", "FMR", 0.0060, 0.008},
    {"LivDet2019", "BPCER_01", "GAR", 0.1330, 0.092},
    {"LivDet2019", "BPCER_01", "IAPMR", 0.0855, 0.133},
};

// Largest single published error (GAR, APCER_01, LivDet 2017), in pp.
inline constexpr double kReferenceWorstErrorPp = 1.88;
// Published break-even prior for GreenBit + VeriFinger 12 at APCER_01.
inline constexpr double kReferenceWStarGreenBit = 0.20;

}  // namespace padfuse
