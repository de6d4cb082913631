#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "padfuse/geer.hpp"
#include "padfuse/validation.hpp"

namespace padfuse {

using nlohmann::json;

// ---- score files -----------------------------------------------------------
//
// UTF-8 CSV with the header `klass,liveness_score,match_score`, one record per
// line; klass is genuine, zero_effort or presentation_attack. Blank lines and
// a trailing CR are tolerated. Any other deviation is a located error.

ScoreDataset parse_dataset(std::istream& in, std::string name);
// Dataset name is the file stem. Throws IoError, ParseError or UnknownClass.
ScoreDataset load_dataset(const std::filesystem::path& path);

// Scores are written in shortest round-trip form.
void format_dataset(std::ostream& out, const ScoreDataset& data);
void write_dataset(const ScoreDataset& data, const std::filesystem::path& path);

// ---- command-line value syntax ----------------------------------------------

// "apcer=0.01" or "bpcer=0.05". Throws DomainError.
OperationalPointSpec parse_point_spec(std::string_view text);
// "0,0.25,0.5" or "start:stop:step". Throws DomainError.
std::vector<double> parse_w_values(std::string_view text);

// ---- reports ----------------------------------------------------------------

inline constexpr int kReportFormatVersion = 1;

struct ReportInputs {
    std::vector<std::string> datasets;
    std::optional<OperationalPointSpec> point;
    bool pass_through = false;  // point deliberately disabled
    std::vector<double> w_grid;
    std::optional<double> p_genuine;
    std::optional<double> w_hat;

    bool operator==(const ReportInputs&) const = default;
};

struct CharacteristicsSection {
    PadCharacteristic pad;
    MatcherCharacteristic matcher;

    bool operator==(const CharacteristicsSection&) const = default;
};

struct AcceptanceCurve {
    double w = 0.0;
    double p_genuine = 0.0;
    std::vector<double> match_threshold;
    std::vector<double> acceptance_rate;

    bool operator==(const AcceptanceCurve&) const = default;
};

struct ComposeSection {
    ResolvedOperatingPoint pad_point;
    std::vector<FusedPoint> fused;
    std::vector<GrocCurve> integrated;
    std::vector<GrocCurve> individual;
    std::vector<AcceptanceCurve> acceptance;  // present when p_genuine is given

    bool operator==(const ComposeSection&) const = default;
};

struct GeerSection {
    ResolvedOperatingPoint pad_point;
    GeerSweep integrated;
    GeerSweep individual;
    std::vector<GeerResult> integrated_detail;
    std::vector<GeerResult> individual_detail;
    WStarResult w_star;
    std::optional<EmbedDecision> decision;

    bool operator==(const GeerSection&) const = default;
};

struct DatasetValidation {
    ValidationResult result;  // rows may be dropped to keep reports small
    ModelErrorSummary summary;
    CorrelationReport correlation;

    bool operator==(const DatasetValidation&) const = default;
};

// Per-dataset results plus one summary pooled across all of them.
struct ValidationSection {
    Pooling pooling = Pooling::Pooled;
    ModelErrorSummary summary;
    std::vector<DatasetValidation> datasets;

    bool operator==(const ValidationSection&) const = default;
};

struct ScenarioReport {
    int format_version = kReportFormatVersion;
    ReportInputs inputs;
    std::optional<CharacteristicsSection> characteristics;
    std::optional<ComposeSection> compose;
    std::optional<GeerSection> geer;
    std::optional<ValidationSection> validation;

    bool operator==(const ScenarioReport&) const = default;
};

// JSON fragments. These are the single schema shared by reports and the HTTP
// service. from_json throws ParseError (line 0) on shape errors.
json to_json(const OperationalPointSpec& spec);
json to_json(const ResolvedOperatingPoint& point);
json to_json(const PadCharacteristic& pad);
json to_json(const MatcherCharacteristic& matcher);
json to_json(const FusedRates& rates);
json to_json(const GrocCurve& curve);
json to_json(const GeerSweep& sweep);
json to_json(const WStarResult& w_star);
json to_json(const ModelErrorSummary& summary);
json to_json(const CorrelationReport& report);
json to_json(const CharacteristicsSection& section);
json to_json(const ComposeSection& section);
json to_json(const GeerSection& section);
json to_json(const DatasetValidation& validation);
json to_json(const ValidationSection& section);
json to_json(const ScenarioReport& report);

OperationalPointSpec point_spec_from_json(const json& j);
WStarResult w_star_from_json(const json& j);
ScenarioReport report_from_json(const json& j);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_text(const json& j);
std::string serialize_report(const ScenarioReport& report);
// Throws ParseError on malformed text, VersionMismatch on an unknown version.
ScenarioReport parse_report(std::string_view text);

void write_report(const ScenarioReport& report, const std::filesystem::path& path);
ScenarioReport read_report(const std::filesystem::path& path);

}  // namespace padfuse
