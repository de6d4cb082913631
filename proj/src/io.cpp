#include "padfuse/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "padfuse/errors.hpp"

namespace padfuse {
namespace {

constexpr std::string_view kHeader = "klass,liveness_score,match_score";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string shortest(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

// ---- JSON helpers -----------------------------------------------------------

// JSON has no infinities; sentinel thresholds travel as strings.
json num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double get_num(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf") return kPlusInf;
        if (s == "-inf") return kMinusInf;
    }
    throw json::type_error::create(302, "expected a number or \"inf\"/\"-inf\"", &j);
}

json rate(double fraction) { return {{"fraction", fraction}, {"pp", fraction * 100.0}}; }
double get_rate(const json& j) { return get_num(j.at("fraction")); }

json column(const std::vector<double>& values) {
    json a = json::array();
    for (double v : values) a.push_back(num(v));
    return a;
}

std::vector<double> get_column(const json& j) {
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(get_num(v));
    return out;
}

template <typename T, typename F>
std::vector<double> project(const std::vector<T>& items, F field) {
    std::vector<double> out;
    out.reserve(items.size());
    for (const auto& item : items) out.push_back(field(item));
    return out;
}

template <typename T>
json optional_num(const std::optional<T>& v) {
    return v ? num(*v) : json(nullptr);
}

std::optional<double> get_optional_num(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return get_num(j.at(key));
}

void require_same_length(std::initializer_list<std::size_t> sizes, const char* what) {
    for (auto s : sizes) {
        if (s != *sizes.begin()) {
            throw ParseError(ErrorCode::ParseError, 0, std::string(what) + ": column lengths differ");
        }
    }
}

template <typename E>
E enum_from(const json& j, std::initializer_list<E> values) {
    const auto& s = j.get_ref<const std::string&>();
    for (E e : values) {
        if (to_string(e) == s) return e;
    }
    throw ParseError(ErrorCode::ParseError, 0, "unknown enumerator '" + s + "'");
}

ResolvedOperatingPoint resolved_from_json(const json& j) {
    ResolvedOperatingPoint p;
    p.threshold = get_num(j.at("threshold"));
    p.apcer = get_rate(j.at("apcer"));
    p.bpcer = get_rate(j.at("bpcer"));
    p.exact = j.at("exact").get<bool>();
    p.unreachable = j.at("unreachable").get<bool>();
    return p;
}

PadCharacteristic pad_from_json(const json& j) {
    const auto t = get_column(j.at("threshold"));
    const auto apcer = get_column(j.at("apcer"));
    const auto bpcer = get_column(j.at("bpcer"));
    require_same_length({t.size(), apcer.size(), bpcer.size()}, "pad characteristic");
    std::vector<PadPoint> points;
    for (std::size_t i = 0; i < t.size(); ++i) points.push_back({t[i], apcer[i], bpcer[i]});
    return PadCharacteristic::from_points(std::move(points));
}

MatcherCharacteristic matcher_from_json(const json& j) {
    const auto t = get_column(j.at("threshold"));
    const auto gar = get_column(j.at("gar"));
    const auto fmr = get_column(j.at("fmr"));
    const auto iapmr = get_column(j.at("iapmr"));
    require_same_length({t.size(), gar.size(), fmr.size(), iapmr.size()}, "matcher characteristic");
    std::vector<MatcherPoint> points;
    for (std::size_t i = 0; i < t.size(); ++i) points.push_back({t[i], gar[i], fmr[i], iapmr[i]});
    return MatcherCharacteristic::from_points(std::move(points));
}


GrocCurve curve_from_json(const json& j) {
    GrocCurve c;
    c.w = get_num(j.at("w"));
    c.pad_point = resolved_from_json(j.at("pad_point"));
    const auto t = get_column(j.at("match_threshold"));
    const auto gar = get_column(j.at("gar"));
    const auto g = get_column(j.at("gfmr"));
    require_same_length({t.size(), gar.size(), g.size()}, "GROC curve");
    for (std::size_t i = 0; i < t.size(); ++i) c.points.push_back({t[i], gar[i], g[i]});
    return c;
}

GeerSweep sweep_from_json(const json& j) {
    GeerSweep s;
    s.kind = enum_from(j.at("kind"), {SweepKind::Integrated, SweepKind::Individual});
    s.w_grid = get_column(j.at("w_grid"));
    s.geer_values = get_column(j.at("geer"));
    require_same_length({s.w_grid.size(), s.geer_values.size()}, "GEER sweep");
    return s;
}

json geer_details(const std::vector<GeerResult>& details) {
    return {{"geer", column(project(details, [](const GeerResult& r) { return r.geer; }))},
            {"tau_star", column(project(details, [](const GeerResult& r) { return r.tau_star; }))},
            {"gfmr_at_tau", column(project(details, [](const GeerResult& r) { return r.gfmr_at_tau; }))},
            {"fnr_at_tau", column(project(details, [](const GeerResult& r) { return r.fnr_at_tau; }))}};
}

std::vector<GeerResult> geer_details_from_json(const json& j) {
    const auto g = get_column(j.at("geer"));
    const auto tau = get_column(j.at("tau_star"));
    const auto gfmr_col = get_column(j.at("gfmr_at_tau"));
    const auto fnr = get_column(j.at("fnr_at_tau"));
    require_same_length({g.size(), tau.size(), gfmr_col.size(), fnr.size()}, "GEER details");
    std::vector<GeerResult> out;
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back({g[i], tau[i], gfmr_col[i], fnr[i]});
    return out;
}

json stats_json(const ErrorStats& s) {
    return {{"count", s.count}, {"mean_pp", s.mean},    {"std_pp", s.std},
            {"q1_pp", s.q1},    {"median_pp", s.median}, {"q3_pp", s.q3},
            {"iqr_pp", s.iqr},  {"outliers_pp", s.outliers}};
}

ErrorStats stats_from_json(const json& j) {
    ErrorStats s;
    s.count = j.at("count").get<std::size_t>();
    s.mean = j.at("mean_pp").get<double>();
    s.std = j.at("std_pp").get<double>();
    s.q1 = j.at("q1_pp").get<double>();
    s.median = j.at("median_pp").get<double>();
    s.q3 = j.at("q3_pp").get<double>();
    s.iqr = j.at("iqr_pp").get<double>();
    s.outliers = j.at("outliers_pp").get<std::vector<double>>();
    return s;
}

ModelErrorSummary summary_from_json(const json& j) {
    return {stats_from_json(j.at("fmr")), stats_from_json(j.at("gar")), stats_from_json(j.at("iapmr"))};
}

CorrelationReport correlation_from_json(const json& j) {
    CorrelationReport r;
    for (ScoreClass klass : kAllClasses) {
        const auto& c = j.at(std::string(to_string(klass)));
        auto& out = r.classes[static_cast<std::size_t>(klass)];
        out.klass = klass;
        out.count = c.at("count").get<std::size_t>();
        out.flag = enum_from(c.at("flag"), {CorrelationFlag::Ok, CorrelationFlag::TooFewSamples,
                                            CorrelationFlag::ConstantColumn});
        out.coefficient = get_optional_num(c, "coefficient");
    }
    return r;
}

json validation_rows(const std::vector<ValidationRow>& rows) {
    using R = ValidationRow;
    return {
        {"match_threshold", column(project(rows, [](const R& r) { return r.match_threshold; }))},
        {"predicted_gar_seq", column(project(rows, [](const R& r) { return r.predicted.gar_seq; }))},
        {"predicted_fmr_seq", column(project(rows, [](const R& r) { return r.predicted.fmr_seq; }))},
        {"predicted_iapmr_seq", column(project(rows, [](const R& r) { return r.predicted.iapmr_seq; }))},
        {"empirical_gar_seq", column(project(rows, [](const R& r) { return r.empirical.gar_seq; }))},
        {"empirical_fmr_seq", column(project(rows, [](const R& r) { return r.empirical.fmr_seq; }))},
        {"empirical_iapmr_seq", column(project(rows, [](const R& r) { return r.empirical.iapmr_seq; }))},
        {"d_gar_pp", column(project(rows, [](const R& r) { return r.error.d_gar; }))},
        {"d_fmr_pp", column(project(rows, [](const R& r) { return r.error.d_fmr; }))},
        {"d_iapmr_pp", column(project(rows, [](const R& r) { return r.error.d_iapmr; }))},
    };
}

std::vector<ValidationRow> validation_rows_from_json(const json& j) {
    const auto t = get_column(j.at("match_threshold"));
    const auto pg = get_column(j.at("predicted_gar_seq"));
    const auto pf = get_column(j.at("predicted_fmr_seq"));
    const auto pi = get_column(j.at("predicted_iapmr_seq"));
    const auto eg = get_column(j.at("empirical_gar_seq"));
    const auto ef = get_column(j.at("empirical_fmr_seq"));
    const auto ei = get_column(j.at("empirical_iapmr_seq"));
    const auto dg = get_column(j.at("d_gar_pp"));
    const auto df = get_column(j.at("d_fmr_pp"));
    const auto di = get_column(j.at("d_iapmr_pp"));
    require_same_length({t.size(), pg.size(), pf.size(), pi.size(), eg.size(), ef.size(), ei.size(),
                         dg.size(), df.size(), di.size()},
                        "validation rows");
    std::vector<ValidationRow> rows;
    for (std::size_t i = 0; i < t.size(); ++i) {
        rows.push_back({t[i], {pg[i], pf[i], pi[i]}, {eg[i], ef[i], ei[i]}, {df[i], dg[i], di[i]}});
    }
    return rows;
}

}  // namespace

// ---- score files ----------------------------------------------------------------

ScoreDataset parse_dataset(std::istream& in, std::string name) {
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    std::vector<ScoreRecord> records;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (line_no == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
        if (text.empty()) continue;
        if (!seen_header) {
            if (text != kHeader) {
                throw ParseError(ErrorCode::ParseError, line_no,
                                 "expected header '" + std::string(kHeader) + "'");
            }
            seen_header = true;
            continue;
        }

        std::string_view fields[3];
        std::size_t n_fields = 0;
        std::string_view rest = text;
        while (true) {
            const auto comma = rest.find(',');
            if (n_fields == 3) {
                n_fields = 4;
                break;
            }
            fields[n_fields++] = trim(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (n_fields != 3) {
            throw ParseError(ErrorCode::ParseError, line_no, "expected 3 comma-separated fields");
        }
        const auto klass = parse_score_class(fields[0]);
        if (!klass) {
            throw ParseError(ErrorCode::UnknownClass, line_no,
                             "unknown class '" + std::string(fields[0]) + "'");
        }
        const auto liveness = parse_double(fields[1]);
        const auto match = parse_double(fields[2]);
        if (!liveness || !std::isfinite(*liveness)) {
            throw ParseError(ErrorCode::ParseError, line_no,
                             "liveness_score '" + std::string(fields[1]) + "' is not a finite number");
        }
        if (!match || !std::isfinite(*match)) {
            throw ParseError(ErrorCode::ParseError, line_no,
                             "match_score '" + std::string(fields[2]) + "' is not a finite number");
        }
        records.push_back({*klass, *liveness, *match});
    }
    if (in.bad()) throw Error(ErrorCode::IoError, "read failure in '" + name + "'");
    if (!seen_header) throw ParseError(ErrorCode::ParseError, line_no + 1, "missing header");
    return ScoreDataset(std::move(name), std::move(records));
}

ScoreDataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    return parse_dataset(in, path.stem().string());
}

void format_dataset(std::ostream& out, const ScoreDataset& data) {
    out << kHeader << '\n';
    for (const auto& r : data.records()) {
        out << to_string(r.klass) << ',' << shortest(r.liveness_score) << ','
            << shortest(r.match_score) << '\n';
    }
}

void write_dataset(const ScoreDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    format_dataset(out, data);
    if (!out) throw Error(ErrorCode::IoError, "write failure on '" + path.string() + "'");
}

// ---- command-line values ----------------------------------------------------------

OperationalPointSpec parse_point_spec(std::string_view text) {
    const auto eq = text.find('=');
    const auto bad = [&] {
        return Error(ErrorCode::DomainError,
                     "operating point must look like apcer=<p> or bpcer=<p>, got '" + std::string(text) + "'");
    };
    if (eq == std::string_view::npos) throw bad();
    const auto key = trim(text.substr(0, eq));
    const auto value = parse_double(text.substr(eq + 1));
    if (!value) throw bad();
    if (key == "apcer") return OperationalPointSpec::apcer_at(*value);
    if (key == "bpcer") return OperationalPointSpec::bpcer_at(*value);
    throw bad();
}

std::vector<double> parse_w_values(std::string_view text) {
    const auto bad = [&] {
        return Error(ErrorCode::DomainError, "cannot parse w values '" + std::string(text) + "'");
    };
    if (text.find(':') != std::string_view::npos) {
        double parts[3];
        std::string_view rest = text;
        for (int i = 0; i < 3; ++i) {
            const auto colon = rest.find(':');
            if ((i < 2) == (colon == std::string_view::npos)) throw bad();
            const auto v = parse_double(rest.substr(0, colon));
            if (!v) throw bad();
            parts[i] = *v;
            if (colon != std::string_view::npos) rest.remove_prefix(colon + 1);
        }
        return make_w_grid(parts[0], parts[1], parts[2]);
    }
    std::vector<double> values;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        const auto v = parse_double(rest.substr(0, comma));
        if (!v) throw bad();
        require_probability(*v, "w");
        values.push_back(*v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return values;
}

// ---- JSON fragments --------------------------------------------------------------

json to_json(const OperationalPointSpec& spec) {
    return {{"mode", to_string(spec.mode)}, {"target", spec.target}};
}

OperationalPointSpec point_spec_from_json(const json& j) {
    if (j.is_string()) return parse_point_spec(j.get_ref<const std::string&>());
    const auto mode = enum_from(j.at("mode"), {OperatingPointMode::ApcerAt, OperatingPointMode::BpcerAt});
    const double target = j.at("target").get<double>();
    return mode == OperatingPointMode::ApcerAt ? OperationalPointSpec::apcer_at(target)
                                               : OperationalPointSpec::bpcer_at(target);
}

json to_json(const ResolvedOperatingPoint& p) {
    return {{"threshold", num(p.threshold)},
            {"apcer", rate(p.apcer)},
            {"bpcer", rate(p.bpcer)},
            {"exact", p.exact},
            {"unreachable", p.unreachable},
            {"pass_through", p.is_pass_through()}};
}

json to_json(const PadCharacteristic& pad) {
    std::vector<PadPoint> pts(pad.points().begin(), pad.points().end());
    return {{"unit", "fraction"},
            {"threshold", column(project(pts, [](const PadPoint& p) { return p.threshold; }))},
            {"apcer", column(project(pts, [](const PadPoint& p) { return p.apcer; }))},
            {"bpcer", column(project(pts, [](const PadPoint& p) { return p.bpcer; }))}};
}

json to_json(const MatcherCharacteristic& matcher) {
    std::vector<MatcherPoint> pts(matcher.points().begin(), matcher.points().end());
    return {{"unit", "fraction"},
            {"threshold", column(project(pts, [](const MatcherPoint& p) { return p.threshold; }))},
            {"gar", column(project(pts, [](const MatcherPoint& p) { return p.gar; }))},
            {"fmr", column(project(pts, [](const MatcherPoint& p) { return p.fmr; }))},
            {"iapmr", column(project(pts, [](const MatcherPoint& p) { return p.iapmr; }))}};
}

json to_json(const FusedRates& r) {
    return {{"gar_seq", rate(r.gar_seq)}, {"fmr_seq", rate(r.fmr_seq)}, {"iapmr_seq", rate(r.iapmr_seq)}};
}

json to_json(const GrocCurve& c) {
    return {{"w", c.w},
            {"pad_point", to_json(c.pad_point)},
            {"unit", "fraction"},
            {"match_threshold", column(project(c.points, [](const GrocPoint& p) { return p.match_threshold; }))},
            {"gar", column(project(c.points, [](const GrocPoint& p) { return p.gar; }))},
            {"gfmr", column(project(c.points, [](const GrocPoint& p) { return p.gfmr; }))}};
}

json to_json(const GeerSweep& s) {
    return {{"kind", to_string(s.kind)}, {"unit", "fraction"}, {"w_grid", column(s.w_grid)},
            {"geer", column(s.geer_values)}};
}

json to_json(const WStarResult& w) {
    return {{"w_star", optional_num(w.w_star)}, {"crossing_kind", to_string(w.crossing_kind)}};
}

WStarResult w_star_from_json(const json& j) {
    WStarResult w;
    w.crossing_kind = enum_from(j.at("crossing_kind"),
                                {CrossingKind::Crossing, CrossingKind::IntegratedAlwaysBetter,
                                 CrossingKind::IndividualAlwaysBetter});
    w.w_star = get_optional_num(j, "w_star");
    if (w.w_star.has_value() != (w.crossing_kind == CrossingKind::Crossing)) {
        throw ParseError(ErrorCode::ParseError, 0, "w_star must be present exactly for a crossing");
    }
    return w;
}

json to_json(const ModelErrorSummary& s) {
    return {{"fmr", stats_json(s.fmr)}, {"gar", stats_json(s.gar)}, {"iapmr", stats_json(s.iapmr)}};
}

json to_json(const CorrelationReport& r) {
    json out = json::object();
    for (const auto& c : r.classes) {
        out[std::string(to_string(c.klass))] = {{"count", c.count},
                                                {"coefficient", optional_num(c.coefficient)},
                                                {"flag", to_string(c.flag)}};
    }
    return out;
}

json to_json(const CharacteristicsSection& s) {
    return {{"pad", to_json(s.pad)}, {"matcher", to_json(s.matcher)}};
}

json to_json(const ComposeSection& s) {
    json integrated = json::array(), individual = json::array(), acceptance = json::array();
    for (const auto& c : s.integrated) integrated.push_back(to_json(c));
    for (const auto& c : s.individual) individual.push_back(to_json(c));
    for (const auto& a : s.acceptance) {
        acceptance.push_back({{"w", a.w},
                              {"p_genuine", a.p_genuine},
                              {"match_threshold", column(a.match_threshold)},
                              {"acceptance_rate", column(a.acceptance_rate)}});
    }
    using F = FusedPoint;
    return {{"pad_point", to_json(s.pad_point)},
            {"fused",
             {{"unit", "fraction"},
              {"match_threshold", column(project(s.fused, [](const F& f) { return f.match_threshold; }))},
              {"gar_seq", column(project(s.fused, [](const F& f) { return f.rates.gar_seq; }))},
              {"fmr_seq", column(project(s.fused, [](const F& f) { return f.rates.fmr_seq; }))},
              {"iapmr_seq", column(project(s.fused, [](const F& f) { return f.rates.iapmr_seq; }))}}},
            {"integrated", integrated},
            {"individual", individual},
            {"acceptance", acceptance}};
}

json to_json(const GeerSection& s) {
    return {{"pad_point", to_json(s.pad_point)},
            {"integrated", to_json(s.integrated)},
            {"individual", to_json(s.individual)},
            {"integrated_detail", geer_details(s.integrated_detail)},
            {"individual_detail", geer_details(s.individual_detail)},
            {"w_star", to_json(s.w_star)},
            {"decision", s.decision ? json(to_string(*s.decision)) : json(nullptr)}};
}

json to_json(const DatasetValidation& v) {
    return {{"dataset", v.result.dataset},
            {"point", to_json(v.result.spec)},
            {"pad_point", to_json(v.result.pad_point)},
            {"summary", to_json(v.summary)},
            {"correlation", to_json(v.correlation)},
            {"rows", validation_rows(v.result.rows)}};
}

json to_json(const ValidationSection& s) {
    json datasets = json::array();
    for (const auto& v : s.datasets) datasets.push_back(to_json(v));
    return {{"pooling", to_string(s.pooling)}, {"summary", to_json(s.summary)}, {"datasets", datasets}};
}

json to_json(const ScenarioReport& r) {
    json inputs = {{"datasets", r.inputs.datasets},
                   {"point", r.inputs.point ? to_json(*r.inputs.point) : json(nullptr)},
                   {"pass_through", r.inputs.pass_through},
                   {"w_grid", column(r.inputs.w_grid)},
                   {"p_genuine", optional_num(r.inputs.p_genuine)},
                   {"w_hat", optional_num(r.inputs.w_hat)}};
    json outputs = json::object();
    if (r.characteristics) outputs["characteristics"] = to_json(*r.characteristics);
    if (r.compose) outputs["compose"] = to_json(*r.compose);
    if (r.geer) outputs["geer"] = to_json(*r.geer);
    if (r.validation) outputs["validation"] = to_json(*r.validation);
    return {{"format_version", r.format_version}, {"inputs", inputs}, {"outputs", outputs}};
}

ScenarioReport report_from_json(const json& j) {
    try {
        ScenarioReport r;
        r.format_version = j.at("format_version").get<int>();
        if (r.format_version != kReportFormatVersion) {
            throw Error(ErrorCode::VersionMismatch,
                        "report format_version " + std::to_string(r.format_version) +
                            " is not supported (expected " + std::to_string(kReportFormatVersion) + ")");
        }
        const auto& in = j.at("inputs");
        r.inputs.datasets = in.at("datasets").get<std::vector<std::string>>();
        if (!in.at("point").is_null()) r.inputs.point = point_spec_from_json(in.at("point"));
        r.inputs.pass_through = in.at("pass_through").get<bool>();
        r.inputs.w_grid = get_column(in.at("w_grid"));
        r.inputs.p_genuine = get_optional_num(in, "p_genuine");
        r.inputs.w_hat = get_optional_num(in, "w_hat");

        const auto& out = j.at("outputs");
        if (out.contains("characteristics")) {
            const auto& c = out.at("characteristics");
            r.characteristics = CharacteristicsSection{pad_from_json(c.at("pad")),
                                                       matcher_from_json(c.at("matcher"))};
        }
        if (out.contains("compose")) {
            const auto& c = out.at("compose");
            ComposeSection s;
            s.pad_point = resolved_from_json(c.at("pad_point"));
            const auto& f = c.at("fused");
            const auto t = get_column(f.at("match_threshold"));
            const auto g = get_column(f.at("gar_seq"));
            const auto fm = get_column(f.at("fmr_seq"));
            const auto ia = get_column(f.at("iapmr_seq"));
            require_same_length({t.size(), g.size(), fm.size(), ia.size()}, "fused table");
            for (std::size_t i = 0; i < t.size(); ++i) s.fused.push_back({t[i], {g[i], fm[i], ia[i]}});
            for (const auto& cj : c.at("integrated")) s.integrated.push_back(curve_from_json(cj));
            for (const auto& cj : c.at("individual")) s.individual.push_back(curve_from_json(cj));
            for (const auto& aj : c.at("acceptance")) {
                AcceptanceCurve a{aj.at("w").get<double>(), aj.at("p_genuine").get<double>(),
                                  get_column(aj.at("match_threshold")),
                                  get_column(aj.at("acceptance_rate"))};
                require_same_length({a.match_threshold.size(), a.acceptance_rate.size()}, "acceptance");
                s.acceptance.push_back(std::move(a));
            }
            r.compose = std::move(s);
        }
        if (out.contains("geer")) {
            const auto& g = out.at("geer");
            GeerSection s;
            s.pad_point = resolved_from_json(g.at("pad_point"));
            s.integrated = sweep_from_json(g.at("integrated"));
            s.individual = sweep_from_json(g.at("individual"));
            s.integrated_detail = geer_details_from_json(g.at("integrated_detail"));
            s.individual_detail = geer_details_from_json(g.at("individual_detail"));
            s.w_star = w_star_from_json(g.at("w_star"));
            if (!g.at("decision").is_null()) {
                s.decision = enum_from(g.at("decision"), {EmbedDecision::Embed, EmbedDecision::DoNotEmbed});
            }
            r.geer = std::move(s);
        }
        if (out.contains("validation")) {
            const auto& v = out.at("validation");
            ValidationSection s;
            s.pooling = enum_from(v.at("pooling"), {Pooling::Pooled, Pooling::PerDatasetMean});
            s.summary = summary_from_json(v.at("summary"));
            for (const auto& d : v.at("datasets")) {
                DatasetValidation dv;
                dv.result.dataset = d.at("dataset").get<std::string>();
                dv.result.spec = point_spec_from_json(d.at("point"));
                dv.result.pad_point = resolved_from_json(d.at("pad_point"));
                dv.result.rows = validation_rows_from_json(d.at("rows"));
                dv.summary = summary_from_json(d.at("summary"));
                dv.correlation = correlation_from_json(d.at("correlation"));
                s.datasets.push_back(std::move(dv));
            }
            r.validation = std::move(s);
        }
        return r;
    } catch (const json::exception& e) {
        throw ParseError(ErrorCode::ParseError, 0, std::string("malformed report: ") + e.what());
    }
}

std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

std::string serialize_report(const ScenarioReport& report) { return canonical_text(to_json(report)); }

ScenarioReport parse_report(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(ErrorCode::ParseError, 0, std::string("report is not valid JSON: ") + e.what());
    }
    return report_from_json(j);
}

void write_report(const ScenarioReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out << serialize_report(report);
    if (!out) throw Error(ErrorCode::IoError, "write failure on '" + path.string() + "'");
}

ScenarioReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_report(buf.str());
}

}  // namespace padfuse
