// padfuse: command-line front end for the detector/matcher cascade simulator.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "padfuse/errors.hpp"
#include "padfuse/scenario.hpp"
#include "padfuse/service.hpp"
#include "padfuse/synth.hpp"

namespace {

using namespace padfuse;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;
constexpr int kExitUnreachable = 4;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::UnknownClass:
        case ErrorCode::IoError:
        case ErrorCode::VersionMismatch:
        case ErrorCode::UnknownPreset:
        case ErrorCode::ConfigError:
            return kExitInput;
        default:
            return kExitDomain;
    }
}

// "passthrough" disables the detector; anything else is apcer=<p> / bpcer=<p>.
std::optional<OperationalPointSpec> parse_point_option(const std::string& text) {
    if (text == "passthrough" || text == "pass-through" || text == "pass_through") return std::nullopt;
    return parse_point_spec(text);
}

struct Options {
    bool strict = false;
    std::string scores;
    std::vector<std::string> score_list;
    std::string out;
    std::string point;
    std::string w;
    std::string w_grid;
    std::optional<double> p_genuine;
    std::optional<double> w_hat;
    std::string pooling = "pooled";
    bool include_rows = false;
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string data_dir;
};

// Warns on an unreachable operating point; returns the exit code to use.
int check_point(const ResolvedOperatingPoint& point, bool strict) {
    if (!point.unreachable) return kExitOk;
    std::cerr << "warning: operating point unreachable; using the "
              << (point.threshold > 0 ? "+inf" : "-inf") << " sentinel threshold\n";
    return strict ? kExitUnreachable : kExitOk;
}

ReportInputs inputs_for(const ScoreDataset& data, const std::optional<OperationalPointSpec>& spec) {
    ReportInputs in;
    in.datasets = {data.name()};
    in.point = spec;
    in.pass_through = !spec.has_value();
    return in;
}

int run_characteristics(const Options& o) {
    const auto ds = analyze(load_dataset(o.scores));
    ScenarioReport r;
    r.inputs.datasets = {ds.data.name()};
    r.characteristics = padfuse::run_characteristics(ds);
    write_report(r, o.out);
    return kExitOk;
}

int run_compose(const Options& o) {
    const auto ds = analyze(load_dataset(o.scores));
    const auto spec = parse_point_option(o.point);
    const auto ws = parse_w_values(o.w);
    ScenarioReport r;
    r.inputs = inputs_for(ds.data, spec);
    r.inputs.w_grid = ws;
    r.inputs.p_genuine = o.p_genuine;
    r.compose = padfuse::run_compose(ds, spec, ws, o.p_genuine);
    write_report(r, o.out);
    return check_point(r.compose->pad_point, o.strict);
}

int run_geer(const Options& o) {
    const auto ds = analyze(load_dataset(o.scores));
    const auto spec = parse_point_option(o.point);
    const auto grid = parse_w_values(o.w_grid);
    ScenarioReport r;
    r.inputs = inputs_for(ds.data, spec);
    r.inputs.w_grid = grid;
    r.inputs.w_hat = o.w_hat;
    r.geer = padfuse::run_geer(ds, spec, grid, o.w_hat);
    write_report(r, o.out);

    const auto& w = r.geer->w_star;
    std::cout << "w*: " << (w.w_star ? std::to_string(*w.w_star) : std::string("none")) << " ("
              << to_string(w.crossing_kind) << ")\n";
    if (r.geer->decision) std::cout << "decision: " << to_string(*r.geer->decision) << "\n";
    return check_point(r.geer->pad_point, o.strict);
}

int run_validate(const Options& o) {
    std::vector<ScoreDataset> datasets;
    for (const auto& path : o.score_list) datasets.push_back(load_dataset(path));
    const auto spec = parse_point_spec(o.point);
    const auto pooling = o.pooling == "per_dataset_mean" ? Pooling::PerDatasetMean : Pooling::Pooled;

    ScenarioReport r;
    for (const auto& d : datasets) r.inputs.datasets.push_back(d.name());
    r.inputs.point = spec;
    r.validation = padfuse::run_validation(datasets, spec, pooling, o.include_rows);
    write_report(r, o.out);

    const auto& s = r.validation->summary;
    std::cout << "mean |error| (pp): GAR " << s.gar.mean << ", FMR " << s.fmr.mean << ", IAPMR "
              << s.iapmr.mean << "\n";
    int code = kExitOk;
    for (const auto& dv : r.validation->datasets) code = std::max(code, check_point(dv.result.pad_point, o.strict));
    return code;
}

int run_synth(const Options& o) {
    auto cfg = preset(o.preset);
    if (o.seed_given) cfg.seed = o.seed;
    write_dataset(synthesize(cfg, o.preset), o.out);
    return kExitOk;
}

ServiceHost* g_host = nullptr;

void on_signal(int) {
    if (g_host) g_host->stop();
}

int run_serve(const Options& o) {
    const auto service = ScenarioService::from_directory(o.data_dir);
    ServiceHost host(service);
    const int port = host.bind(o.host, o.port);
    g_host = &host;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "serving " << service.dataset_ids().size() << " dataset(s) on http://" << o.host << ":"
              << port << std::endl;
    host.listen();
    g_host = nullptr;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulate a fingerprint matcher with an embedded presentation-attack detector"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--strict", o.strict, "Exit with code 4 when an operating point is unreachable");

    auto* characteristics = app.add_subcommand("characteristics", "Build and emit both characteristics");
    characteristics->add_option("--scores", o.scores, "Score file")->required();
    characteristics->add_option("--out", o.out, "Report file")->required();

    auto* compose = app.add_subcommand("compose", "GROC curves of the cascade per w");
    compose->add_option("--scores", o.scores, "Score file")->required();
    compose->add_option("--point", o.point, "apcer=<p>, bpcer=<p> or passthrough")->required();
    compose->add_option("--w", o.w, "w list (a,b,c) or range start:stop:step")->required();
    compose->add_option("--p-genuine", o.p_genuine, "P(genuine); adds acceptance-rate curves");
    compose->add_option("--out", o.out, "Report file")->required();

    auto* geer = app.add_subcommand("geer", "GEER sweeps, w* and the embed decision");
    geer->add_option("--scores", o.scores, "Score file")->required();
    geer->add_option("--point", o.point, "apcer=<p>, bpcer=<p> or passthrough")->required();
    geer->add_option("--w-grid", o.w_grid, "start:stop:step")->required();
    geer->add_option("--w-hat", o.w_hat, "Designer's estimated attack probability");
    geer->add_option("--out", o.out, "Report file")->required();

    auto* validate = app.add_subcommand("validate", "Model-vs-empirical error statistics");
    validate->add_option("--scores", o.score_list, "Score file(s)")->required();
    validate->add_option("--point", o.point, "apcer=<p> or bpcer=<p>")->required();
    validate->add_option("--pooling", o.pooling, "pooled or per_dataset_mean")
        ->check(CLI::IsMember({"pooled", "per_dataset_mean"}));
    validate->add_flag("--rows", o.include_rows, "Include per-threshold rows in the report");
    validate->add_option("--out", o.out, "Report file")->required();

    auto* synth = app.add_subcommand("synth", "Emit a synthetic score file");
    synth->add_option("--preset", o.preset, "well-separated, hard-gelatine-like or weak-pad")->required();
    synth->add_option("--seed", o.seed, "Override the preset seed")->each([&](const std::string&) {
        o.seed_given = true;
    });
    synth->add_option("--out", o.out, "Score file")->required();

    auto* serve = app.add_subcommand("serve", "Start the HTTP scenario service");
    serve->add_option("--port", o.port, "Port (0 picks a free one)");
    serve->add_option("--host", o.host, "Bind address");
    serve->add_option("--data-dir", o.data_dir, "Directory of .csv score files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*characteristics) return run_characteristics(o);
        if (*compose) return run_compose(o);
        if (*geer) return run_geer(o);
        if (*validate) return run_validate(o);
        if (*synth) return run_synth(o);
        if (*serve) return run_serve(o);
    } catch (const padfuse::Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return kExitOk;
}
