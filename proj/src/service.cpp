#include "padfuse/service.hpp"

#include <httplib.h>

#include <algorithm>

#include "padfuse/errors.hpp"

namespace padfuse {
namespace {

// Malformed request: maps to 400.
struct BadRequest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFound : std::runtime_error {
    NotFound(std::string code, const std::string& message)
        : std::runtime_error(message), code(std::move(code)) {}
    std::string code;
};

HttpResponse respond(int status, const json& body) { return {status, canonical_text(body)}; }

HttpResponse error_response(int status, std::string_view code, const std::string& message,
                            json detail = nullptr) {
    return respond(status, {{"code", code}, {"message", message}, {"detail", std::move(detail)}});
}

json parse_body(std::string_view body) {
    try {
        json j = json::parse(body);
        if (!j.is_object()) throw BadRequest("request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw BadRequest(std::string("request body is not valid JSON: ") + e.what());
    }
}

double number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw BadRequest(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number()) throw BadRequest(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::optional<double> optional_number(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return number_field(j, key);
}

std::string dataset_id(const json& j) {
    if (!j.contains("dataset_id") || !j.at("dataset_id").is_string()) {
        throw BadRequest("missing string field 'dataset_id'");
    }
    return j.at("dataset_id").get<std::string>();
}

// Absent, null, "pass_through" or {"mode": "pass_through"} select the
// pass-through detector.
std::optional<OperationalPointSpec> point_field(const json& j) {
    if (!j.contains("point") || j.at("point").is_null()) return std::nullopt;
    const auto& p = j.at("point");
    if (p.is_string() && p.get_ref<const std::string&>() == "pass_through") return std::nullopt;
    if (p.is_object() && p.contains("mode") && p.at("mode") == "pass_through") return std::nullopt;
    if (!p.is_string() && !p.is_object()) throw BadRequest("field 'point' must be a string or object");
    return point_spec_from_json(p);
}

OperationalPointSpec required_point(const json& j) {
    auto spec = point_field(j);
    if (!spec) throw BadRequest("field 'point' must name an apcer or bpcer operating point");
    return *spec;
}

std::vector<double> w_values(const json& v) {
    if (v.is_number()) return {v.get<double>()};
    if (v.is_string()) return parse_w_values(v.get_ref<const std::string&>());
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw BadRequest("w values must be numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (v.is_object()) {
        return make_w_grid(number_field(v, "start"), number_field(v, "stop"), number_field(v, "step"));
    }
    throw BadRequest("w values must be a number, array, range string or {start, stop, step}");
}

std::vector<double> w_field(const json& j, std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
        if (j.contains(key)) return w_values(j.at(key));
    }
    throw BadRequest(std::string("missing field '") + *keys.begin() + "'");
}

json counts_json(const ClassCounts& c) {
    return {{"genuine", c.genuine}, {"zero_effort", c.zero_effort},
            {"presentation_attack", c.presentation_attack}};
}

}  // namespace

ScenarioService::ScenarioService(std::vector<ScoreDataset> datasets) {
    for (auto& data : datasets) {
        std::string id = data.name();
        if (datasets_.contains(id)) {
            throw Error(ErrorCode::DomainError, "duplicate dataset id '" + id + "'");
        }
        datasets_.emplace(std::move(id), analyze(std::move(data)));
    }
}

ScenarioService ScenarioService::from_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::directory_iterator it(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot read data directory '" + dir.string() + "'");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : it) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    if (files.empty()) {
        throw Error(ErrorCode::IoError, "data directory '" + dir.string() + "' holds no .csv score file");
    }
    std::sort(files.begin(), files.end());
    std::vector<ScoreDataset> datasets;
    for (const auto& f : files) datasets.push_back(load_dataset(f));
    return ScenarioService(std::move(datasets));
}

std::vector<std::string> ScenarioService::dataset_ids() const {
    std::vector<std::string> ids;
    for (const auto& [id, _] : datasets_) ids.push_back(id);
    return ids;
}

const AnalyzedDataset& ScenarioService::find(const std::string& id) const {
    auto it = datasets_.find(id);
    if (it == datasets_.end()) throw NotFound("UnknownDataset", "no dataset with id '" + id + "'");
    return it->second;
}

HttpResponse ScenarioService::handle(std::string_view method, std::string_view path,
                                     std::string_view body) const {
    try {
        if (method == "GET" && path == "/datasets") {
            json list = json::array();
            for (const auto& [id, ds] : datasets_) {
                list.push_back({{"id", id}, {"counts", counts_json(ds.data.counts())}});
            }
            return respond(200, {{"datasets", list}});
        }
        constexpr std::string_view kCharacteristics = "/characteristics/";
        if (method == "GET" && path.starts_with(kCharacteristics)) {
            const auto& ds = find(std::string(path.substr(kCharacteristics.size())));
            return respond(200, to_json(run_characteristics(ds)));
        }
        if (method != "POST") {
            throw NotFound("NotFound", "no route for " + std::string(method) + " " + std::string(path));
        }

        if (path == "/compose") {
            const auto req = parse_body(body);
            const auto& ds = find(dataset_id(req));
            const auto ws = w_field(req, {"w", "w_grid"});
            return respond(200, to_json(run_compose(ds, point_field(req), ws, optional_number(req, "p_genuine"))));
        }
        if (path == "/groc") {
            const auto req = parse_body(body);
            const auto& ds = find(dataset_id(req));
            const double w = number_field(req, "w");
            const auto point = resolve_point(ds, point_field(req));
            return respond(200, {{"integrated", to_json(groc_curve(ds.matcher, point, w))},
                                 {"individual", to_json(individual_groc_curve(ds.matcher, w))}});
        }
        if (path == "/geer") {
            const auto req = parse_body(body);
            const auto& ds = find(dataset_id(req));
            const auto grid = w_field(req, {"w_grid"});
            return respond(200, to_json(run_geer(ds, point_field(req), grid, optional_number(req, "w_hat"))));
        }
        if (path == "/decision") {
            const auto req = parse_body(body);
            const double w_hat = number_field(req, "w_hat");
            WStarResult w_star;
            if (req.contains("w_star")) {
                w_star = w_star_from_json(req.at("w_star"));
            } else {
                const auto& ds = find(dataset_id(req));
                w_star = run_geer(ds, point_field(req), w_field(req, {"w_grid"}), std::nullopt).w_star;
            }
            return respond(200, {{"w_star", to_json(w_star)},
                                 {"w_hat", w_hat},
                                 {"decision", to_string(embed_decision(w_star, w_hat))}});
        }
        if (path == "/validate") {
            const auto req = parse_body(body);
            const auto& ds = find(dataset_id(req));
            bool include_rows = false;
            if (req.contains("include_rows")) {
                if (!req.at("include_rows").is_boolean()) throw BadRequest("'include_rows' must be a boolean");
                include_rows = req.at("include_rows").get<bool>();
            }
            const auto section = run_validation(std::span(&ds.data, 1), required_point(req),
                                                Pooling::Pooled, include_rows);
            return respond(200, to_json(section));
        }
        throw NotFound("NotFound", "no route for POST " + std::string(path));
    } catch (const BadRequest& e) {
        return error_response(400, "BadRequest", e.what());
    } catch (const NotFound& e) {
        return error_response(404, e.code, e.what());
    } catch (const ParseError& e) {
        return error_response(400, to_string(e.code()), e.what(), {{"line", e.line()}});
    } catch (const Error& e) {
        return error_response(422, to_string(e.code()), e.what());
    } catch (const json::exception& e) {
        return error_response(400, "BadRequest", e.what());
    }
}

// ---- transport ------------------------------------------------------------------

struct ServiceHost::Impl {
    explicit Impl(const ScenarioService& s) : service(s) {}

    const ScenarioService& service;
    httplib::Server server;
};

ServiceHost::ServiceHost(const ScenarioService& service)
    : impl_(std::make_unique<Impl>(service)) {
    const auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        const auto out = impl_->service.handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    impl_->server.Get(R"(/.*)", forward);
    impl_->server.Post(R"(/.*)", forward);
}

ServiceHost::~ServiceHost() { stop(); }

int ServiceHost::bind(const std::string& host, int port) {
    const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                                : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) {
        throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void ServiceHost::listen() { impl_->server.listen_after_bind(); }

void ServiceHost::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace padfuse
