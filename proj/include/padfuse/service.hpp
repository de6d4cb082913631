#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "padfuse/scenario.hpp"

namespace padfuse {

struct HttpResponse {
    int status = 200;
    std::string body;  // canonical JSON text

    bool operator==(const HttpResponse&) const = default;
};

// Request/response logic of the scenario service, independent of any socket.
// Datasets are analysed once at construction and never modified, so handle()
// may be called from any number of threads.
//
//   GET  /datasets                 ids with class counts
//   GET  /characteristics/{id}     pad + matcher characteristics
//   POST /compose                  fused table and GROC curves per w
//   POST /groc                     integrated and individual GROC at one w
//   POST /geer                     GEER sweeps, w*, optional decision
//   POST /decision                 w* and the embed verdict
//   POST /validate                 model-vs-empirical errors
//
// Errors: 400 malformed request, 404 unknown dataset or route, 422 domain
// error; body {"code", "message", "detail"}.
class ScenarioService {
public:
    // Throws DomainError on duplicate dataset names, EmptyClass on datasets
    // that lack a class.
    explicit ScenarioService(std::vector<ScoreDataset> datasets);

    // Loads every *.csv in dir (id = file stem). Throws IoError if the
    // directory is unreadable or holds no score file; ingest errors propagate.
    static ScenarioService from_directory(const std::filesystem::path& dir);

    HttpResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

    std::vector<std::string> dataset_ids() const;

private:
    const AnalyzedDataset& find(const std::string& id) const;

    std::map<std::string, AnalyzedDataset, std::less<>> datasets_;
};

// HTTP transport around a ScenarioService (which must outlive it).
class ServiceHost {
public:
    explicit ServiceHost(const ScenarioService& service);
    ~ServiceHost();
    ServiceHost(const ServiceHost&) = delete;
    ServiceHost& operator=(const ServiceHost&) = delete;

    // Binds to host:port; port 0 picks a free port. Returns the bound port,
    // throws IoError on failure.
    int bind(const std::string& host, int port);
    // Serves until stop() is called from another thread.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace padfuse
