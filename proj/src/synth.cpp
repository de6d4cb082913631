#include "padfuse/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "padfuse/errors.hpp"

namespace padfuse {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Standard normals via Box-Muller over the raw 64-bit engine output.
// std::normal_distribution is not specified bit-for-bit across standard
// libraries, which would break cross-platform reproducibility of presets.
class NormalPairSource {
public:
    explicit NormalPairSource(std::uint64_t seed) : engine_(seed) {}

    std::pair<double, double> next() {
        constexpr double kScale = 0x1.0p-53;
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * kScale;  // (0, 1]
        const double u2 = static_cast<double>(engine_() >> 11) * kScale;        // [0, 1)
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    std::mt19937_64 engine_;
};

void check_class(const ClassDistribution& d, std::string_view name) {
    const auto fail = [&](const char* what) {
        throw Error(ErrorCode::ConfigError, std::string(name) + ": " + what);
    };
    if (!std::isfinite(d.liveness_mean) || !std::isfinite(d.match_mean)) fail("means must be finite");
    if (!(d.liveness_std > 0.0) || !(d.match_std > 0.0) || !std::isfinite(d.liveness_std) ||
        !std::isfinite(d.match_std)) {
        fail("standard deviations must be positive and finite");
    }
    if (!(std::abs(d.rho) <= 1.0)) fail("rho must lie in [-1, 1]");
    if (d.count == 0) fail("count must be at least 1");
}

constexpr std::string_view kPresetNames[] = {"well-separated", "hard-gelatine-like", "weak-pad"};

}  // namespace

const ClassDistribution& SynthConfig::of(ScoreClass klass) const {
    switch (klass) {
        case ScoreClass::Genuine: return genuine;
        case ScoreClass::ZeroEffort: return zero_effort;
        case ScoreClass::PresentationAttack: return presentation_attack;
    }
    return genuine;
}

void validate(const SynthConfig& cfg) {
    for (ScoreClass klass : kAllClasses) check_class(cfg.of(klass), to_string(klass));
}

ScoreDataset synthesize(const SynthConfig& cfg, std::string name) {
    validate(cfg);
    std::vector<ScoreRecord> records;
    records.reserve(cfg.genuine.count + cfg.zero_effort.count + cfg.presentation_attack.count);

    for (ScoreClass klass : kAllClasses) {
        const auto& d = cfg.of(klass);
        const auto class_tag = static_cast<std::uint64_t>(klass) + 1;
        NormalPairSource normals(splitmix64(cfg.seed ^ splitmix64(class_tag)));
        const double residual = std::sqrt(1.0 - d.rho * d.rho);
        for (std::size_t i = 0; i < d.count; ++i) {
            const auto [z1, z2] = normals.next();
            records.push_back({klass, d.liveness_mean + d.liveness_std * z1,
                               d.match_mean + d.match_std * (d.rho * z1 + residual * z2)});
        }
    }
    return ScoreDataset(std::move(name), std::move(records));
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

SynthConfig preset(std::string_view name) {
    constexpr std::size_t kCount = 10'000;
    constexpr std::uint64_t kSeed = 20210901;

    // Live populations and the matcher are shared by every preset; only the
    // attack class changes.
    SynthConfig cfg;
    cfg.seed = kSeed;
    cfg.genuine = {2.0, 0.5, 3.0, 1.0, 0.0, kCount};
    cfg.zero_effort = {2.0, 0.5, 0.0, 1.0, 0.0, kCount};

    if (name == "well-separated") {
        cfg.presentation_attack = {-1.0, 0.5, 2.0, 1.0, 0.0, kCount};
    } else if (name == "hard-gelatine-like") {
        // Spoof liveness overlaps the live population and the replicas match well.
        cfg.presentation_attack = {1.0, 0.6, 2.5, 1.0, 0.0, kCount};
    } else if (name == "weak-pad") {
        // Same spread as well-separated, shifted toward live: higher APCER everywhere.
        cfg.presentation_attack = {0.8, 0.5, 2.0, 1.0, 0.0, kCount};
    } else {
        throw Error(ErrorCode::UnknownPreset, "unknown preset '" + std::string(name) + "'");
    }
    return cfg;
}

}  // namespace padfuse
