#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "padfuse/scores.hpp"

namespace padfuse {

// Bivariate Gaussian over (liveness, match) for one class.
struct ClassDistribution {
    double liveness_mean = 0.0;
    double liveness_std = 1.0;
    double match_mean = 0.0;
    double match_std = 1.0;
    double rho = 0.0;
    std::size_t count = 1;

    bool operator==(const ClassDistribution&) const = default;
};

struct SynthConfig {
    ClassDistribution genuine;
    ClassDistribution zero_effort;
    ClassDistribution presentation_attack;
    std::uint64_t seed = 0;

    const ClassDistribution& of(ScoreClass klass) const;
    bool operator==(const SynthConfig&) const = default;
};

// Throws ConfigError on a non-positive std, |rho| > 1 or a zero count.
void validate(const SynthConfig& cfg);

// Deterministic: an identical config yields a bit-identical dataset. Each
// class draws from its own stream derived from (seed, class), so one class's
// parameters never perturb another's samples. Records are emitted class by
// class: genuine, zero-effort, then attacks.
ScoreDataset synthesize(const SynthConfig& cfg, std::string name = "synthetic");

// Names accepted by preset().
std::span<const std::string_view> preset_names();

// Frozen configurations, documented in README.md. Throws UnknownPreset.
SynthConfig preset(std::string_view name);

}  // namespace padfuse
