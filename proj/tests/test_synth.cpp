#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "padfuse/errors.hpp"
#include "padfuse/geer.hpp"
#include "padfuse/synth.hpp"

using namespace padfuse;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

std::size_t hash_of(const ScoreDataset& d) {
    std::size_t h = 0;
    for (const auto& r : d.records()) {
        h = h * 1000003u ^ std::hash<double>{}(r.liveness_score);
        h = h * 1000003u ^ std::hash<double>{}(r.match_score);
    }
    return h;
}

SynthConfig small(std::uint64_t seed, std::size_t n = 200) {
    SynthConfig cfg;
    cfg.genuine = {2.0, 0.5, 3.0, 1.0, 0.0, n};
    cfg.zero_effort = {2.0, 0.5, 0.0, 1.0, 0.0, n};
    cfg.presentation_attack = {-1.0, 0.5, 2.0, 1.0, 0.0, n};
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("identical config gives a bit-identical dataset") {
    const auto a = synthesize(small(7));
    const auto b = synthesize(small(7));
    REQUIRE(a.size() == b.size());
    CHECK(std::equal(a.records().begin(), a.records().end(), b.records().begin(), b.records().end()));
}

TEST_CASE("distinct seeds give distinct datasets") {
    std::set<std::size_t> hashes;
    for (std::uint64_t s = 0; s < 64; ++s) hashes.insert(hash_of(synthesize(small(s))));
    CHECK(hashes.size() == 64);
}

TEST_CASE("class streams are independent of other classes' parameters") {
    auto cfg = small(9);
    const auto a = synthesize(cfg);
    cfg.presentation_attack.liveness_mean = 5.0;
    cfg.presentation_attack.count = 17;
    const auto b = synthesize(cfg);
    for (std::size_t i = 0; i < 400; ++i) CHECK(a.records()[i] == b.records()[i]);
}

TEST_CASE("records are emitted class by class with configured counts") {
    auto cfg = small(3);
    cfg.zero_effort.count = 5;
    const auto d = synthesize(cfg, "named");
    CHECK(d.name() == "named");
    CHECK(d.counts().genuine == 200);
    CHECK(d.counts().zero_effort == 5);
    CHECK(d.counts().presentation_attack == 200);
    CHECK(d.records()[199].klass == ScoreClass::Genuine);
    CHECK(d.records()[200].klass == ScoreClass::ZeroEffort);
    CHECK(d.records()[205].klass == ScoreClass::PresentationAttack);
}

TEST_CASE("sample moments converge to the configured values") {
    auto cfg = small(11, 20000);
    cfg.genuine.rho = 0.5;
    const auto d = synthesize(cfg);
    for (auto k : kAllClasses) {
        const auto& dist = cfg.of(k);
        double sl = 0, sm = 0, n = 0;
        for (const auto& r : d.records()) {
            if (r.klass != k) continue;
            sl += r.liveness_score;
            sm += r.match_score;
            ++n;
        }
        const double ml = sl / n, mm = sm / n;
        double vl = 0, vm = 0;
        for (const auto& r : d.records()) {
            if (r.klass != k) continue;
            vl += (r.liveness_score - ml) * (r.liveness_score - ml);
            vm += (r.match_score - mm) * (r.match_score - mm);
        }
        const double sdl = std::sqrt(vl / (n - 1)), sdm = std::sqrt(vm / (n - 1));
        CHECK(std::abs(ml - dist.liveness_mean) <= 4 * dist.liveness_std / std::sqrt(n));
        CHECK(std::abs(mm - dist.match_mean) <= 4 * dist.match_std / std::sqrt(n));
        // The std of a sample std is about sigma / sqrt(2n).
        CHECK(std::abs(sdl - dist.liveness_std) <= 4 * dist.liveness_std / std::sqrt(n));
        CHECK(std::abs(sdm - dist.match_std) <= 4 * dist.match_std / std::sqrt(n));
    }
}

TEST_CASE("config validation") {
    auto bad_std = small(1);
    bad_std.genuine.liveness_std = 0.0;
    CHECK(code_of([&] { synthesize(bad_std); }) == ErrorCode::ConfigError);
    auto bad_rho = small(1);
    bad_rho.zero_effort.rho = 1.01;
    CHECK(code_of([&] { validate(bad_rho); }) == ErrorCode::ConfigError);
    auto bad_count = small(1);
    bad_count.presentation_attack.count = 0;
    CHECK(code_of([&] { validate(bad_count); }) == ErrorCode::ConfigError);
    auto nan_mean = small(1);
    nan_mean.genuine.match_mean = NAN;
    CHECK(code_of([&] { validate(nan_mean); }) == ErrorCode::ConfigError);
}

TEST_CASE("separated genuine and zero-effort matches give a near-zero matcher EER") {
    auto cfg = small(5, 5000);
    cfg.genuine.match_mean = 10.0;
    cfg.genuine.match_std = 0.5;
    cfg.zero_effort.match_std = 0.5;
    const auto m = build_matcher_characteristic(synthesize(cfg));
    CHECK(geer(individual_groc_curve(m, 0.0)).geer <= 1e-3);
}

TEST_SUITE("presets") {
    TEST_CASE("names") {
        const auto names = preset_names();
        REQUIRE(names.size() == 3);
        for (auto n : names) CHECK_NOTHROW(preset(n));
        CHECK(code_of([] { preset("nonexistent"); }) == ErrorCode::UnknownPreset);
    }

    TEST_CASE("well-separated reaches apcer <= 1% with bpcer <= 5%") {
        const auto pad = build_pad_characteristic(synthesize(preset("well-separated")));
        bool found = false;
        for (const auto& p : pad.points()) found = found || (p.apcer <= 0.01 && p.bpcer <= 0.05);
        CHECK(found);
    }

    TEST_CASE("hard-gelatine-like forces bpcer >= 20% at APCER_01") {
        const auto pad = build_pad_characteristic(synthesize(preset("hard-gelatine-like")));
        const auto p = resolve_operating_point(pad, OperationalPointSpec::apcer_at(0.01));
        CHECK(p.bpcer >= 0.2);
    }

    TEST_CASE("weak-pad has higher apcer than well-separated at every finite threshold") {
        const auto weak = build_pad_characteristic(synthesize(preset("weak-pad")));
        const auto good = build_pad_characteristic(synthesize(preset("well-separated")));
        for (double t = -2.0; t <= 4.0; t += 0.25) {
            CHECK(rates_at(weak, t).apcer >= rates_at(good, t).apcer);
        }
        CHECK(rates_at(weak, 1.0).apcer > rates_at(good, 1.0).apcer);
    }

    TEST_CASE("presets are frozen") {
        const auto cfg = preset("hard-gelatine-like");
        CHECK(cfg.seed == 20210901u);
        CHECK(cfg.presentation_attack == ClassDistribution{1.0, 0.6, 2.5, 1.0, 0.0, 10000});
        CHECK(cfg.genuine == ClassDistribution{2.0, 0.5, 3.0, 1.0, 0.0, 10000});
        CHECK(cfg.zero_effort == ClassDistribution{2.0, 0.5, 0.0, 1.0, 0.0, 10000});
        CHECK(preset("well-separated").presentation_attack == ClassDistribution{-1.0, 0.5, 2.0, 1.0, 0.0, 10000});
        CHECK(preset("weak-pad").presentation_attack == ClassDistribution{0.8, 0.5, 2.0, 1.0, 0.0, 10000});
    }
}
