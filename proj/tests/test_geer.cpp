#include <doctest.h>

#include <cmath>
#include <random>

#include "padfuse/errors.hpp"
#include "padfuse/geer.hpp"
#include "test_oracles.hpp"

using namespace padfuse;

namespace {

GrocCurve curve_of(std::vector<GrocPoint> pts) {
    GrocCurve c;
    c.points = std::move(pts);
    return c;
}

// Exhaustive scan: smallest |gfmr - fnr|, first index on ties.
GeerResult brute_geer(const GrocCurve& c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        const auto& p = c.points[i];
        const auto& b = c.points[best];
        if (std::abs(p.gfmr - (1 - p.gar)) < std::abs(b.gfmr - (1 - b.gar))) best = i;
    }
    const auto& p = c.points[best];
    return {(p.gfmr + (1 - p.gar)) / 2, p.match_threshold, p.gfmr, 1 - p.gar};
}

GeerSweep sweep(std::vector<double> grid, std::vector<double> values, SweepKind kind) {
    return {std::move(grid), std::move(values), kind};
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("geer") {
    TEST_CASE("exact equality point") {
        const auto r = geer(curve_of({{0.0, 1.0, 0.6}, {0.5, 0.95, 0.05}, {1.0, 0.5, 0.0}}));
        CHECK(r.geer == doctest::Approx(0.05).epsilon(1e-14));
        CHECK(r.tau_star == 0.5);
    }

    TEST_CASE("perfect curve") {
        const auto r = geer(curve_of({{0.0, 1.0, 1.0}, {0.5, 1.0, 0.0}, {1.0, 0.0, 0.0}}));
        CHECK(r.geer == 0.0);
        CHECK(r.tau_star == 0.5);
    }

    TEST_CASE("seven point curve against the exhaustive scan") {
        const auto c = curve_of({{-1, 1.0, 0.9},
                                 {0, 0.98, 0.5},
                                 {1, 0.95, 0.2},
                                 {2, 0.90, 0.12},
                                 {3, 0.85, 0.08},
                                 {4, 0.70, 0.02},
                                 {5, 0.40, 0.0}});
        const auto r = geer(c);
        CHECK(r == brute_geer(c));
        CHECK(r.tau_star == 2);
        CHECK(r.geer == doctest::Approx(0.11).epsilon(1e-14));
    }

    TEST_CASE("ties go to the smallest threshold") {
        const auto r = geer(curve_of({{1, 0.75, 0.5}, {2, 0.5, 0.25}, {3, 0.25, 0.0}}));
        // Both of the first two points sit 0.25 from equality; the first wins.
        CHECK(r.tau_star == 1);
    }

    TEST_CASE("empty curve") { CHECK(code_of([] { geer(GrocCurve{}); }) == ErrorCode::EmptyCurve); }

    TEST_CASE("random curves equal the exhaustive scan") {
        std::mt19937_64 rng(41);
        for (int i = 0; i < 200; ++i) {
            const auto m = oracle::random_matcher(rng, 1 + i % 50);
            const auto c = individual_groc_curve(m, (i % 11) / 10.0);
            const auto r = geer(c);
            CHECK(r == brute_geer(c));
            CHECK(r.geer == (r.gfmr_at_tau + r.fnr_at_tau) / 2);
        }
    }
}

TEST_SUITE("sweeps") {
    const auto m = MatcherCharacteristic::from_points(
        {{0.1, 0.99, 0.40, 0.90}, {0.2, 0.97, 0.20, 0.80}, {0.3, 0.90, 0.10, 0.60}, {0.4, 0.80, 0.05, 0.30}});
    ResolvedOperatingPoint pt = [] {
        ResolvedOperatingPoint p;
        p.threshold = 0.5;
        p.apcer = 0.05;
        p.bpcer = 0.08;
        return p;
    }();

    TEST_CASE("single entry grid") {
        const double grid[] = {0.0};
        const auto s = geer_sweep(m, pt, grid);
        CHECK(s.kind == SweepKind::Integrated);
        REQUIRE(s.geer_values.size() == 1);
        CHECK(s.geer_values[0] == geer(groc_curve(m, pt, 0.0)).geer);
        const auto ind = individual_eer_sweep(m, grid);
        CHECK(ind.kind == SweepKind::Individual);
        CHECK(ind.geer_values[0] == geer(individual_groc_curve(m, 0.0)).geer);
    }

    TEST_CASE("coinciding mixture endpoints make w irrelevant") {
        const auto flat = MatcherCharacteristic::from_points({{0.1, 0.9, 0.3, 0.3}, {0.2, 0.7, 0.1, 0.1}});
        const double grid[] = {0.0, 1.0};
        const auto s = individual_eer_sweep(flat, grid);
        CHECK(s.geer_values[0] == s.geer_values[1]);
        ResolvedOperatingPoint same;
        same.apcer = 0.4;
        same.bpcer = 0.6;  // 1 - bpcer == apcer keeps fmr_seq == iapmr_seq
        const auto t = geer_sweep(flat, same, grid);
        CHECK(t.geer_values[0] == doctest::Approx(t.geer_values[1]).epsilon(1e-15));
    }

    TEST_CASE("31 point grid element-wise") {
        const auto grid = make_w_grid(0.0, 0.30, 0.01);
        REQUIRE(grid.size() == 31);
        const auto s = geer_sweep(m, pt, grid);
        const auto ind = individual_eer_sweep(m, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(s.geer_values[i] == brute_geer(groc_curve(m, pt, grid[i])).geer);
            CHECK(ind.geer_values[i] == brute_geer(individual_groc_curve(m, grid[i])).geer);
        }
    }

    TEST_CASE("individual GEER is non-decreasing in w when iapmr dominates fmr") {
        // Dense Gaussian-tail characteristics. The argmin is taken over listed
        // points, so monotonicity holds up to the largest step between points.
        const auto grid = make_w_grid(0.0, 1.0, 0.02);
        auto tail = [](double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); };
        for (double attack_shift : {0.0, 0.5, 1.0, 2.0}) {
            std::vector<MatcherPoint> pts;
            double step = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double t = -6.0 + i * 0.0035;
                pts.push_back({t, tail(t - 2.0), tail(t), tail(t - attack_shift)});
                if (i > 0) {
                    const auto& a = pts[pts.size() - 2];
                    step = std::max({step, a.gar - pts.back().gar, a.fmr - pts.back().fmr,
                                     a.iapmr - pts.back().iapmr});
                }
            }
            const auto s = individual_eer_sweep(MatcherCharacteristic::from_points(pts), grid);
            for (std::size_t k = 1; k < grid.size(); ++k) {
                CHECK(s.geer_values[k] >= s.geer_values[k - 1] - step);
            }
            if (attack_shift > 0.0) CHECK(s.geer_values.back() > s.geer_values.front());
        }
    }

    TEST_CASE("grid validation") {
        const double unsorted[] = {0.2, 0.1};
        const double outside[] = {0.5, 1.2};
        CHECK(code_of([&] { geer_sweep(m, pt, unsorted); }) == ErrorCode::DomainError);
        CHECK(code_of([&] { individual_eer_sweep(m, outside); }) == ErrorCode::DomainError);
        CHECK(code_of([&] { individual_eer_sweep(m, {}); }) == ErrorCode::DomainError);
    }
}

TEST_SUITE("make_w_grid") {
    TEST_CASE("inclusive endpoints without drift") {
        const auto g = make_w_grid(0.0, 1.0, 0.01);
        REQUIRE(g.size() == 101);
        CHECK(g.front() == 0.0);
        CHECK(g.back() == 1.0);
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(i * 0.01).epsilon(1e-15));
    }
    TEST_CASE("step that does not divide the span") {
        const auto g = make_w_grid(0.0, 0.75, 0.2);
        CHECK(g == std::vector<double>{0.0, 0.2, 0.4, 0.6000000000000001});
    }
    TEST_CASE("bad bounds") {
        CHECK(code_of([] { make_w_grid(0.0, 1.0, 0.0); }) == ErrorCode::DomainError);
        CHECK(code_of([] { make_w_grid(0.5, 0.1, 0.1); }) == ErrorCode::DomainError);
        CHECK(code_of([] { make_w_grid(0.0, 1.5, 0.1); }) == ErrorCode::DomainError);
    }
}

TEST_SUITE("find_w_star") {
    TEST_CASE("constant integrated against a linear individual sweep") {
        const auto grid = make_w_grid(0.0, 1.0, 0.01);
        std::vector<double> integrated(grid.size(), 0.06), individual;
        for (double w : grid) individual.push_back(0.02 + 0.28 * w);
        const auto r = find_w_star(sweep(grid, integrated, SweepKind::Integrated),
                                   sweep(grid, individual, SweepKind::Individual));
        REQUIRE(r.crossing_kind == CrossingKind::Crossing);
        CHECK(std::abs(*r.w_star - 1.0 / 7.0) <= 1e-6);
    }

    TEST_CASE("no crossing") {
        const std::vector<double> grid{0.0, 0.5, 1.0};
        const auto r = find_w_star(sweep(grid, {0.1, 0.1, 0.1}, SweepKind::Integrated),
                                   sweep(grid, {0.05, 0.05, 0.05}, SweepKind::Individual));
        CHECK(r.crossing_kind == CrossingKind::IndividualAlwaysBetter);
        CHECK_FALSE(r.w_star.has_value());
        const auto s = find_w_star(sweep(grid, {0.01, 0.01, 0.01}, SweepKind::Integrated),
                                   sweep(grid, {0.05, 0.06, 0.07}, SweepKind::Individual));
        CHECK(s.crossing_kind == CrossingKind::IntegratedAlwaysBetter);
    }

    TEST_CASE("exact zero on a grid point, first of a touching run") {
        const std::vector<double> grid{0.0, 0.1, 0.2, 0.3};
        const auto r = find_w_star(sweep(grid, {0.2, 0.1, 0.1, 0.1}, SweepKind::Integrated),
                                   sweep(grid, {0.0, 0.1, 0.1, 0.2}, SweepKind::Individual));
        REQUIRE(r.crossing_kind == CrossingKind::Crossing);
        CHECK(*r.w_star == 0.1);
    }

    TEST_CASE("first crossing wins") {
        const std::vector<double> grid{0.0, 0.1, 0.2, 0.3, 0.4};
        const auto r = find_w_star(sweep(grid, {0.3, 0.1, 0.1, 0.3, 0.1}, SweepKind::Integrated),
                                   sweep(grid, {0.1, 0.3, 0.3, 0.1, 0.3}, SweepKind::Individual));
        CHECK(*r.w_star == doctest::Approx(0.05).epsilon(1e-14));
    }

    TEST_CASE("antisymmetry under swapping the sweeps") {
        std::mt19937_64 rng(43);
        std::uniform_real_distribution<double> u(0.0, 0.5);
        const auto grid = make_w_grid(0.0, 1.0, 0.1);
        for (int i = 0; i < 500; ++i) {
            std::vector<double> a, b;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                a.push_back(u(rng));
                b.push_back(i % 3 == 0 ? a.back() + 0.6 : u(rng));
            }
            const auto fwd = find_w_star(sweep(grid, a, SweepKind::Integrated), sweep(grid, b, SweepKind::Individual));
            const auto rev = find_w_star(sweep(grid, b, SweepKind::Integrated), sweep(grid, a, SweepKind::Individual));
            if (fwd.crossing_kind == CrossingKind::Crossing) {
                CHECK(rev == fwd);
            } else {
                CHECK(rev.crossing_kind != fwd.crossing_kind);
                CHECK(rev.crossing_kind != CrossingKind::Crossing);
            }
            if (fwd.w_star) {
                CHECK(*fwd.w_star >= grid.front());
                CHECK(*fwd.w_star <= grid.back());
            }
        }
    }

    TEST_CASE("grid mismatch") {
        CHECK(code_of([] {
                  find_w_star(sweep({0.0, 0.1}, {0.1, 0.1}, SweepKind::Integrated),
                              sweep({0.0, 0.2}, {0.1, 0.1}, SweepKind::Individual));
              }) == ErrorCode::GridMismatch);
        CHECK(code_of([] {
                  find_w_star(sweep({0.0, 0.1}, {0.1}, SweepKind::Integrated),
                              sweep({0.0, 0.1}, {0.1, 0.1}, SweepKind::Individual));
              }) == ErrorCode::GridMismatch);
    }
}

TEST_SUITE("embed_decision") {
    const WStarResult at_020{0.20, CrossingKind::Crossing};

    TEST_CASE("reference rule") {
        CHECK(embed_decision(at_020, 0.25) == EmbedDecision::Embed);
        CHECK(embed_decision(at_020, 0.10) == EmbedDecision::DoNotEmbed);
        CHECK(embed_decision(at_020, 0.20) == EmbedDecision::Embed);
        CHECK(embed_decision({std::nullopt, CrossingKind::IntegratedAlwaysBetter}, 0.0) == EmbedDecision::Embed);
        CHECK(embed_decision({std::nullopt, CrossingKind::IndividualAlwaysBetter}, 1.0) ==
              EmbedDecision::DoNotEmbed);
    }

    TEST_CASE("monotone in w_hat") {
        for (double ws : {0.0, 0.13, 0.5, 1.0}) {
            bool embedded = false;
            for (double wh = 0.0; wh <= 1.0; wh += 0.01) {
                const bool e = embed_decision({ws, CrossingKind::Crossing}, wh) == EmbedDecision::Embed;
                CHECK((e || !embedded));
                embedded = embedded || e;
            }
        }
    }

    TEST_CASE("w_hat out of range") {
        CHECK(code_of([&] { embed_decision(at_020, 1.01); }) == ErrorCode::DomainError);
    }
}
