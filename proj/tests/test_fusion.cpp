#include <doctest.h>

#include <cmath>
#include <random>

#include "padfuse/errors.hpp"
#include "padfuse/fusion.hpp"
#include "test_oracles.hpp"

using namespace padfuse;

namespace {

struct Tuple {
    MatcherRates m;
    PadRates p;
};

Tuple random_tuple(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {{u(rng), u(rng), u(rng)}, {u(rng), u(rng)}};
}

bool throws_domain(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == ErrorCode::DomainError;
    }
    return false;
}

}  // namespace

TEST_SUITE("compose_sequential") {
    TEST_CASE("hand example") {
        const auto f = compose_sequential({0.95, 0.02, 0.70}, {0.01, 0.05});
        CHECK(f.gar_seq == doctest::Approx(0.9025).epsilon(1e-15));
        CHECK(f.fmr_seq == doctest::Approx(0.019).epsilon(1e-15));
        CHECK(f.iapmr_seq == doctest::Approx(0.007).epsilon(1e-15));
    }

    TEST_CASE("pass-through and perfect detector over random tuples") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 2000; ++i) {
            const auto [m, p] = random_tuple(rng);
            CHECK(compose_sequential(m, {1.0, 0.0}) == FusedRates{m.gar, m.fmr, m.iapmr});
            CHECK(compose_sequential(m, {0.0, 0.0}) == FusedRates{m.gar, m.fmr, 0.0});
        }
    }

    TEST_CASE("composition never increases a rate and GAR drops by gar*bpcer") {
        std::mt19937_64 rng(12);
        for (int i = 0; i < 2000; ++i) {
            const auto [m, p] = random_tuple(rng);
            const auto f = compose_sequential(m, p);
            CHECK(f.gar_seq <= m.gar);
            CHECK(f.fmr_seq <= m.fmr);
            CHECK(f.iapmr_seq <= m.iapmr);
            CHECK(m.gar - f.gar_seq == doctest::Approx(m.gar * p.bpcer).epsilon(1e-12));
        }
    }

    TEST_CASE("stage order does not matter") {
        // Simulating detector-first and matcher-first gates trial by trial with
        // the same Bernoulli draws gives the same accepted set.
        std::mt19937_64 rng(13);
        std::bernoulli_distribution pass_pad(0.8), pass_match(0.6);
        int pad_first = 0, match_first = 0;
        for (int i = 0; i < 10000; ++i) {
            const bool a = pass_pad(rng), b = pass_match(rng);
            if (a && b) ++pad_first;
            if (b && a) ++match_first;
        }
        CHECK(pad_first == match_first);
    }

    TEST_CASE("Monte-Carlo oracle within 4 sigma") {
        // Independent detector and matcher decisions drawn per trial.
        const MatcherRates m{0.95, 0.02, 0.70};
        const PadRates p{0.01, 0.05};
        const auto f = compose_sequential(m, p);
        std::mt19937_64 rng(14);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const int n = 200000;
        int g = 0, z = 0, a = 0;
        for (int i = 0; i < n; ++i) {
            if (u(rng) >= p.bpcer && u(rng) < m.gar) ++g;
            if (u(rng) >= p.bpcer && u(rng) < m.fmr) ++z;
            if (u(rng) < p.apcer && u(rng) < m.iapmr) ++a;
        }
        auto tol = [&](double q) { return 4.0 * std::sqrt(q * (1 - q) / n) + 1e-12; };
        CHECK(std::abs(g / double(n) - f.gar_seq) <= tol(f.gar_seq));
        CHECK(std::abs(z / double(n) - f.fmr_seq) <= tol(f.fmr_seq));
        CHECK(std::abs(a / double(n) - f.iapmr_seq) <= tol(f.iapmr_seq));
    }

    TEST_CASE("out-of-range inputs") {
        CHECK(throws_domain([] { compose_sequential({1.1, 0, 0}, {0, 0}); }));
        CHECK(throws_domain([] { compose_sequential({0.5, 0, 0}, {-0.1, 0}); }));
        CHECK(throws_domain([] { compose_sequential({0.5, 0, NAN}, {0, 0}); }));
    }
}

TEST_SUITE("gfmr and acceptance_rate") {
    const FusedRates f{0.9025, 0.019, 0.007};

    TEST_CASE("endpoints and hand example") {
        CHECK(gfmr(f, 0.0) == f.fmr_seq);
        CHECK(gfmr(f, 1.0) == f.iapmr_seq);
        CHECK(gfmr(f, 0.75) == doctest::Approx(0.01).epsilon(1e-14));
    }

    TEST_CASE("acceptance rate") {
        CHECK(acceptance_rate(f, 0.3, 1.0) == f.gar_seq);
        CHECK(acceptance_rate(f, 0.0, 0.0) == f.fmr_seq);
        CHECK(acceptance_rate(f, 0.75, 0.5) == doctest::Approx(0.45625).epsilon(1e-14));
    }

    TEST_CASE("affine in w") {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 10000; ++i) {
            const auto [m, p] = random_tuple(rng);
            const auto fr = compose_sequential(m, p);
            const double w1 = u(rng), w2 = u(rng), alpha = u(rng);
            const double lhs = gfmr(fr, alpha * w1 + (1 - alpha) * w2);
            const double rhs = alpha * gfmr(fr, w1) + (1 - alpha) * gfmr(fr, w2);
            REQUIRE(std::abs(lhs - rhs) <= 1e-12);
            // Dispersion across w is bounded by the composed rates.
            CHECK(std::abs(gfmr(fr, w1) - gfmr(fr, w2)) <=
                  std::abs(w1 - w2) * std::max(fr.fmr_seq, fr.iapmr_seq) + 1e-15);
        }
    }

    TEST_CASE("probabilities outside [0,1]") {
        CHECK(throws_domain([&] { gfmr(f, 1.5); }));
        CHECK(throws_domain([&] { acceptance_rate(f, 0.5, -0.1); }));
    }
}

TEST_SUITE("groc_curve") {
    // Five finite matcher points plus the two sentinels.
    const auto m = MatcherCharacteristic::from_points({{0.1, 0.99, 0.40, 0.90},
                                                       {0.2, 0.97, 0.20, 0.80},
                                                       {0.3, 0.90, 0.10, 0.60},
                                                       {0.4, 0.80, 0.05, 0.30},
                                                       {0.5, 0.60, 0.01, 0.10}});

    TEST_CASE("hand table at apcer=0.1, bpcer=0.1, w=0.5") {
        ResolvedOperatingPoint pt;
        pt.threshold = 0.7;
        pt.apcer = 0.1;
        pt.bpcer = 0.1;
        const auto c = groc_curve(m, pt, 0.5);
        REQUIRE(c.points.size() == 7);
        const double gar[] = {1.0, 0.99, 0.97, 0.90, 0.80, 0.60, 0.0};
        const double fmr[] = {1.0, 0.40, 0.20, 0.10, 0.05, 0.01, 0.0};
        const double iap[] = {1.0, 0.90, 0.80, 0.60, 0.30, 0.10, 0.0};
        for (int i = 0; i < 7; ++i) {
            CHECK(c.points[i].gar == doctest::Approx(gar[i] * 0.9).epsilon(1e-14));
            CHECK(c.points[i].gfmr == doctest::Approx(0.5 * fmr[i] * 0.9 + 0.5 * iap[i] * 0.1).epsilon(1e-14));
        }
    }

    TEST_CASE("w=0 collapses to the zero-effort column") {
        ResolvedOperatingPoint pt;
        pt.threshold = 0.0;
        pt.apcer = 0.2;
        pt.bpcer = 0.05;
        const auto c = groc_curve(m, pt, 0.0);
        const auto pts = m.points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(c.points[i].gar == pts[i].gar * 0.95);
            CHECK(c.points[i].gfmr == pts[i].fmr * 0.95);
        }
    }

    TEST_CASE("individual curve endpoints and mixture") {
        const auto pts = m.points();
        const auto c0 = individual_groc_curve(m, 0.0);
        const auto c1 = individual_groc_curve(m, 1.0);
        const auto cq = individual_groc_curve(m, 0.25);
        CHECK(c0.is_individual());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(c0.points[i].gar == pts[i].gar);
            CHECK(c0.points[i].gfmr == pts[i].fmr);
            CHECK(c1.points[i].gfmr == pts[i].iapmr);
            CHECK(cq.points[i].gfmr == doctest::Approx(0.75 * pts[i].fmr + 0.25 * pts[i].iapmr).epsilon(1e-15));
        }
    }

    TEST_CASE("pass-through point equals the individual curve") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 50; ++i) {
            const auto rm = oracle::random_matcher(rng, 20);
            const double w = i / 49.0;
            CHECK(groc_curve(rm, ResolvedOperatingPoint::pass_through(), w) == individual_groc_curve(rm, w));
        }
    }

    TEST_CASE("curves are non-increasing along the threshold") {
        std::mt19937_64 rng(32);
        for (int i = 0; i < 50; ++i) {
            const auto rm = oracle::random_matcher(rng, 30);
            ResolvedOperatingPoint pt;
            pt.apcer = 0.3;
            pt.bpcer = 0.1;
            const auto c = groc_curve(rm, pt, 0.4);
            for (std::size_t k = 1; k < c.points.size(); ++k) {
                CHECK(c.points[k].match_threshold > c.points[k - 1].match_threshold);
                CHECK(c.points[k].gar <= c.points[k - 1].gar);
                CHECK(c.points[k].gfmr <= c.points[k - 1].gfmr);
            }
        }
    }

    TEST_CASE("fused table matches pointwise composition") {
        ResolvedOperatingPoint pt;
        pt.apcer = 0.1;
        pt.bpcer = 0.2;
        const auto t = fused_table(m, pt);
        const auto pts = m.points();
        REQUIRE(t.size() == pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(t[i].match_threshold == pts[i].threshold);
            CHECK(t[i].rates == compose_sequential(pts[i].rates(), pt.rates()));
        }
    }
}
