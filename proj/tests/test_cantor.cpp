#include <doctest.h>

#include "betadyn/cantor.hpp"
#include "betadyn/error.hpp"

#include <cmath>

using namespace betadyn;

namespace {

CantorConstruction main_construction(std::size_t K) {
    return CantorConstruction(build_schedule(2, mpq_class(1, 2), 0, 8, K), BetaValue::parse("2"));
}

}  // namespace

TEST_CASE("schedule examples") {
    CantorSchedule s = build_schedule(2, mpq_class(1, 2), 0, 8, 4);
    CHECK(s.n == std::vector<std::uint64_t>{4, 16, 64, 256});
    CHECK(s.m == std::vector<std::uint64_t>{12, 48, 192, 768});
    CHECK(s.t == std::vector<std::uint64_t>{0, 0, 0, 0});
    CHECK(s.n_next == 1024);
    CHECK(s.repairs == 0);
    CHECK(s.l == std::vector<std::uint64_t>{4, 48, 128, 352});
    CHECK(s.h == std::vector<std::uint64_t>{44, 112, 288, 896});
    CHECK(s.nu_ratio() == 2.0);
    CHECK(s.nu_hat_ratio() == 0.5);

    CantorSchedule tw = build_schedule(1, 0, 0, 4, 3);
    CHECK(tw.tower);
    CHECK(tw.n == std::vector<std::uint64_t>{1, 4, 27});
    CHECK(tw.m == std::vector<std::uint64_t>{2, 8, 54});

    CHECK_THROWS_AS(build_schedule(mpq_class(1, 3), mpq_class(1, 2), 0, 8, 4), Error);
    try {
        build_schedule(mpq_class(1, 3), mpq_class(1, 2), 0, 8, 4);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InfeasibleTargets);
    }
    try {
        build_schedule(2, mpq_class(1, 2), 0, 8, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSchedule);
    }
}

TEST_CASE("schedule invariants") {
    struct Case {
        mpq_class v, w, d;
        std::size_t K;
    };
    std::vector<Case> cases = {{mpq_class(3, 2), mpq_class(1, 3), mpq_class(1, 100), 14},
                               {2, mpq_class(1, 2), 0, 9},
                               {1, mpq_class(1, 2), 0, 10},  // boundary: needs repairs
                               {mpq_class(5, 2), mpq_class(1, 4), mpq_class(1, 50), 10}};
    for (const auto& c : cases) {
        CantorSchedule s = build_schedule(c.v, c.w, c.d, 4, c.K);
        for (std::size_t k = 0; k < s.K; ++k) {
            std::uint64_t next = k + 1 < s.K ? s.n[k + 1] : s.n_next;
            CHECK(s.n[k] < s.m[k]);
            CHECK(s.m[k] < next);
            if (k > 0) CHECK(s.gap(k) >= s.gap(k - 1));
            CHECK(s.m[k] + s.t[k] * s.gap(k) < next);
            CHECK(s.m[k] + (s.t[k] + 1) * s.gap(k) >= next);
            if (k + 3 >= s.K) CHECK(s.t[k] <= 2.0 / mpq_class(c.w + c.d).get_d() + 1);
        }
        if (s.repairs == 0) {
            CHECK(s.nu_residual() < 0.02);
            CHECK(s.nu_hat_residual() < 0.02);
        }
    }
    CHECK(build_schedule(1, mpq_class(1, 2), 0, 4, 10).repairs > 0);
}

TEST_CASE("template layout and generated words") {
    CantorConstruction c(build_schedule(2, mpq_class(1, 2), 0, 2, 3), BetaValue::parse("2"));
    // first marker occupies positions 4..8
    auto words = generate_level_words(c, 8);
    CHECK(words.size() == 5);  // beta_2 = golden mean: no "11" in fillers
    for (const auto& w : words) CHECK(w.suffix_from(3) == DigitWord::parse("00100"));
    // before the first scheduled digit only fillers vary
    auto early = generate_level_words(c, 3);
    CHECK(early.size() == c.block_count(3));
    CHECK(c.count(3) == c.block_count(3));

    BetaValue g = BetaValue::parse("golden");
    CantorConstruction cg(build_schedule(3, mpq_class(1, 2), 0, 3, 3), g);
    std::uint64_t depth = std::min<std::uint64_t>(cg.max_depth_within(4096), 40);
    for (std::uint64_t n = 1; n <= depth; ++n)
        for (const auto& w : generate_level_words(cg, n)) CHECK(is_admissible(w, g));
    CHECK_THROWS_AS(generate_level_words(main_construction(4), 400), Error);
}

TEST_CASE("measure definition") {
    CantorConstruction c = main_construction(4);
    CHECK(c.mass(DigitWord()) == 1);
    // blocks shorter than N admit every binary word
    CHECK(c.mass(DigitWord::parse("101")) == mpq_class(1, 8));
    CHECK(c.mass(DigitWord::parse("10")) == c.mass(DigitWord::parse("11")));
    CHECK(c.mass(DigitWord::parse("1")) == mpq_class(1, 2));

    // block counts against the no-8-ones recurrence
    CHECK(c.block_count(15) == 32192);
    CHECK(c.block_count(63) == mpz_class("8237168505776637425"));

    // milestone masses follow the block product
    const auto& s = c.schedule();
    mpz_class prod = c.block_count(s.n[0] - 1);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(c.mass(c.representative(s.h[k])) == mpq_class(1, prod));
        CHECK(c.mass(c.representative(s.l[k])) == c.mass(c.representative(s.h[k])));
        std::uint64_t next = k + 1 < s.K ? s.n[k + 1] : s.n_next;
        prod *= c.block_count(next - s.m[k] - 1);
    }

    DigitWord bad = c.representative(10);
    bad = bad.prefix(7) + DigitWord{1};  // position 8 sits in the 0^N padding
    CHECK_THROWS_AS(c.mass(bad), Error);
    DigitWord ones = DigitWord::parse("11111111");
    CantorConstruction longer(build_schedule(3, mpq_class(1, 5), 0, 8, 2), BetaValue::parse("2"));
    CHECK_THROWS_AS(longer.mass(ones), Error);
    CHECK(longer.mass(ones.prefix(7)) > 0);
}

TEST_CASE("mass conservation") {
    CantorConstruction c = main_construction(4);
    auto r = check_mass_conservation(c, c.max_depth_within(1 << 14));
    CHECK(r.failures == 0);
    CHECK(r.total_is_one);
    CHECK(r.nodes > 1000);

    CantorConstruction cg(build_schedule(3, mpq_class(1, 2), 0, 3, 3), BetaValue::parse("golden"));
    auto rg = check_mass_conservation(cg, std::min<std::uint64_t>(cg.max_depth_within(1 << 12), 60));
    CHECK(rg.failures == 0);
    CHECK(rg.total_is_one);
}

TEST_CASE("length sandwich and milestone fullness") {
    BetaValue g = BetaValue::parse("golden");
    CantorConstruction cg(build_schedule(3, mpq_class(1, 2), 0, 3, 3), g);
    std::uint64_t depth = std::min<std::uint64_t>(cg.max_depth_within(512), 24);
    for (std::uint64_t n = 1; n <= depth; ++n) {
        for (const auto& w : generate_level_words(cg, n)) {
            RealScalar len = cylinder_interval(w, g).length();
            CHECK(sign(len - RealScalar::beta_power(g, -static_cast<long>(n + 3))) >= 0);
            CHECK(sign(RealScalar::beta_power(g, -static_cast<long>(n)) - len) >= 0);
        }
    }
    const auto& s = cg.schedule();
    for (std::size_t k = 0; k < 2; ++k) {
        for (const auto& w : sample_words(cg, s.h[k], 5, 3)) CHECK(is_full(w, g));
    }
}

TEST_CASE("sampling follows the template") {
    CantorConstruction c = main_construction(3);
    auto ws = sample_words(c, c.schedule().h[2], 20, 9);
    CHECK(ws.size() == 20);
    for (const auto& w : ws) {
        CHECK(w.size() == c.schedule().h[2]);
        CHECK(c.mass(w) == c.mass(c.representative(w.size())));
    }
    CHECK(sample_words(c, 50, 3, 4) == sample_words(c, 50, 3, 4));
}

TEST_CASE("local dimension series") {
    CantorConstruction c = main_construction(5);
    auto series = local_dimension_series(c, 5);
    const double frozen[] = {0.0681818181818, 0.0535714285714, 0.0728278284368, 0.0935393624996, 0.104609498872};
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(series[k].full);
        CHECK(series[k].ratio == doctest::Approx(frozen[k]).epsilon(1e-9));
    }
    double target = local_dimension_target(c);
    CHECK(target == doctest::Approx(0.110792695221886).epsilon(1e-9));
    CHECK(std::abs(series[3].ratio - target) < 0.05);

    CantorConstruction tower(build_schedule(1, 0, 0, 4, 3), BetaValue::parse("2"));
    double expected = 0.5 * std::log(tower.beta_n().approx()) / std::log(2.0);
    CHECK(local_dimension_target(tower) == doctest::Approx(expected));
    auto ts = local_dimension_series(tower, 1);
    CHECK(std::isfinite(ts[0].ratio));
}

TEST_CASE("box counting") {
    std::vector<CoverScale> thirds;
    for (int k = 1; k <= 8; ++k) thirds.push_back({k * std::log(3.0), k * std::log(2.0)});
    auto r = boxcount_estimate(thirds);
    CHECK(r.slope == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(r.residual < 1e-12);

    BetaValue two = BetaValue::parse("2");
    std::vector<MeasuredCylinder> tree;
    for (std::size_t n = 1; n <= 8; ++n)
        for (auto& cyl : partition_level(two, n)) tree.push_back({cyl, 0, n});
    CHECK(boxcount_estimate(tree).slope == doctest::Approx(1.0).epsilon(0.02));

    CHECK_THROWS_AS(boxcount_estimate(std::vector<CoverScale>(thirds.begin(), thirds.begin() + 3)), Error);

    CantorConstruction c = main_construction(5);
    auto est = boxcount_estimate(milestone_cover(c, 2, 5));
    CHECK(est.slope == doctest::Approx(0.10716588).epsilon(1e-6));
    CHECK(std::abs(est.slope - local_dimension_target(c)) < 0.08);

    auto cover = measured_cover(main_construction(2), 6);
    std::string csv = cover_csv(cover, 10);
    CHECK(csv.rfind("level,word,left,length,mass\n", 0) == 0);
    CHECK(csv.find("3,101,0.625") != std::string::npos);
}

TEST_CASE("membership checks") {
    CantorConstruction c = main_construction(4);
    const auto& s = c.schedule();
    SpeedFn psi1 = SpeedFn::parse("rule(index=all, rate=19/10)");
    SpeedFn psi2 = SpeedFn::parse("rule(index=all, rate=9/20)");

    auto zero = verify_membership(c, {DigitWord::zeros(s.h[3])}, psi1, psi2);
    CHECK(zero.passed());
    CHECK(zero.asymptotic_checks == 4);

    // The 0^N padding shifts the scheduled 1 of level k to p = n_k + N + 4(k-1)N while
    // the zero run after it only has m_k - n_k + 2N - 1 digits; the bound beta^{-1.9 p}
    // is met at k = 1 (23 >= 22.8) and missed for k = 2, 3, 4.
    auto ws = sample_words(c, s.h[3], 10, 2);
    auto r = verify_membership(c, ws, psi1, psi2);
    CHECK(r.milestones == 4);
    CHECK(r.asymptotic_checks == 40);
    CHECK(r.asymptotic_violations == 30);
    for (const auto& v : r.violations)
        if (v.check == "asymptotic") CHECK((v.index == 56 || v.index == 136 || v.index == 360));

    // a faster uniform target fails as well
    auto fast = verify_membership(c, ws, psi1, SpeedFn::parse("rule(index=all, rate=3/5)"));
    CHECK(fast.uniform_violations > r.uniform_violations);

    // slower targets matching the padded ratios pass
    auto slow = verify_membership(c, ws, SpeedFn::parse("rule(index=all, rate=1/3)"),
                                  SpeedFn::parse("rule(index=all, rate=1/10)"));
    CHECK(slow.passed());
}
