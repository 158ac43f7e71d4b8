#include <doctest.h>

#include "betadyn/error.hpp"
#include "betadyn/orbit.hpp"
#include "betadyn/runs.hpp"

#include <cmath>

using namespace betadyn;

TEST_CASE("orbit examples") {
    BetaValue two = BetaValue::parse("dec:2");
    BetaValue g = BetaValue::parse("golden");
    Orbit z = orbit(RealScalar(), g, 5);
    CHECK(*z.first_zero == 0);
    for (const auto& p : z.points) CHECK(p.is_exact_zero());
    Orbit h = orbit(mpq_class(1, 2), two, 4);
    CHECK(*h.first_zero == 1);
    CHECK(*h.points[0].as_rational() == mpq_class(1, 2));
    Orbit o = orbit(RealScalar::beta_power(g, -2), g, 3);
    CHECK(compare_exact(o.points[1], RealScalar::beta_power(g, -1)) == 0);
    CHECK(*o.first_zero == 2);
}

TEST_CASE("speed function parsing") {
    SpeedFn f = SpeedFn::parse("rule(index=tower, rate=3); rule(index=all, const=1)");
    CHECK(f.rules().size() == 2);
    CHECK(f.at(27).value == -81);
    CHECK(f.at(28).constant);
    CHECK(SpeedFn::parse(f.to_string()).to_string() == f.to_string());
    SpeedFn g = SpeedFn::parse("rule(index=geom:4, rate=2);rule(index=all, rate=1/2)");
    CHECK(g.rule_index(64) == 0);
    CHECK(g.rule_index(65) == 1);
    CHECK(SpeedFn::parse("rule(index=list:3,5, rate=1);rule(rate=2)").rule_index(5) == 0);
    CHECK_THROWS_AS(SpeedFn::parse("rule(index=arith:2,0, rate=1)"), Error);
    CHECK_THROWS_AS(SpeedFn::parse("rule(index=all)"), Error);
    CHECK_THROWS_AS(SpeedFn::parse("rule(index=all, const=0)"), Error);
    CHECK(SpeedFn::parse("rule(index=arith:2,0, rate=1);rule(index=arith:2,1, rate=2)").rules().size() == 2);
}

TEST_CASE("hitting_times") {
    BetaValue two = BetaValue::parse("dec:2");
    SpeedFn psi = SpeedFn::rate(1);
    CHECK(hitting_times(RealScalar(), two, psi, 5) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
    CHECK(hitting_times(mpq_class(5, 8), two, psi, 6) == std::vector<std::uint64_t>{1, 3, 4, 5, 6});
    SpeedFn one = SpeedFn::parse("rule(index=all, const=1)");
    CHECK(hitting_times(mpq_class(2, 3), two, one, 5).size() == 5);
}

TEST_CASE("uniform_check") {
    BetaValue two = BetaValue::parse("dec:2");
    SpeedFn psi = SpeedFn::rate(2);
    for (auto [N, ok] : uniform_check(RealScalar(), two, psi, 0, 10)) CHECK(ok);
    // x = 2/3 has expansion (10)^infinity; its orbit stays in {1/3, 2/3}
    auto v = uniform_check(mpq_class(2, 3), two, psi, 1, 10);
    for (auto [N, ok] : v) CHECK(ok == (N == 0));
    CHECK_FALSE(v.back().second);
    auto w = uniform_check(mpq_class(5, 8), two, psi, 1, 6);
    for (auto [N, ok] : w) CHECK(ok == (N >= 3));
    SpeedFn one = SpeedFn::parse("rule(index=all, const=1)");
    for (auto [N, ok] : uniform_check(mpq_class(2, 3), two, one, 0, 10)) CHECK(ok);
}

TEST_CASE("below_speed with fractional exponents") {
    BetaValue g = BetaValue::parse("golden");
    RealScalar x = RealScalar::beta_power(g, -3);
    CHECK_FALSE(below_speed(x, g, {false, -3}));
    CHECK(below_speed(x, g, {false, mpq_class(-29, 10)}));
    CHECK_FALSE(below_speed(x, g, {false, mpq_class(-31, 10)}));
    // beta^-3 against beta^{-3}: equality is not below
    CHECK_FALSE(below_speed(x, g, {false, mpq_class(-6, 2)}));
}

TEST_CASE("psi_exponents exact mode") {
    auto e1 = psi_exponents(SpeedFn::parse("rule(index=tower, rate=3);rule(index=all, const=1)"));
    CHECK(e1.exact);
    CHECK(e1.lo == 0);
    CHECK(e1.hi == 3);
    auto e2 = psi_exponents(SpeedFn::parse("rule(index=geom:4, rate=2);rule(index=all, rate=1/2)"));
    CHECK(e2.lo == mpq_class(1, 2));
    CHECK(e2.hi == 2);
    auto e7 = psi_exponents(SpeedFn::parse("rule(index=all, rate=2/11)"));
    CHECK(e7.lo == mpq_class(2, 11));
    CHECK(e7.hi == mpq_class(2, 11));
    // A finite list never matters; a rule shadowed by an earlier one never fires.
    auto e3 = psi_exponents(SpeedFn::parse("rule(index=list:1,2,3, rate=9);rule(index=all, rate=1);rule(index=tower, rate=5)"));
    CHECK(e3.lo == 1);
    CHECK(e3.hi == 1);
    auto e4 = psi_exponents(SpeedFn::parse("rule(index=arith:2,0, rate=1);rule(index=arith:2,1, rate=3)"));
    CHECK(e4.lo == 1);
    CHECK(e4.hi == 3);
}

TEST_CASE("psi_exponents numeric mode agrees") {
    auto e = psi_exponents(SpeedFn::parse("rule(index=geom:4, rate=2);rule(index=all, rate=1/2)"), 100000, true);
    CHECK_FALSE(e.exact);
    CHECK(e.lo_approx == doctest::Approx(0.5));
    CHECK(e.hi_approx == doctest::Approx(2));
}

TEST_CASE("normalize_psi") {
    SpeedFn f = normalize_psi(SpeedFn::parse("rule(index=arith:2,0, rate=-1);rule(index=all, rate=1)"));
    CHECK(f.at(4).constant);
    CHECK(f.at(4).value == 1);
    CHECK(f.at(5).value == -5);
    SpeedFn id = SpeedFn::parse("rule(index=all, rate=1)");
    CHECK(normalize_psi(id).to_string() == id.to_string());
    SpeedFn two = SpeedFn::parse("rule(index=all, const=2);cap1");
    CHECK(two.at(3).value == 1);
    auto e = psi_exponents(two);
    CHECK(e.lo == 0);
    CHECK(e.hi == 0);
}

TEST_CASE("witness streams") {
    auto p = witness_stream(parse_witness("periodic:100"));
    CHECK(p.prefix(7) == std::vector<int>{1, 0, 0, 1, 0, 0, 1});
    auto s = witness_stream(ScheduledWitness{4, 2});
    auto rd = run_decomposition(s, 5000);
    REQUIRE(rd.selected.size() >= 4);
    for (std::size_t k = 0; k < 4; ++k) {
        std::uint64_t n = 1;
        for (std::size_t j = 0; j <= k; ++j) n *= 4;
        CHECK(rd.selected[k].start == n);
        CHECK(rd.selected[k].end == 3 * n);
    }
    auto a = witness_stream(PsiAWitness{1.1, 3});
    CHECK(a.prefix(6) == std::vector<int>{1, 0, 0, 1, 0, 0});
    CHECK(a.zero_from().has_value());
    CHECK_THROWS_AS(witness_stream(PsiAWitness{1.1, 9}), Error);
    CHECK_THROWS_AS(witness_stream(ScheduledWitness{2, 3}), Error);
}

TEST_CASE("witness streams avoid adjacent ones") {
    for (const char* spec : {"scheduled:2,1", "scheduled:4,2", "scheduled:3,1/2", "chained:2", "chained:3/2,8"}) {
        auto d = witness_stream(parse_witness(spec)).prefix(20000);
        for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK_FALSE((d[i] == 1 && d[i + 1] == 1));
    }
}

TEST_CASE("run_decomposition") {
    auto alt = run_decomposition(DigitStream::periodic(DigitWord{1, 0}), 100);
    CHECK(alt.runs.size() == 49);
    CHECK(alt.selected.size() == 1);
    // zero blocks of lengths 1, 2, 3, ... so the gaps grow
    DigitWord w;
    for (int len = 1; len <= 6; ++len) {
        w.push_back(1);
        for (int i = 0; i < len; ++i) w.push_back(0);
    }
    w.push_back(1);
    auto grow = run_decomposition(DigitStream::periodic(w), w.size());
    CHECK(grow.selected.size() == 6);
    CHECK(grow.selected.size() == grow.runs.size());
    auto zero = run_decomposition(DigitStream::periodic(DigitWord{0}), 50);
    CHECK(zero.terminating);
}

TEST_CASE("estimate_exponents") {
    auto e = estimate_exponents(witness_stream(ScheduledWitness{2, 1}), 1 << 20);
    CHECK(std::abs(e.nu.value - 1) < 0.05);
    CHECK(std::abs(e.nu_hat.value - 0.5) < 0.05);
    auto t = estimate_exponents(DigitStream::from_word(DigitWord{1, 0, 0, 1}), 100);
    CHECK(t.nu.infinite);
    CHECK(t.nu_hat.infinite);
    CHECK_THROWS_AS(estimate_exponents(DigitStream::periodic(DigitWord{1, 0, 0}), 1000), Error);
    auto c = estimate_exponents(witness_stream(ChainedWitness{4, 4}), 1 << 20);
    CHECK(std::abs(c.nu_hat.value - 0.75) < 0.05);
    CHECK(std::abs(c.nu.value - 3) < 0.05);
    auto psia = estimate_exponents(witness_stream(PsiAWitness{1.1, 5}), 1 << 20);
    CHECK(psia.nu.infinite);
}

TEST_CASE("bracketing on exact orbits") {
    BetaValue g = BetaValue::parse("golden");
    auto stream = witness_stream(ScheduledWitness{3, 1});
    std::vector<int> digits = stream.prefix(300);
    RealScalar x = RealScalar::from_digits(g, digits);
    auto rd = run_decomposition(stream, 300);
    Orbit o = orbit(x, g, 300);
    for (const auto& r : rd.selected) {
        if (r.end + 2 >= 300) continue;
        const RealScalar& y = o.points[r.start];
        long n = static_cast<long>(r.start), m = static_cast<long>(r.end);
        CHECK(compare_exact(RealScalar::beta_power(g, n - m), y) < 0);
        CHECK(compare_exact(y, RealScalar::beta_power(g, n - m + 1)) < 0);
    }
}

TEST_CASE("expansion streams flag termination") {
    BetaValue two = BetaValue::parse("dec:2");
    auto d = DigitStream::expansion(mpq_class(5, 8), two);
    auto e = estimate_exponents(d, 100);
    CHECK(e.nu.infinite);
    auto third = DigitStream::expansion(mpq_class(1, 3), two);
    CHECK(third.prefix(6) == std::vector<int>{0, 1, 0, 1, 0, 1});
    CHECK_FALSE(run_decomposition(third, 100).terminating);
}
