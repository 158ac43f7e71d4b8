#include <doctest.h>

#include "betadyn/dimension.hpp"
#include "betadyn/error.hpp"

#include <random>

using namespace betadyn;

namespace {

mpq_class q(const char* s) { return mpq_class(s); }

mpq_class random_rational(std::mt19937_64& rng, long max_num, long den_max) {
    long den = std::uniform_int_distribution<long>(1, den_max)(rng);
    long num = std::uniform_int_distribution<long>(0, max_num * den)(rng);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("sw and bl formulas") {
    CHECK(sw_dimension(ExtRational(0L)) == 1);
    CHECK(sw_dimension(ExtRational(1L)) == q("1/2"));
    CHECK(sw_dimension(ExtRational::inf()) == 0);

    CHECK(*bl_dimension(1, q("1/3")) == q("1/4"));
    CHECK(*bl_dimension(2, q("1/2")) == q("1/9"));
    CHECK_FALSE(bl_dimension(q("1/3"), q("1/2")).has_value());
    CHECK_THROWS_AS(bl_dimension(0, q("1/2")), Error);
    CHECK_THROWS_AS(bl_dimension(1, 1), Error);

    CHECK(covering_critical_exponent(2, q("1/2")) == q("1/9"));
    CHECK(covering_critical_exponent(3, 0) == sw_dimension(ExtRational(3L)));
    CHECK(covering_critical_exponent(q("1/2"), q("1/6")) == q("1/2"));
    CHECK_THROWS_AS(covering_critical_exponent(q("1/2"), q("1/2")), Error);
}

TEST_CASE("bl maximizer and small v_hat limit") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        long den = std::uniform_int_distribution<long>(2, 500)(rng);
        long num = std::uniform_int_distribution<long>(1, den - 1)(rng);
        mpq_class w(num, den);
        w.canonicalize();
        mpq_class v = 2 * w / (1 - w);
        mpq_class peak = *bl_dimension(v, w);
        mpq_class r = (1 - w) / (1 + w);
        CHECK(peak == r * r);
        // neighbours on a grid never beat the peak
        for (int s = 1; s <= 20; ++s) {
            mpq_class step(s, 40);
            CHECK(*bl_dimension(v + step, w) <= peak);
            mpq_class left = v - step * v / 2;
            if (left >= w / (1 - w)) CHECK(*bl_dimension(left, w) <= peak);
        }
    }
    for (long v = 1; v <= 5; ++v) {
        mpq_class w("1/1000000");
        mpq_class diff = *bl_dimension(v, w) - sw_dimension(ExtRational(v));
        double gap = diff.get_d();
        CHECK(std::abs(gap) < 1e-5);
    }
}

TEST_CASE("classifier examples") {
    auto c = [](const char* s) { return classify_bounds(ExponentQuadruple::parse(s)); };
    DimensionVerdict e1 = c("0,0,0,3");
    CHECK(e1.kind == DimensionVerdict::Kind::Interval);
    CHECK(e1.lower == 0);
    CHECK(e1.upper == q("1/4"));
    DimensionVerdict e4 = c("0,0,1,3");
    CHECK(e4.lower == 0);
    CHECK(e4.upper == 0);
    DimensionVerdict e5 = c("3,10/3,21/32,2/3");
    CHECK(e5.lower == q("1/25"));
    CHECK(e5.upper == q("121/2809"));
    DimensionVerdict e7 = c("1/3,2/3,2/11,2/11");
    CHECK(e7.lower == q("9/20"));
    CHECK(e7.upper == q("81/169"));
    DimensionVerdict e3 = c("1/2,1,1/6,1/2");
    CHECK(e3.lower == q("1/9"));
    CHECK(e3.upper == q("1/2"));
    DimensionVerdict e6 = c("1,1,0,1/4");
    CHECK(e6.lower == q("1/3"));
    CHECK(e6.upper == q("1/2"));

    CHECK(c("0,0,0,0").kind == DimensionVerdict::Kind::FullDimension);
    CHECK(c("0,0,0,0").lower == 1);
    CHECK(c("1,2,inf,inf").kind == DimensionVerdict::Kind::Countable);
    CHECK(c("0,1,2,3").kind == DimensionVerdict::Kind::Countable);
    DimensionVerdict a3 = c("inf,inf,0,1/2");
    CHECK(a3.upper == 0);
    CHECK(a3.active_case == "asymptotic-liminf-infinite");
    CHECK(c("1,1,1/2,inf").upper == 0);
    // limsup above one, liminf under the threshold
    DimensionVerdict gap = c("1,2,1/10,3");
    CHECK(gap.lower == 0);
    CHECK(gap.upper == q("1/4"));
    DimensionVerdict gap2 = c("1,2,1/10,6/5");
    CHECK(gap2.upper == *bl_dimension(1, q("1/10")));
    CHECK_THROWS_AS(c("1,0,0,0"), Error);
    CHECK_THROWS_AS(ExponentQuadruple::parse("1,2,3"), Error);
}

TEST_CASE("classifier invariants on random quadruples") {
    std::mt19937_64 rng(5);
    auto ext = [&](ExtRational base) {
        if (std::uniform_int_distribution<int>(0, 19)(rng) == 0) return ExtRational::inf();
        if (base.infinite) return base;
        return ExtRational(mpq_class(base.value + random_rational(rng, 2, 12)));
    };
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        ExponentQuadruple qd;
        qd.v1_lo = ext(ExtRational(0L));
        qd.v1_hi = ext(qd.v1_lo);
        qd.v2_lo = std::uniform_int_distribution<int>(0, 4)(rng) == 0 ? ExtRational(0L)
                                                                      : ExtRational(random_rational(rng, 1, 12));
        qd.v2_hi = ext(qd.v2_lo);
        DimensionVerdict d = classify_bounds(qd);
        CHECK(0 <= d.lower);
        CHECK(d.lower <= d.upper);
        CHECK(d.upper <= 1);
        if (d.kind == DimensionVerdict::Kind::Countable) CHECK(d.upper == 0);
        if (qd.v2_hi.infinite) continue;
        ExponentQuadruple bigger = qd;
        bigger.v2_hi = ExtRational(mpq_class(qd.v2_hi.value + random_rational(rng, 1, 12)));
        CHECK(classify_bounds(bigger).upper <= d.upper);
        ++checked;
    }
    CHECK(checked > 5000);
}

TEST_CASE("uniform classifier and inclusion") {
    CHECK(classify_uniform(ExtRational(2L), ExtRational(3L)).kind == DimensionVerdict::Kind::Countable);
    DimensionVerdict m = classify_uniform(ExtRational(q("1/2")), ExtRational(2L));
    CHECK(m.lower == 0);
    CHECK(m.upper == q("1/9"));
    DimensionVerdict z = classify_uniform(ExtRational(0L), ExtRational(0L));
    CHECK(z.lower == 1);
    CHECK(z.upper == 1);

    CHECK(inclusion_verdict(ExponentQuadruple::parse("0,0,1/2,1/2")));
    CHECK_FALSE(inclusion_verdict(ExponentQuadruple::parse("0,1,1/2,1/2")));
    CHECK_FALSE(inclusion_verdict(ExponentQuadruple::parse("0,0,0,3")));
}

TEST_CASE("example registry end to end") {
    auto results = run_examples();
    REQUIRE(results.size() == 7);
    const char* expected[] = {"1/4", "1/9", "1/2", "0", "1/25", "1/3", "9/20"};
    for (std::size_t i = 0; i < 7; ++i) {
        CAPTURE(results[i].entry->id);
        CHECK(results[i].exponents_match);
        CHECK(results[i].sharp_in_bounds);
        CHECK(results[i].dimension == q(expected[i]));
    }
    CHECK(results[3].generic_is_sharp);
    CHECK_FALSE(results[4].generic_is_sharp);
    CHECK_FALSE(results[6].generic_is_sharp);
}
