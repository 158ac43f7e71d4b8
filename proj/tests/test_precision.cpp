#include <doctest.h>

#include "betadyn/error.hpp"
#include "betadyn/precision.hpp"

#include <random>

using namespace betadyn;

namespace {

BetaValue golden() { return BetaValue::parse("poly:-1,-1,1@[1,2]"); }

}  // namespace

TEST_CASE("polynomial gcd and root counting") {
    Polynomial p({-1, -1, 1});
    CHECK(count_roots(p, 1, 2) == 1);
    CHECK(count_roots(p, -1, 2) == 2);
    CHECK(count_roots(p * p, -1, 2) == 2);
    CHECK(squarefree_part(p * p) == p);
    CHECK(gcd(p * Polynomial({-3, 1}), p * Polynomial({5, 1})) == p);
}

TEST_CASE("make_beta from a polynomial") {
    BetaValue g = golden();
    CHECK(g.digit_bound() == 1);
    CHECK_FALSE(g.is_rational());
    Enclosure e = g.enclosure(128);
    CHECK(e.lo > 1);
    CHECK(e.width() <= mpq_class(1, 1) / mpq_class(mpz_class(1) << 128));
    mpq_class mid = (e.lo + e.hi) / 2;
    CHECK(abs(mid * mid - mid - 1) < mpq_class("1/1000000000000"));
    CHECK(std::abs(g.approx() - 1.6180339887498949) < 1e-12);
}

TEST_CASE("make_beta from decimals") {
    BetaValue two = BetaValue::parse("dec:2");
    CHECK(two.is_rational());
    CHECK(two.is_integer());
    CHECK(two.digit_bound() == 1);
    CHECK(BetaValue::parse("dec:2.5").digit_bound() == 2);
    CHECK(*BetaValue::parse("dec:2.5").rational_value() == mpq_class(5, 2));
}

TEST_CASE("make_beta errors") {
    auto kind_of = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::UnmatchedCase;
    };
    CHECK(kind_of([] { BetaValue::parse("dec:1"); }) == ErrorKind::NotGreaterThanOne);
    CHECK(kind_of([] { BetaValue::parse("poly:-1,-1,1@[-2,2]"); }) == ErrorKind::RootNotIsolated);
    CHECK(kind_of([] { BetaValue::parse("poly:-1,-1,1@[3,4]"); }) == ErrorKind::RootNotIsolated);
    CHECK(kind_of([] { BetaValue::parse("poly:1,-1,1@[1,2]"); }) == ErrorKind::RootNotIsolated);
    CHECK(kind_of([] { BetaValue::parse("poly:-1,-1,1@[-1,0]"); }) == ErrorKind::NotGreaterThanOne);
    CHECK(kind_of([] { BetaValue::parse("poly:x@[1,2]"); }) == ErrorKind::ParseError);
}

TEST_CASE("reducible polynomial with integer root degrades to rational") {
    // (z - 2)(z^2 - z - 1) isolated around 2
    BetaValue b = BetaValue::from_polynomial(Polynomial({-2, 1}) * Polynomial({-1, -1, 1}), mpq_class(19, 10), mpq_class(21, 10));
    CHECK(b.is_integer());
    CHECK(b.digit_bound() == 1);
}

TEST_CASE("safe_floor") {
    CHECK(safe_floor(RealScalar(mpq_class(19999, 10000))) == 1);
    CHECK(safe_floor(RealScalar(2)) == 2);
    BetaValue g = golden();
    RealScalar b = RealScalar::beta(g);
    CHECK(safe_floor(b * b) == 2);
    // beta^2 - beta is exactly 1
    CHECK(safe_floor(b * b - b) == 1);
    CHECK(safe_floor(b * b - b - RealScalar(mpq_class(1, 1000000))) == 0);
}

TEST_CASE("safe_floor agrees with rational floor") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 5000);
    for (int i = 0; i < 1000; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        mpz_class expect;
        mpz_fdiv_q(expect.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        CHECK(safe_floor(RealScalar(q)) == expect);
    }
}

TEST_CASE("compare_exact") {
    mpq_class third(1, 3);
    mpq_class forty = parse_rational("0.3333333333333333333333333333333333333333");
    CHECK(compare_exact(third, forty) == std::strong_ordering::greater);
    BetaValue g = golden();
    RealScalar b = RealScalar::beta(g);
    CHECK(compare_exact(b - RealScalar(1), RealScalar::beta_power(g, -1)) == std::strong_ordering::equal);
    CHECK(compare_exact(RealScalar(), RealScalar()) == std::strong_ordering::equal);
    CHECK(compare_exact(RealScalar::beta_power(g, -3), RealScalar::beta_power(g, -2)) == std::strong_ordering::less);
}

TEST_CASE("compare_exact is antisymmetric and transitive on rationals") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
    std::vector<mpq_class> v;
    for (int i = 0; i < 30; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        v.push_back(q);
    }
    for (const auto& a : v)
        for (const auto& b : v) {
            CHECK((compare_exact(a, b) < 0) == (compare_exact(b, a) > 0));
            for (const auto& c : v)
                if (compare_exact(a, b) <= 0 && compare_exact(b, c) <= 0) CHECK(compare_exact(a, c) <= 0);
        }
}

TEST_CASE("equality certificate with a reducible defining polynomial") {
    // beta is the golden root of (z^2 - z - 1)(z^2 - 3): representatives are not unique
    BetaValue b = BetaValue::from_polynomial(Polynomial({-1, -1, 1}) * Polynomial({-3, 0, 1}), mpq_class(3, 2), mpq_class(17, 10));
    RealScalar x = RealScalar::beta(b);
    CHECK(b.degree() == 4);
    CHECK(sign(x * x - x - RealScalar(1)) == 0);
    CHECK(safe_floor(x * x - x) == 1);
}

TEST_CASE("refinement never widens") {
    BetaValue g = BetaValue::parse("tribonacci");
    Enclosure prev = g.enclosure(128);
    for (unsigned bits = 256; bits <= 4096; bits *= 2) {
        Enclosure e = g.enclosure(bits);
        CHECK(e.lo >= prev.lo);
        CHECK(e.hi <= prev.hi);
        prev = e;
    }
    CHECK(std::abs(g.approx() - 1.8392867552141612) < 1e-12);
}

TEST_CASE("precision exhaustion is reported") {
    BetaValue g = golden();
    mpq_class near = g.enclosure(6000).lo;
    RealScalar d = RealScalar::beta(g) - RealScalar(near);
    CHECK_THROWS_AS(sign(d), Error);
    try {
        safe_floor(RealScalar::beta(g) * RealScalar(mpq_class(1) / near));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PrecisionExhausted);
    }
    set_precision_budget(8192);
    CHECK(sign(d) == 1);
    set_precision_budget(4096);
}

TEST_CASE("sqrt 3 identities") {
    BetaValue s = BetaValue::parse("poly:-3,0,1@[1,2]");
    RealScalar x = RealScalar::beta(s);
    CHECK(sign(x * x - RealScalar(3)) == 0);
    CHECK(safe_floor(x * x) == 3);
}
