#include <doctest.h>

#include "betadyn/cylinders.hpp"
#include "betadyn/error.hpp"

using namespace betadyn;

namespace {

// |I_n(w)| = beta^-n * T^j(1), j the automaton state after w (T^0(1) = 1).
RealScalar length_oracle(const DigitWord& w, const BetaValue& beta) {
    Automaton a = Automaton::for_beta(beta, w.size());
    int j = *a.run(w.view());
    RealScalar t = RealScalar(1);
    for (int i = 0; i < j; ++i) t = beta_step(t, beta);
    return RealScalar::beta_power(beta, -static_cast<long>(w.size())) * t;
}

}  // namespace

TEST_CASE("cylinder_interval examples") {
    BetaValue two = BetaValue::parse("dec:2");
    BetaValue g = BetaValue::parse("golden");
    Cylinder c = cylinder_interval(DigitWord{0}, two);
    CHECK(*c.left.as_rational() == 0);
    CHECK(*c.right.as_rational() == mpq_class(1, 2));
    Cylinder one = cylinder_interval(DigitWord{1}, g);
    CHECK(compare_exact(one.left, RealScalar::beta_power(g, -1)) == 0);
    CHECK(compare_exact(one.right, RealScalar(1)) == 0);
    CHECK(compare_exact(one.length(), RealScalar::beta_power(g, -2)) == 0);
    try {
        cylinder_interval(DigitWord{1, 1}, g);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAdmissible);
    }
}

TEST_CASE("is_full examples") {
    BetaValue two = BetaValue::parse("dec:2");
    BetaValue g = BetaValue::parse("golden");
    for (const auto& w : enumerate_admissible(two, 5)) CHECK(is_full(w, two));
    CHECK_FALSE(is_full(DigitWord{1}, g));
    CHECK(is_full(DigitWord{0}, g));
}

TEST_CASE("partition_level") {
    BetaValue two = BetaValue::parse("dec:2");
    BetaValue g = BetaValue::parse("golden");
    auto quarters = partition_level(two, 2);
    REQUIRE(quarters.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(*quarters[i].left.as_rational() == mpq_class(static_cast<long>(i)) / 4);
    auto gp = partition_level(g, 2);
    REQUIRE(gp.size() == 3);
    CHECK(compare_exact(gp[0].length(), RealScalar::beta_power(g, -2)) == 0);
    CHECK(compare_exact(gp[1].length(), RealScalar::beta_power(g, -3)) == 0);
    CHECK(compare_exact(gp[2].length(), RealScalar::beta_power(g, -2)) == 0);
    auto g5 = partition_level(g, 5);
    CHECK(g5.size() == 13);
    RealScalar total;
    for (std::size_t i = 0; i < g5.size(); ++i) {
        total = total + g5[i].length();
        if (i + 1 < g5.size()) CHECK(compare_exact(g5[i].right, g5[i + 1].left) == 0);
    }
    CHECK(compare_exact(total, RealScalar(1)) == 0);
}

TEST_CASE("cylinder lengths match the state formula") {
    for (const char* spec : {"golden", "tribonacci", "dec:2.5", "dec:1.2", "poly:-1,-2,0,1@[1,2]"}) {
        BetaValue b = BetaValue::parse(spec);
        for (std::size_t n = 1; n <= 6; ++n)
            for (const auto& c : partition_level(b, n)) CHECK(compare_exact(c.length(), length_oracle(c.word, b)) == 0);
    }
}

TEST_CASE("locate_cylinder") {
    BetaValue two = BetaValue::parse("dec:2");
    BetaValue g = BetaValue::parse("golden");
    Cylinder c = locate_cylinder(mpq_class(3, 10), two, 3);
    CHECK(c.word == DigitWord{0, 1, 0});
    CHECK(*c.left.as_rational() == mpq_class(1, 4));
    CHECK(*c.right.as_rational() == mpq_class(3, 8));
    CHECK(locate_cylinder(RealScalar(), g, 4).word == DigitWord::zeros(4));
    CHECK(locate_cylinder(RealScalar::beta_power(g, -1), g, 2).word == DigitWord{1, 0});
}

TEST_CASE("smallest_full_extension") {
    BetaValue two = BetaValue::parse("dec:2");
    BetaValue g = BetaValue::parse("golden");
    CHECK(smallest_full_extension(DigitWord{1, 0}, two).word == DigitWord{1, 0});
    Cylinder e = smallest_full_extension(DigitWord{1}, g);
    CHECK(e.word == DigitWord{1, 0});
    CHECK(compare_exact(e.length(), cylinder_interval(DigitWord{1}, g).length()) == 0);
    DigitWord w{1, 0, 1};
    Cylinder f = smallest_full_extension(w, g);
    CHECK(compare_exact(f.length() * RealScalar::beta(g), cylinder_interval(w, g).length()) >= 0);
    CHECK(is_full(f, g));
}

TEST_CASE("product law and lower-digit fullness") {
    for (const char* spec : {"golden", "tribonacci", "dec:2.5"}) {
        BetaValue b = BetaValue::parse(spec);
        for (std::size_t n = 1; n <= 4; ++n) {
            for (const auto& w : enumerate_admissible(b, n)) {
                Cylinder c = cylinder_interval(w, b);
                if (is_full(c, b)) {
                    for (const auto& v : enumerate_admissible(b, 2)) {
                        Cylinder cv = cylinder_interval(w + v, b);
                        CHECK(compare_exact(cv.length(), c.length() * cylinder_interval(v, b).length()) == 0);
                    }
                }
                if (w[n - 1] > 0) {
                    for (int d = 0; d < w[n - 1]; ++d) {
                        std::vector<int> lower = w.digits();
                        lower.back() = d;
                        CHECK(is_full(DigitWord(lower), b));
                    }
                }
            }
        }
    }
}

TEST_CASE("csv emitter") {
    BetaValue two = BetaValue::parse("dec:2");
    std::string csv = cylinders_csv(partition_level(two, 1), two, 4);
    CHECK(csv == "word,left,right,length,is_full\n0,0.0000,0.5000,0.5000,true\n1,0.5000,1.0000,0.5000,true\n");
}
