#pragma once

#include "betadyn/polynomial.hpp"

#include <gmpxx.h>

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace betadyn {

// Refinement budget in bits. Initial working precision is 128 and doubles up
// to the budget; BETADYN_PRECISION_BITS overrides the default 4096.
unsigned precision_budget();
void set_precision_budget(unsigned bits);
inline constexpr unsigned kInitialBits = 128;

// Closed rational interval.
struct Enclosure {
    mpq_class lo;
    mpq_class hi;

    static Enclosure point(const mpq_class& q) { return {q, q}; }
    mpq_class width() const { return hi - lo; }
    bool contains(const mpq_class& q) const { return lo <= q && q <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure pow(const Enclosure& a, unsigned long e);

// Outward rounding to `bits` significant bits (dyadic endpoints).
mpq_class round_down(const mpq_class& q, unsigned bits);
mpq_class round_up(const mpq_class& q, unsigned bits);
Enclosure round_outward(const Enclosure& e, unsigned bits);

std::string decimal_string(const mpq_class& q, int digits);
mpq_class parse_rational(std::string_view text);  // "p", "p/q" or "d.ddd"

namespace detail {
struct BetaField;
}

// The base beta > 1: a root of a monic squarefree rational polynomial,
// pinned by an isolating interval. Rational beta uses a linear polynomial.
class BetaValue {
public:
    static BetaValue from_rational(const mpq_class& q);
    static BetaValue from_polynomial(const Polynomial& p, const mpq_class& lo, const mpq_class& hi);
    // dec:<digits> | poly:c0,...,cn@[lo,hi] | golden | tribonacci | bare decimal
    static BetaValue parse(std::string_view spec);

    const Polynomial& polynomial() const;
    int degree() const;
    bool is_rational() const;
    std::optional<mpq_class> rational_value() const;
    bool is_integer() const;
    int digit_bound() const;
    // Half-open isolating interval (lo, hi] of the defining polynomial.
    std::pair<mpq_class, mpq_class> isolating_interval() const;
    Enclosure enclosure(unsigned bits) const;
    double approx() const;
    const std::string& spec() const;

    // Same defining polynomial and isolating interval.
    friend bool operator==(const BetaValue& a, const BetaValue& b);

    const std::shared_ptr<const detail::BetaField>& field() const { return field_; }

private:
    explicit BetaValue(std::shared_ptr<const detail::BetaField> f) : field_(std::move(f)) {}
    std::shared_ptr<const detail::BetaField> field_;
    friend class RealScalar;
};

// Exact element of Q(beta), stored as coefficients of 1, beta, ..., beta^(d-1)
// reduced modulo the defining polynomial. A scalar without a field is rational.
class RealScalar {
public:
    RealScalar() : coeffs_{0} {}
    RealScalar(const mpq_class& q) : coeffs_{q} {}  // NOLINT: rationals convert implicitly
    RealScalar(long v) : coeffs_{mpq_class(v)} {}   // NOLINT
    RealScalar(const BetaValue& beta, std::vector<mpq_class> coeffs);

    static RealScalar beta(const BetaValue& beta);
    static RealScalar beta_power(const BetaValue& beta, long e);
    // sum_i digits[i] * beta^-(i+1)
    static RealScalar from_digits(const BetaValue& beta, std::span<const int> digits);

    bool is_rational() const;
    std::optional<mpq_class> as_rational() const;
    bool is_exact_zero() const;
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }
    std::optional<BetaValue> field() const;

    Enclosure enclosure(unsigned bits) const;
    double approx() const;
    std::string to_decimal(int digits) const;

    RealScalar operator-() const;
    RealScalar times_beta(const BetaValue& beta) const;
    RealScalar div_beta(const BetaValue& beta) const;
    friend RealScalar operator+(const RealScalar& a, const RealScalar& b);
    friend RealScalar operator-(const RealScalar& a, const RealScalar& b);
    friend RealScalar operator*(const RealScalar& a, const RealScalar& b);
    friend RealScalar pow(const RealScalar& a, unsigned long e);

private:
    RealScalar(std::shared_ptr<const detail::BetaField> f, std::vector<mpq_class> coeffs);
    std::shared_ptr<const detail::BetaField> field_;
    std::vector<mpq_class> coeffs_;
    friend int sign(const RealScalar& x);
    friend bool certified_zero(const RealScalar& x);
    friend std::pair<RealScalar, RealScalar> unify(const RealScalar& a, const RealScalar& b);
};

// Exact sign: refine until separated from zero, else certify zero.
int sign(const RealScalar& x);
// True iff x is provably zero (zero representative or gcd certificate).
bool certified_zero(const RealScalar& x);
std::strong_ordering compare_exact(const RealScalar& a, const RealScalar& b);
mpz_class safe_floor(const RealScalar& x);

}  // namespace betadyn
