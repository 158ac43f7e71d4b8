#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace betadyn {

// Dense univariate polynomial over Q, coefficients stored low degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<mpq_class> coeffs);

    static Polynomial constant(const mpq_class& c);
    static Polynomial monomial(int degree, const mpq_class& c = 1);
    // z - r
    static Polynomial linear_root(const mpq_class& r);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }
    mpq_class coeff(int i) const;
    const mpq_class& leading() const { return coeffs_.back(); }

    mpq_class operator()(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;

    Polynomial derivative() const;
    Polynomial monic() const;
    Polynomial operator-() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

// Quotient and remainder; throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);

// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

Polynomial squarefree_part(const Polynomial& p);

// Number of distinct real roots in the half-open interval (a, b].
int count_roots(const Polynomial& p, const mpq_class& a, const mpq_class& b);

}  // namespace betadyn
