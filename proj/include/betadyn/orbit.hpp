#pragma once

#include "betadyn/precision.hpp"
#include "betadyn/symbolic.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace betadyn {

struct Orbit {
    std::vector<RealScalar> points;          // x, T x, ..., T^{n-1} x
    std::optional<std::size_t> first_zero;   // smallest i with T^i x = 0
};

Orbit orbit(const RealScalar& x, const BetaValue& beta, std::size_t n);

// Index sets for speed-function rules. Indices are n >= 1.
struct IndexSet {
    enum class Kind { All, Arithmetic, Geometric, Tower, List };
    Kind kind = Kind::All;
    std::uint64_t a = 1, b = 0;       // arith: n = a k + b, k >= 0
    mpq_class ratio;                  // geom: n = floor(r^k), k >= 1
    std::vector<std::uint64_t> list;  // list: explicit finite set

    bool contains(std::uint64_t n) const;
    bool periodic() const { return kind == Kind::All || kind == Kind::Arithmetic; }
    std::string to_string() const;
};

// psi(n) = beta^{-rate n} for a rate rule, the constant itself otherwise.
struct SpeedRule {
    IndexSet index;
    bool constant = false;
    mpq_class value;
    std::string to_string() const;
};

struct SpeedValue {
    bool constant = false;
    mpq_class value;  // constant, or the exponent e with psi = beta^e
};

class SpeedFn {
public:
    SpeedFn() = default;
    explicit SpeedFn(std::vector<SpeedRule> rules);
    // rule(index=<all|arith:a,b|geom:r|tower|list:n1,n2,...>, rate=<q>|const=<q>);...[;cap1]
    static SpeedFn parse(std::string_view text);
    static SpeedFn rate(const mpq_class& c);

    const std::vector<SpeedRule>& rules() const { return rules_; }
    const SpeedRule& rule_for(std::uint64_t n) const;
    std::size_t rule_index(std::uint64_t n) const;
    SpeedValue at(std::uint64_t n) const;
    std::string to_string() const;

private:
    std::vector<SpeedRule> rules_;
};

// Pointwise min(psi, 1).
SpeedFn normalize_psi(const SpeedFn& psi);

// Exact test x < psi(n).
bool below_speed(const RealScalar& x, const BetaValue& beta, const SpeedValue& psi);

std::vector<std::uint64_t> hitting_times(const RealScalar& x, const BetaValue& beta, const SpeedFn& psi,
                                         std::uint64_t horizon);

// For each N in [from, to]: some n in [0, N] has T^n x < psi(N).
std::vector<std::pair<std::uint64_t, bool>> uniform_check(const RealScalar& x, const BetaValue& beta, const SpeedFn& psi,
                                                          std::uint64_t from, std::uint64_t to);

struct PsiExponents {
    bool exact = false;
    mpq_class lo, hi;            // exact mode
    double lo_approx = 0, hi_approx = 0;
    std::vector<std::size_t> recurring_rules;  // rules used for infinitely many n
};

// Exact mode reads the rates of rules that fire infinitely often; numeric mode
// samples -log_beta psi(n)/n over n in [sqrt(h), h].
PsiExponents psi_exponents(const SpeedFn& psi, std::uint64_t horizon = 1000000, bool numeric = false,
                           double beta = 2.0);

}  // namespace betadyn
