#pragma once

#include "betadyn/orbit.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace betadyn {

// A nonnegative rational or +infinity.
struct ExtRational {
    bool infinite = false;
    mpq_class value;

    ExtRational() = default;
    ExtRational(const mpq_class& q) : value(q) {}
    ExtRational(long v) : value(v) {}
    static ExtRational inf() {
        ExtRational r;
        r.infinite = true;
        return r;
    }
    // "p", "p/q", "d.ddd", "inf"
    static ExtRational parse(std::string_view text);
    std::string to_string() const;
    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

bool operator<(const ExtRational& a, const ExtRational& b);
inline bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }

struct ExponentQuadruple {
    ExtRational v1_lo, v1_hi, v2_lo, v2_hi;

    // "a,b,c,d"
    static ExponentQuadruple parse(std::string_view text);
    std::string to_string() const;
    void validate() const;
};

struct DimensionVerdict {
    enum class Kind { Countable, Empty, FullDimension, Interval };
    Kind kind = Kind::Interval;
    mpq_class lower, upper;
    std::string active_case;
};

std::string_view to_string(DimensionVerdict::Kind kind);

// 1/(1+v), 0 at infinity.
mpq_class sw_dimension(const ExtRational& v);

// (v - w - v w)/((1+v)(v - w)); nullopt when v < w/(1-w). Requires v > 0, 0 < w < 1.
std::optional<mpq_class> bl_dimension(const mpq_class& v, const mpq_class& v_hat);

// Critical exponent of the covering series; same expression as above, any 0 <= v2_lo < 1 < ... with v > v2_lo.
mpq_class covering_critical_exponent(const mpq_class& v, const mpq_class& v2_lo);

DimensionVerdict classify_bounds(const ExponentQuadruple& q);
DimensionVerdict classify_uniform(const ExtRational& v2_lo, const ExtRational& v2_hi);
bool inclusion_verdict(const ExponentQuadruple& q);

// Worked examples with sharp values.
struct ExampleEntry {
    std::string id;
    std::string psi1, psi2;
    ExponentQuadruple expected;
    mpq_class sharp;
    bool sharp_is_upper = false;
    std::string note;
};

struct ExampleResult {
    const ExampleEntry* entry = nullptr;
    ExponentQuadruple computed;
    DimensionVerdict verdict;
    mpq_class dimension;
    bool exponents_match = false;
    bool sharp_in_bounds = false;
    bool generic_is_sharp = false;  // lower == upper == sharp
};

const std::vector<ExampleEntry>& example_registry();
std::vector<ExampleResult> run_examples();

}  // namespace betadyn
