#include "betadyn/dimension.hpp"

#include "betadyn/error.hpp"
#include "betadyn/precision.hpp"

#include <algorithm>

namespace betadyn {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t')) --b;
    return std::string(s.substr(a, b - a));
}

std::string frac(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// v/(2+v), 1 at infinity.
ExtRational half_ratio(const ExtRational& v) {
    if (v.infinite) return ExtRational(mpq_class(1));
    return ExtRational(mpq_class(v.value / (v.value + 2)));
}

mpq_class square_ratio(const mpq_class& x) {
    mpq_class r = (1 - x) / (1 + x);
    return r * r;
}

mpq_class inv_one_plus(const ExtRational& v) {
    if (v.infinite) return 0;
    return mpq_class(1 / (1 + v.value));
}

// Extended formula used inside the case table: w = 0 gives 1/(1+v), v = w = 0 gives 1,
// v = inf gives 0. Callers guarantee w <= v/(2+v).
mpq_class bl_ext(const ExtRational& v, const ExtRational& w) {
    if (v.infinite) return 0;
    if (w.value == 0) return inv_one_plus(v);
    const mpq_class& a = v.value;
    const mpq_class& b = w.value;
    return mpq_class((a - b - a * b) / ((1 + a) * (a - b)));
}

DimensionVerdict interval(mpq_class lo, mpq_class hi, std::string id) {
    DimensionVerdict d;
    d.kind = DimensionVerdict::Kind::Interval;
    d.lower = std::move(lo);
    d.upper = std::move(hi);
    d.active_case = std::move(id);
    return d;
}

DimensionVerdict countable(std::string id) {
    DimensionVerdict d;
    d.kind = DimensionVerdict::Kind::Countable;
    d.active_case = std::move(id);
    return d;
}

bool above_one(const ExtRational& v) { return v.infinite || v.value > 1; }

}  // namespace

ExtRational ExtRational::parse(std::string_view text) {
    std::string t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity" || t == "∞") return inf();
    mpq_class q = parse_rational(t);
    if (q < 0) raise(ErrorKind::DomainError, "exponent must be >= 0: " + t);
    return ExtRational(q);
}

std::string ExtRational::to_string() const {
    return infinite ? std::string("inf") : frac(value);
}

bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
}

ExponentQuadruple ExponentQuadruple::parse(std::string_view text) {
    std::vector<ExtRational> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        parts.push_back(ExtRational::parse(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (parts.size() != 4) raise(ErrorKind::ParseError, "expected four exponents: " + std::string(text));
    ExponentQuadruple q{parts[0], parts[1], parts[2], parts[3]};
    q.validate();
    return q;
}

std::string ExponentQuadruple::to_string() const {
    return v1_lo.to_string() + "," + v1_hi.to_string() + "," + v2_lo.to_string() + "," + v2_hi.to_string();
}

void ExponentQuadruple::validate() const {
    for (const ExtRational* e : {&v1_lo, &v1_hi, &v2_lo, &v2_hi})
        if (!e->infinite && e->value < 0) raise(ErrorKind::DomainError, "negative exponent");
    if (v1_hi < v1_lo || v2_hi < v2_lo) raise(ErrorKind::DomainError, "liminf exceeds limsup: " + to_string());
}

std::string_view to_string(DimensionVerdict::Kind kind) {
    switch (kind) {
    case DimensionVerdict::Kind::Countable: return "countable";
    case DimensionVerdict::Kind::Empty: return "empty";
    case DimensionVerdict::Kind::FullDimension: return "full_dimension";
    case DimensionVerdict::Kind::Interval: return "interval";
    }
    return "?";
}

mpq_class sw_dimension(const ExtRational& v) {
    if (!v.infinite && v.value < 0) raise(ErrorKind::DomainError, "v must be >= 0");
    return inv_one_plus(v);
}

std::optional<mpq_class> bl_dimension(const mpq_class& v, const mpq_class& v_hat) {
    if (v <= 0 || v_hat <= 0 || v_hat >= 1)
        raise(ErrorKind::DomainError, "need v > 0 and 0 < v_hat < 1");
    if (v < v_hat / (1 - v_hat)) return std::nullopt;
    return mpq_class((v - v_hat - v * v_hat) / ((1 + v) * (v - v_hat)));
}

mpq_class covering_critical_exponent(const mpq_class& v, const mpq_class& v2_lo) {
    if (v2_lo < 0 || v2_lo >= 1 || v <= v2_lo)
        raise(ErrorKind::DomainError, "need 0 <= v2_lo < 1 and v > v2_lo");
    return mpq_class((v - v2_lo - v * v2_lo) / ((1 + v) * (v - v2_lo)));
}

DimensionVerdict classify_bounds(const ExponentQuadruple& q) {
    q.validate();
    const ExtRational &a_lo = q.v1_lo, &a_hi = q.v1_hi, &u_lo = q.v2_lo, &u_hi = q.v2_hi;
    const ExtRational zero(0L);

    if (a_lo == zero && a_hi == zero && u_lo == zero && u_hi == zero) {
        DimensionVerdict d = interval(1, 1, "all-zero");
        d.kind = DimensionVerdict::Kind::FullDimension;
        return d;
    }
    if (u_lo.infinite) return countable("uniform-liminf-infinite");
    if (a_lo.infinite) return interval(0, 0, "asymptotic-liminf-infinite");
    if (u_hi.infinite) return interval(0, 0, "uniform-limsup-infinite");
    if (above_one(u_lo)) return countable("uniform-liminf-above-one");

    const mpq_class& lo2 = u_lo.value;
    const mpq_class& hi2 = u_hi.value;
    const mpq_class f_lo = half_ratio(a_lo).value;
    const mpq_class f_hi = half_ratio(a_hi).value;
    const mpq_class cap = std::min(inv_one_plus(u_hi), square_ratio(lo2));

    if (hi2 > 1) {
        if (f_hi <= lo2) return interval(0, cap, "uniform-limsup-above-one");
        // liminf below the threshold while the limsup exceeds one
        mpq_class inner = f_lo < lo2 ? square_ratio(lo2) : bl_ext(a_lo, u_lo);
        return interval(0, std::min(inv_one_plus(u_hi), inner), "uniform-limsup-above-one-low-liminf");
    }
    bool lo_above = f_lo < lo2;
    bool hi_above = f_hi < hi2;
    if (lo_above && hi_above) return interval(square_ratio(hi2), cap, "both-above-threshold");
    if (!lo_above && hi_above) return interval(square_ratio(hi2), bl_ext(a_lo, u_lo), "liminf-below-threshold");
    if (lo_above && !hi_above) return interval(bl_ext(a_hi, u_hi), cap, "limsup-below-threshold");
    if (!lo_above && !hi_above) return interval(bl_ext(a_hi, u_hi), bl_ext(a_lo, u_lo), "both-below-threshold");
    raise(ErrorKind::UnmatchedCase, "no case matched " + q.to_string());
}

DimensionVerdict classify_uniform(const ExtRational& v2_lo, const ExtRational& v2_hi) {
    if (v2_hi < v2_lo) raise(ErrorKind::DomainError, "liminf exceeds limsup");
    if (above_one(v2_lo)) return countable("uniform-liminf-above-one");
    mpq_class cap = std::min(inv_one_plus(v2_hi), square_ratio(v2_lo.value));
    if (above_one(v2_hi)) return interval(0, cap, "uniform-limsup-above-one");
    return interval(square_ratio(v2_hi.value), cap, "uniform-limsup-at-most-one");
}

bool inclusion_verdict(const ExponentQuadruple& q) {
    const ExtRational zero(0L);
    return q.v1_lo == zero && q.v1_hi == zero && zero < q.v2_lo;
}

const std::vector<ExampleEntry>& example_registry() {
    auto quad = [](const char* s) { return ExponentQuadruple::parse(s); };
    static const std::vector<ExampleEntry> entries = {
        {"5.1", "rule(index=all, const=1)", "rule(index=tower, rate=3);rule(index=all, const=1)",
         quad("0,0,0,3"), mpq_class(1, 4), true, "upper bound 1/(1+v2_hi) attained"},
        {"5.2", "rule(index=all, const=1)", "rule(index=geom:4, rate=2);rule(index=all, rate=1/2)",
         quad("0,0,1/2,2"), mpq_class(1, 9), true, "upper bound ((1-v2_lo)/(1+v2_lo))^2 attained"},
        {"5.3", "rule(index=geom:3, rate=1/2);rule(index=all, rate=1)",
         "rule(index=geom:3, rate=1/2);rule(index=all, rate=1/6)", quad("1/2,1,1/6,1/2"), mpq_class(1, 2), true,
         "upper bound from the liminf pair attained"},
        {"5.4", "rule(index=all, const=1)", "rule(index=geom:4, rate=3);rule(index=all, rate=1)",
         quad("0,0,1,3"), mpq_class(0), true, "upper bound collapses to 0"},
        {"5.5", "rule(index=arith:2,1, rate=3);rule(index=arith:2,0, rate=10/3)",
         "rule(index=arith:2,1, rate=21/32);rule(index=arith:2,0, rate=2/3)", quad("3,10/3,21/32,2/3"),
         mpq_class(1, 25), false,
         "lower bound ((1-v2_hi)/(1+v2_hi))^2; generic upper is (11/53)^2 since v2_lo > v1_lo/(2+v1_lo)"},
        {"5.6", "rule(index=all, rate=1)", "rule(index=arith:2,1, const=1);rule(index=arith:2,0, rate=1/4)",
         quad("1,1,0,1/4"), mpq_class(1, 3), false, "lower bound from the limsup pair attained"},
        {"5.7", "rule(index=arith:2,1, rate=1/3);rule(index=arith:2,0, rate=2/3)", "rule(index=all, rate=2/11)",
         quad("1/3,2/3,2/11,2/11"), mpq_class(9, 20), false,
         "lower bound from the limsup pair; generic upper is 81/169 since 2/11 > 1/7"},
    };
    return entries;
}

std::vector<ExampleResult> run_examples() {
    std::vector<ExampleResult> out;
    for (const ExampleEntry& e : example_registry()) {
        ExampleResult r;
        r.entry = &e;
        PsiExponents p1 = psi_exponents(SpeedFn::parse(e.psi1));
        PsiExponents p2 = psi_exponents(SpeedFn::parse(e.psi2));
        if (!p1.exact || !p2.exact) raise(ErrorKind::InvalidParams, "example " + e.id + " is not exactly classifiable");
        r.computed = {ExtRational(p1.lo), ExtRational(p1.hi), ExtRational(p2.lo), ExtRational(p2.hi)};
        r.exponents_match = r.computed.to_string() == e.expected.to_string();
        r.verdict = classify_bounds(r.computed);
        const mpq_class& side = e.sharp_is_upper ? r.verdict.upper : r.verdict.lower;
        r.sharp_in_bounds = side == e.sharp && r.verdict.lower <= e.sharp && e.sharp <= r.verdict.upper;
        r.generic_is_sharp = r.verdict.lower == e.sharp && r.verdict.upper == e.sharp;
        r.dimension = e.sharp;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace betadyn
