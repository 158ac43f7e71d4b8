#include "betadyn/precision.hpp"

#include "betadyn/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

namespace betadyn {

namespace {

unsigned budget_from_env() {
    if (const char* env = std::getenv("BETADYN_PRECISION_BITS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && v >= kInitialBits) return static_cast<unsigned>(v);
    }
    return 4096;
}

std::atomic<unsigned>& budget_slot() {
    static std::atomic<unsigned> slot{budget_from_env()};
    return slot;
}

long bit_length(const mpz_class& z) {
    return sgn(z) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

mpq_class dyadic(const mpz_class& m, long exp2) {
    mpq_class r(m);
    if (exp2 > 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(exp2));
    if (exp2 < 0) mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-exp2));
    return r;
}

mpq_class round_dir(const mpq_class& q, unsigned bits, bool up) {
    if (sgn(q) == 0) return q;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (den == 1 && bit_length(num) <= static_cast<long>(bits)) return q;
    long shift = static_cast<long>(bits) - (bit_length(num) - bit_length(den));
    mpz_class n = num, d = den, m;
    if (shift >= 0)
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(shift));
    else
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-shift));
    if (up)
        mpz_cdiv_q(m.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    else
        mpz_fdiv_q(m.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return dyadic(m, -shift);
}

}  // namespace

unsigned precision_budget() { return budget_slot().load(); }
void set_precision_budget(unsigned bits) { budget_slot().store(std::max(bits, kInitialBits)); }

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    if (sgn(a.lo) >= 0 && sgn(b.lo) >= 0) return {a.lo * b.lo, a.hi * b.hi};
    mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Enclosure pow(const Enclosure& a, unsigned long e) {
    Enclosure result = Enclosure::point(1), base = a;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

mpq_class round_down(const mpq_class& q, unsigned bits) { return round_dir(q, bits, false); }
mpq_class round_up(const mpq_class& q, unsigned bits) { return round_dir(q, bits, true); }

Enclosure round_outward(const Enclosure& e, unsigned bits) {
    return {round_down(e.lo, bits), round_up(e.hi, bits)};
}

std::string decimal_string(const mpq_class& q, int digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::max(digits, 0)));
    mpq_class mag = abs(q) * scale;
    mpz_class t;
    mpz_fdiv_q(t.get_mpz_t(), mag.get_num_mpz_t(), mag.get_den_mpz_t());
    std::string s = t.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return (sgn(q) < 0 ? "-" : "") + s;
}

mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&]() -> mpq_class { raise(ErrorKind::ParseError, "not a rational: '" + s + "'"); };
    if (s.empty()) return fail();
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            mpq_class q(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
            if (q.get_den() == 0) return fail();
            q.canonicalize();
            return q;
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return mpq_class(mpz_class(s));
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (neg || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (frac.find_first_not_of("0123456789") != std::string::npos) return fail();
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpq_class q(mpz_class(whole) * den + mpz_class(frac), den);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    } catch (const std::invalid_argument&) {
        return fail();
    }
}

namespace detail {

struct BetaField {
    Polynomial p;  // monic, squarefree, p(0) != 0
    mpq_class lo, hi;
    int d = 1;
    bool rational = false;
    bool integer = false;
    int digit_bound = 1;
    std::vector<mpq_class> inverse;
    std::string spec;

    mutable std::mutex mu;
    mutable std::map<unsigned, Enclosure> cache;

    Enclosure enclosure(unsigned bits) const {
        if (rational) return Enclosure::point(lo);
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.lower_bound(bits);
        if (it != cache.end()) return it->second;
        Enclosure e{lo, hi};
        if (!cache.empty()) e = std::prev(cache.end())->second;
        mpq_class target = dyadic(1, -static_cast<long>(bits));
        int s_lo = p.sign_at(e.lo);
        while (e.width() > target) {
            mpq_class mid = (e.lo + e.hi) / 2;
            int s = p.sign_at(mid);
            if (s == 0) {
                e = Enclosure::point(mid);
                break;
            }
            if (s == s_lo)
                e.lo = mid;
            else
                e.hi = mid;
        }
        cache.emplace(bits, e);
        return e;
    }
};

}  // namespace detail

namespace {

using FieldPtr = std::shared_ptr<const detail::BetaField>;

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->p == b->p && a->lo == b->lo && a->hi == b->hi;
}

std::vector<mpq_class> reduce(std::vector<mpq_class> prod, const detail::BetaField& f) {
    const auto& a = f.p.coefficients();
    for (int k = static_cast<int>(prod.size()) - 1; k >= f.d; --k) {
        mpq_class c = prod[static_cast<std::size_t>(k)];
        if (sgn(c) == 0) continue;
        for (int i = 0; i < f.d; ++i) prod[static_cast<std::size_t>(k - f.d + i)] -= c * a[static_cast<std::size_t>(i)];
    }
    prod.resize(static_cast<std::size_t>(f.d));
    return prod;
}

std::shared_ptr<detail::BetaField> make_field(Polynomial p, mpq_class lo, mpq_class hi, std::string spec) {
    auto f = std::make_shared<detail::BetaField>();
    f->p = std::move(p);
    f->d = f->p.degree();
    f->lo = std::move(lo);
    f->hi = std::move(hi);
    f->rational = f->d == 1;
    if (f->rational) f->lo = f->hi = -f->p.coeff(0);
    const auto& a = f->p.coefficients();
    f->inverse.resize(static_cast<std::size_t>(f->d));
    for (int i = 0; i < f->d; ++i) f->inverse[static_cast<std::size_t>(i)] = -a[static_cast<std::size_t>(i + 1)] / a[0];
    f->spec = std::move(spec);
    return f;
}

}  // namespace

BetaValue BetaValue::from_rational(const mpq_class& q) {
    if (q <= 1) raise(ErrorKind::NotGreaterThanOne, "beta must exceed 1, got " + q.get_str());
    auto f = make_field(Polynomial::linear_root(q), q, q, "dec:" + q.get_str());
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    f->integer = q.get_den() == 1;
    f->digit_bound = static_cast<int>(f->integer ? fl.get_si() - 1 : fl.get_si());
    return BetaValue(f);
}

BetaValue BetaValue::from_polynomial(const Polynomial& poly, const mpq_class& lo_in, const mpq_class& hi_in) {
    if (poly.degree() < 1) raise(ErrorKind::RootNotIsolated, "defining polynomial must have degree >= 1");
    if (lo_in >= hi_in) raise(ErrorKind::RootNotIsolated, "isolating interval must satisfy lo < hi");
    std::ostringstream spec;
    spec << "poly:";
    for (int i = 0; i <= poly.degree(); ++i) spec << (i ? "," : "") << poly.coeff(i).get_str();
    spec << "@[" << lo_in.get_str() << "," << hi_in.get_str() << "]";

    Polynomial p = squarefree_part(poly);
    while (sgn(p.coeff(0)) == 0) p = divmod(p, Polynomial::monomial(1)).first;
    mpq_class lo = lo_in, hi = hi_in;
    int roots = count_roots(p, lo, hi) + (p.sign_at(lo) == 0 ? 1 : 0);
    if (p.degree() < 1 || roots != 1)
        raise(ErrorKind::RootNotIsolated, "interval [" + lo.get_str() + "," + hi.get_str() + "] holds " +
                                              std::to_string(p.degree() < 1 ? 0 : roots) + " roots");
    if (p.sign_at(lo) == 0 || p.sign_at(hi) == 0) {
        mpq_class r = p.sign_at(lo) == 0 ? lo : hi;
        BetaValue b = from_rational(r);
        std::const_pointer_cast<detail::BetaField>(b.field_)->spec = spec.str();
        return b;
    }
    if (hi <= 1 || p.sign_at(1) == 0 || (lo < 1 && count_roots(p, lo, 1) == 1))
        raise(ErrorKind::NotGreaterThanOne, "isolated root is not greater than 1");
    if (lo < 1) lo = 1;

    auto f = make_field(p, lo, hi, spec.str());
    BetaValue b(f);
    RealScalar x = RealScalar::beta(b);
    mpz_class k = safe_floor(x);
    f->integer = certified_zero(x - RealScalar(mpq_class(k)));
    f->digit_bound = static_cast<int>(f->integer ? k.get_si() - 1 : k.get_si());
    if (f->integer) {
        BetaValue r = from_rational(mpq_class(k));
        std::const_pointer_cast<detail::BetaField>(r.field_)->spec = spec.str();
        return r;
    }
    return b;
}

BetaValue BetaValue::parse(std::string_view text) {
    std::string s(text);
    if (s == "golden") return from_polynomial(Polynomial({-1, -1, 1}), 1, 2);
    if (s == "tribonacci") return from_polynomial(Polynomial({-1, -1, -1, 1}), 1, 2);
    if (s.rfind("dec:", 0) == 0) return from_rational(parse_rational(s.substr(4)));
    if (s.rfind("poly:", 0) == 0) {
        auto at = s.find('@');
        if (at == std::string::npos) raise(ErrorKind::ParseError, "poly spec needs @[lo,hi]");
        std::vector<mpq_class> coeffs;
        std::stringstream cs(s.substr(5, at - 5));
        for (std::string item; std::getline(cs, item, ',');) coeffs.push_back(parse_rational(item));
        std::string iv = s.substr(at + 1);
        if (iv.size() < 5 || iv.front() != '[' || iv.back() != ']')
            raise(ErrorKind::ParseError, "bad isolating interval '" + iv + "'");
        iv = iv.substr(1, iv.size() - 2);
        auto comma = iv.find(',');
        if (comma == std::string::npos) raise(ErrorKind::ParseError, "bad isolating interval");
        return from_polynomial(Polynomial(coeffs), parse_rational(iv.substr(0, comma)), parse_rational(iv.substr(comma + 1)));
    }
    return from_rational(parse_rational(s));
}

bool operator==(const BetaValue& a, const BetaValue& b) { return same_field(a.field_, b.field_); }

const Polynomial& BetaValue::polynomial() const { return field_->p; }
int BetaValue::degree() const { return field_->d; }
bool BetaValue::is_rational() const { return field_->rational; }
std::optional<mpq_class> BetaValue::rational_value() const {
    if (!field_->rational) return std::nullopt;
    return field_->lo;
}
bool BetaValue::is_integer() const { return field_->integer; }
int BetaValue::digit_bound() const { return field_->digit_bound; }
std::pair<mpq_class, mpq_class> BetaValue::isolating_interval() const { return {field_->lo, field_->hi}; }
Enclosure BetaValue::enclosure(unsigned bits) const { return field_->enclosure(bits); }
double BetaValue::approx() const {
    Enclosure e = enclosure(64);
    return mpq_class((e.lo + e.hi) / 2).get_d();
}
const std::string& BetaValue::spec() const { return field_->spec; }

// ---------------------------------------------------------------------------

RealScalar::RealScalar(FieldPtr f, std::vector<mpq_class> coeffs) : field_(std::move(f)), coeffs_(std::move(coeffs)) {
    if (field_ && field_->rational) {
        // Rational beta: collapse to a plain rational.
        mpq_class v = 0, bpow = 1;
        for (const auto& c : coeffs_) {
            v += c * bpow;
            bpow *= field_->lo;
        }
        coeffs_ = {v};
        field_.reset();
    }
    if (coeffs_.empty()) coeffs_.push_back(0);
}

RealScalar::RealScalar(const BetaValue& beta, std::vector<mpq_class> coeffs)
    : RealScalar(beta.field_, [&] {
          std::vector<mpq_class> r = reduce(std::move(coeffs), *beta.field_);
          r.resize(static_cast<std::size_t>(beta.field_->d));
          return r;
      }()) {}

RealScalar RealScalar::beta(const BetaValue& b) {
    if (b.is_rational()) return RealScalar(b.field_->lo);
    return RealScalar(b, {0, 1});
}

RealScalar RealScalar::beta_power(const BetaValue& b, long e) {
    if (e >= 0) return pow(beta(b), static_cast<unsigned long>(e));
    if (b.is_rational()) return pow(RealScalar(mpq_class(1 / b.field_->lo)), static_cast<unsigned long>(-e));
    RealScalar inv(b.field_, b.field_->inverse);
    return pow(inv, static_cast<unsigned long>(-e));
}

RealScalar RealScalar::from_digits(const BetaValue& b, std::span<const int> digits) {
    if (b.is_rational()) {
        mpq_class acc = 0;
        const mpq_class& beta = b.field_->lo;
        for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = (acc + *it) / beta;
        return RealScalar(acc);
    }
    RealScalar acc(b.field_, std::vector<mpq_class>(static_cast<std::size_t>(b.field_->d)));
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        acc.coeffs_[0] += *it;
        acc = acc.div_beta(b);
    }
    return acc;
}

bool RealScalar::is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

std::optional<mpq_class> RealScalar::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coeffs_[0];
}

bool RealScalar::is_exact_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

std::optional<BetaValue> RealScalar::field() const {
    if (!field_) return std::nullopt;
    return BetaValue(field_);
}

Enclosure RealScalar::enclosure(unsigned bits) const {
    if (!field_ || is_rational()) return Enclosure::point(coeffs_[0]);
    const unsigned work = bits + 32;
    Enclosure b = field_->enclosure(work);
    Enclosure acc = Enclosure::point(coeffs_.back());
    for (int i = static_cast<int>(coeffs_.size()) - 2; i >= 0; --i) {
        acc = round_outward(acc * b + Enclosure::point(coeffs_[static_cast<std::size_t>(i)]), work);
    }
    return acc;
}

double RealScalar::approx() const {
    Enclosure e = enclosure(64);
    return mpq_class((e.lo + e.hi) / 2).get_d();
}

std::string RealScalar::to_decimal(int digits) const {
    if (auto q = as_rational()) return decimal_string(*q, digits);
    Enclosure e = enclosure(static_cast<unsigned>(digits) * 4 + 64);
    return decimal_string(e.lo, digits);
}

RealScalar RealScalar::operator-() const {
    RealScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

RealScalar RealScalar::times_beta(const BetaValue& beta) const {
    if (beta.is_rational()) return RealScalar(mpq_class(coeffs_[0] * beta.field_->lo));
    if (field_ && !same_field(field_, beta.field_)) raise(ErrorKind::InvalidParams, "scalar belongs to another field");
    if (!field_) return RealScalar(beta, {coeffs_[0]}).times_beta(beta);
    const auto& f = *field_;
    std::vector<mpq_class> r(static_cast<std::size_t>(f.d));
    mpq_class top = coeffs_.back();
    for (int i = f.d - 1; i >= 1; --i) r[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i - 1)];
    if (sgn(top) != 0) {
        const auto& a = f.p.coefficients();
        for (int i = 0; i < f.d; ++i) r[static_cast<std::size_t>(i)] -= top * a[static_cast<std::size_t>(i)];
    }
    return RealScalar(field_, std::move(r));
}

RealScalar RealScalar::div_beta(const BetaValue& beta) const {
    if (beta.is_rational()) return RealScalar(mpq_class(coeffs_[0] / beta.field_->lo));
    if (field_ && !same_field(field_, beta.field_)) raise(ErrorKind::InvalidParams, "scalar belongs to another field");
    if (!field_) return RealScalar(beta, {coeffs_[0]}).div_beta(beta);
    const auto& f = *field_;
    std::vector<mpq_class> r(static_cast<std::size_t>(f.d));
    for (int i = 1; i < f.d; ++i) r[static_cast<std::size_t>(i - 1)] = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(coeffs_[0]) != 0)
        for (int i = 0; i < f.d; ++i) r[static_cast<std::size_t>(i)] += coeffs_[0] * f.inverse[static_cast<std::size_t>(i)];
    return RealScalar(field_, std::move(r));
}

std::pair<RealScalar, RealScalar> unify(const RealScalar& a, const RealScalar& b) {
    if (same_field(a.field_, b.field_)) return {a, b};
    auto lift = [](const RealScalar& x, const FieldPtr& f) {
        std::vector<mpq_class> c(static_cast<std::size_t>(f->d));
        c[0] = x.coeffs_[0];
        return RealScalar(f, std::move(c));
    };
    if (!b.field_ || b.is_rational()) {
        if (!a.field_) return {a, RealScalar(b.coeffs_[0])};
        return {a, lift(b, a.field_)};
    }
    if (!a.field_ || a.is_rational()) return {lift(a, b.field_), b};
    raise(ErrorKind::InvalidParams, "scalars live in different fields");
}

RealScalar operator+(const RealScalar& x, const RealScalar& y) {
    auto [a, b] = unify(x, y);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

RealScalar operator-(const RealScalar& x, const RealScalar& y) { return x + (-y); }

RealScalar operator*(const RealScalar& x, const RealScalar& y) {
    auto [a, b] = unify(x, y);
    if (!a.field_) return RealScalar(mpq_class(a.coeffs_[0] * b.coeffs_[0]));
    std::vector<mpq_class> prod(a.coeffs_.size() * 2 - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RealScalar(a.field_, reduce(std::move(prod), *a.field_));
}

RealScalar pow(const RealScalar& a, unsigned long e) {
    RealScalar result(1), base = a;
    while (e > 0) {
        if (e & 1UL) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

bool certified_zero(const RealScalar& x) {
    if (x.is_exact_zero()) return true;
    if (!x.field_ || x.is_rational()) return false;
    Polynomial g = gcd(Polynomial(x.coeffs_), x.field_->p);
    if (g.degree() < 1) return false;
    return count_roots(g, x.field_->lo, x.field_->hi) == 1;
}

int sign(const RealScalar& x) {
    if (auto q = x.as_rational()) return sgn(*q);
    bool certificate_tried = false;
    const unsigned budget = precision_budget();
    for (unsigned bits = kInitialBits;; bits *= 2) {
        bits = std::min(bits, budget);
        Enclosure e = x.enclosure(bits);
        if (sgn(e.lo) > 0) return 1;
        if (sgn(e.hi) < 0) return -1;
        if (!certificate_tried) {
            certificate_tried = true;
            if (certified_zero(x)) return 0;
        }
        if (bits >= budget) break;
    }
    raise(ErrorKind::PrecisionExhausted, "sign undecided within " + std::to_string(budget) + " bits");
}

std::strong_ordering compare_exact(const RealScalar& a, const RealScalar& b) {
    int s = sign(a - b);
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

mpz_class safe_floor(const RealScalar& x) {
    mpz_class r;
    if (auto q = x.as_rational()) {
        mpz_fdiv_q(r.get_mpz_t(), q->get_num_mpz_t(), q->get_den_mpz_t());
        return r;
    }
    bool certificate_tried = false;
    const unsigned budget = precision_budget();
    for (unsigned bits = kInitialBits;; bits *= 2) {
        bits = std::min(bits, budget);
        Enclosure e = x.enclosure(bits);
        mpz_class flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), e.lo.get_num_mpz_t(), e.lo.get_den_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), e.hi.get_num_mpz_t(), e.hi.get_den_mpz_t());
        if (flo == fhi) return flo;
        if (!certificate_tried) {
            certificate_tried = true;
            if (certified_zero(x - RealScalar(mpq_class(fhi)))) return fhi;
        }
        if (bits >= budget) break;
    }
    raise(ErrorKind::PrecisionExhausted, "floor undecided within " + std::to_string(budget) + " bits");
}

}  // namespace betadyn
