#include "betadyn/orbit.hpp"

#include "betadyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace betadyn {

Orbit orbit(const RealScalar& x, const BetaValue& beta, std::size_t n) {
    if (sign(x) < 0 || compare_exact(x, RealScalar(1)) >= 0) raise(ErrorKind::DomainError, "orbit needs 0 <= x < 1");
    Orbit out;
    out.points.reserve(n);
    RealScalar y = x;
    for (std::size_t i = 0; i < n; ++i) {
        if (!out.first_zero && sign(y) == 0) out.first_zero = i;
        out.points.push_back(y);
        if (i + 1 < n) y = out.first_zero ? RealScalar() : beta_step(y, beta);
    }
    return out;
}

namespace {

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\n");
    auto e = s.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Large-index membership, used for recurrence tests where indices overflow 64 bits.
bool contains_big(const IndexSet& s, const mpz_class& n) {
    switch (s.kind) {
    case IndexSet::Kind::All: return n >= 1;
    case IndexSet::Kind::Arithmetic: {
        if (n < s.b) return false;
        mpz_class r = (n - s.b) % mpz_class(s.a);
        return r == 0;
    }
    case IndexSet::Kind::Geometric: {
        mpq_class p = s.ratio;
        for (unsigned long k = 1;; ++k) {
            mpz_class f = floor_q(p);
            if (f == n) return true;
            if (f > n) return false;
            p *= s.ratio;
            (void)k;
        }
    }
    case IndexSet::Kind::Tower: {
        for (unsigned long k = 1;; ++k) {
            mpz_class f;
            mpz_ui_pow_ui(f.get_mpz_t(), k, k);
            if (f == n) return true;
            if (f > n) return false;
        }
    }
    case IndexSet::Kind::List:
        return n.fits_ulong_p() && std::find(s.list.begin(), s.list.end(), n.get_ui()) != s.list.end();
    }
    return false;
}

std::uint64_t modulus(const IndexSet& s) { return s.kind == IndexSet::Kind::Arithmetic ? s.a : 1; }

IndexSet parse_index(const std::string& text) {
    IndexSet s;
    std::string t = trim(text);
    auto numbers = [](const std::string& body) {
        std::vector<std::string> parts;
        std::stringstream in(body);
        for (std::string item; std::getline(in, item, ',');) parts.push_back(trim(item));
        return parts;
    };
    auto to_u64 = [](const std::string& v) -> std::uint64_t {
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
            raise(ErrorKind::ParseError, "bad index integer '" + v + "'");
        return std::stoull(v);
    };
    if (t == "all") return s;
    if (t == "tower") {
        s.kind = IndexSet::Kind::Tower;
        return s;
    }
    if (t.rfind("arith:", 0) == 0) {
        auto p = numbers(t.substr(6));
        if (p.size() != 2) raise(ErrorKind::ParseError, "arith needs a,b");
        s.kind = IndexSet::Kind::Arithmetic;
        s.a = to_u64(p[0]);
        s.b = to_u64(p[1]);
        if (s.a < 1) raise(ErrorKind::InvalidParams, "arith modulus must be >= 1");
        return s;
    }
    if (t.rfind("geom:", 0) == 0) {
        s.kind = IndexSet::Kind::Geometric;
        s.ratio = parse_rational(trim(t.substr(5)));
        if (s.ratio <= 1) raise(ErrorKind::InvalidParams, "geom ratio must exceed 1");
        return s;
    }
    if (t.rfind("list:", 0) == 0) {
        s.kind = IndexSet::Kind::List;
        for (const auto& v : numbers(t.substr(5))) s.list.push_back(to_u64(v));
        return s;
    }
    raise(ErrorKind::ParseError, "unknown index set '" + t + "'");
}

SpeedRule parse_rule(const std::string& text) {
    std::string t = trim(text);
    if (t.rfind("rule(", 0) != 0 || t.back() != ')') raise(ErrorKind::ParseError, "expected rule(...), got '" + t + "'");
    std::string body = t.substr(5, t.size() - 6);
    SpeedRule r;
    auto rate = body.rfind("rate=");
    auto cst = body.rfind("const=");
    std::size_t at = std::string::npos;
    if (rate != std::string::npos && (cst == std::string::npos || rate > cst)) at = rate;
    else if (cst != std::string::npos) at = cst;
    if (at == std::string::npos) raise(ErrorKind::ParseError, "rule needs rate= or const=");
    r.constant = at == cst;
    r.value = parse_rational(trim(body.substr(at + (r.constant ? 6 : 5))));
    std::string head = trim(body.substr(0, at));
    if (!head.empty() && head.back() == ',') head.pop_back();
    head = trim(head);
    if (!head.empty()) {
        if (head.rfind("index=", 0) != 0) raise(ErrorKind::ParseError, "expected index=..., got '" + head + "'");
        r.index = parse_index(head.substr(6));
    }
    if (r.constant && sgn(r.value) <= 0) raise(ErrorKind::InvalidParams, "speed functions are positive");
    return r;
}

double log2_positive(const mpq_class& q) {
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
    double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
    return std::log2(mn) - std::log2(md) + static_cast<double>(en - ed);
}

}  // namespace

bool IndexSet::contains(std::uint64_t n) const { return contains_big(*this, mpz_class(static_cast<unsigned long>(n))); }

std::string IndexSet::to_string() const {
    switch (kind) {
    case Kind::All: return "all";
    case Kind::Arithmetic: return "arith:" + std::to_string(a) + "," + std::to_string(b);
    case Kind::Geometric: return "geom:" + ratio.get_str();
    case Kind::Tower: return "tower";
    case Kind::List: {
        std::string s = "list:";
        for (std::size_t i = 0; i < list.size(); ++i) s += (i ? "," : "") + std::to_string(list[i]);
        return s;
    }
    }
    return "?";
}

std::string SpeedRule::to_string() const {
    return "rule(index=" + index.to_string() + ", " + (constant ? "const=" : "rate=") + value.get_str() + ")";
}

SpeedFn::SpeedFn(std::vector<SpeedRule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) raise(ErrorKind::InvalidParams, "speed function needs at least one rule");
    std::uint64_t L = 1, maxb = 0;
    for (const auto& r : rules_) {
        if (!r.index.periodic()) continue;
        L = std::lcm(L, modulus(r.index));
        maxb = std::max(maxb, r.index.kind == IndexSet::Kind::Arithmetic ? r.index.b : 0);
        if (L > 1000000) raise(ErrorKind::InvalidParams, "period of the rules is too large");
    }
    std::uint64_t base = L * (maxb / L + 1);
    for (std::uint64_t r = 0; r < L; ++r) {
        std::uint64_t n = base + r;
        bool covered = std::any_of(rules_.begin(), rules_.end(),
                                   [&](const SpeedRule& s) { return s.index.periodic() && s.index.contains(n); });
        if (!covered) raise(ErrorKind::InvalidParams, "rules do not cover all large n (residue " + std::to_string(r) + ")");
    }
}

SpeedFn SpeedFn::parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string s(text);
    // Split on ';' outside parentheses.
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ';' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    bool cap = false;
    std::vector<SpeedRule> rules;
    for (auto& p : parts) {
        std::string t = trim(p);
        if (t.empty()) continue;
        if (t == "cap1") {
            cap = true;
            continue;
        }
        rules.push_back(parse_rule(t));
    }
    SpeedFn fn(std::move(rules));
    return cap ? normalize_psi(fn) : fn;
}

SpeedFn SpeedFn::rate(const mpq_class& c) { return SpeedFn({SpeedRule{IndexSet{}, false, c}}); }

std::size_t SpeedFn::rule_index(std::uint64_t n) const {
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].index.contains(n)) return i;
    raise(ErrorKind::InvalidParams, "no rule matches n=" + std::to_string(n));
}

const SpeedRule& SpeedFn::rule_for(std::uint64_t n) const { return rules_[rule_index(n)]; }

SpeedValue SpeedFn::at(std::uint64_t n) const {
    const SpeedRule& r = rule_for(n);
    if (r.constant) return {true, r.value};
    return {false, mpq_class(-r.value * mpz_class(static_cast<unsigned long>(n)))};
}

std::string SpeedFn::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rules_.size(); ++i) s += (i ? ";" : "") + rules_[i].to_string();
    return s;
}

SpeedFn normalize_psi(const SpeedFn& psi) {
    std::vector<SpeedRule> rules = psi.rules();
    for (auto& r : rules) {
        bool above_one = r.constant ? r.value > 1 : sgn(r.value) < 0;
        if (above_one) {
            r.constant = true;
            r.value = 1;
        }
    }
    return SpeedFn(std::move(rules));
}

bool below_speed(const RealScalar& x, const BetaValue& beta, const SpeedValue& psi) {
    if (sign(x) <= 0) return true;
    if (psi.constant) return compare_exact(x, psi.value) < 0;
    const mpq_class& e = psi.value;
    // Cheap separation in log scale before exact powers.
    Enclosure ex = x.enclosure(kInitialBits);
    if (sgn(ex.lo) > 0) {
        double target = e.get_d() * std::log2(beta.approx());
        double tol = 1e-9 * (std::abs(target) + 1);
        if (log2_positive(ex.hi) < target - tol) return true;
        if (log2_positive(ex.lo) > target + tol) return false;
    }
    const mpz_class& p = e.get_num();
    const mpz_class& q = e.get_den();
    if (!p.fits_slong_p() || !q.fits_ulong_p()) raise(ErrorKind::PrecisionExhausted, "exponent too large for exact comparison");
    RealScalar lhs = q == 1 ? x : pow(x, q.get_ui());
    return compare_exact(lhs, RealScalar::beta_power(beta, p.get_si())) < 0;
}

std::vector<std::uint64_t> hitting_times(const RealScalar& x, const BetaValue& beta, const SpeedFn& psi,
                                         std::uint64_t horizon) {
    if (horizon < 1) raise(ErrorKind::InvalidParams, "horizon must be >= 1");
    std::vector<std::uint64_t> hits;
    RealScalar y = x;
    bool dead = sign(x) == 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        if (!dead) {
            y = beta_step(y, beta);
            dead = sign(y) == 0;
        }
        if (dead || below_speed(y, beta, psi.at(n))) hits.push_back(n);
    }
    return hits;
}

std::vector<std::pair<std::uint64_t, bool>> uniform_check(const RealScalar& x, const BetaValue& beta, const SpeedFn& psi,
                                                          std::uint64_t from, std::uint64_t to) {
    if (from > to) raise(ErrorKind::InvalidParams, "empty N range");
    std::vector<std::pair<std::uint64_t, bool>> out;
    RealScalar y = x, low = x;
    bool zero = sign(x) == 0;
    for (std::uint64_t N = 0; N <= to; ++N) {
        if (N > 0 && !zero) {
            y = beta_step(y, beta);
            if (sign(y) == 0) {
                zero = true;
                low = RealScalar();
            } else if (compare_exact(y, low) < 0) {
                low = y;
            }
        }
        if (N < from) continue;
        SpeedValue v = N == 0 ? SpeedValue{true, 1} : psi.at(N);
        out.emplace_back(N, zero || below_speed(low, beta, v));
    }
    return out;
}

PsiExponents psi_exponents(const SpeedFn& psi, std::uint64_t horizon, bool numeric, double beta) {
    const auto& rules = psi.rules();
    PsiExponents out;
    auto exponent_of = [](const SpeedRule& r) { return r.constant ? mpq_class(0) : r.value; };

    std::uint64_t L = 1;
    for (const auto& r : rules)
        if (r.index.periodic()) L = std::lcm(L, modulus(r.index));
    std::uint64_t maxb = 0;
    for (const auto& r : rules)
        if (r.index.kind == IndexSet::Kind::Arithmetic) maxb = std::max(maxb, r.index.b);
    // Periodic samples sit far beyond every offset and between sparse members.
    mpz_class base = mpz_class(static_cast<unsigned long>(L)) * ((mpz_class(1) << 70) + static_cast<unsigned long>(maxb));

    auto first_match = [&](const mpz_class& n) -> std::size_t {
        for (std::size_t i = 0; i < rules.size(); ++i)
            if (contains_big(rules[i].index, n)) return i;
        return rules.size();
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
        const IndexSet& s = rules[i].index;
        std::vector<mpz_class> samples;
        if (s.periodic()) {
            for (std::uint64_t r = 0; r < L; ++r)
                for (unsigned long j = 0; j < 4; ++j)
                    samples.push_back(base + static_cast<unsigned long>(r) + mpz_class(static_cast<unsigned long>(L)) * (j * 7919));
        } else if (s.kind == IndexSet::Kind::Geometric) {
            // Start where floor(r^k) is far beyond any arithmetic offset.
            mpq_class p = s.ratio;
            unsigned long k = 1;
            while (p < mpq_class(mpz_class(1) << 80)) {
                p *= s.ratio;
                ++k;
            }
            for (int j = 0; j < 16; ++j, p *= s.ratio) samples.push_back(floor_q(p));
        } else if (s.kind == IndexSet::Kind::Tower) {
            for (unsigned long k = 24; k < 40; ++k) {
                mpz_class f;
                mpz_ui_pow_ui(f.get_mpz_t(), k, k);
                samples.push_back(f);
            }
        }
        if (std::any_of(samples.begin(), samples.end(), [&](const mpz_class& n) { return first_match(n) == i; }))
            out.recurring_rules.push_back(i);
    }
    if (out.recurring_rules.empty()) raise(ErrorKind::InvalidParams, "no rule applies to infinitely many n");

    if (!numeric) {
        out.exact = true;
        out.lo = out.hi = exponent_of(rules[out.recurring_rules.front()]);
        for (std::size_t i : out.recurring_rules) {
            mpq_class e = exponent_of(rules[i]);
            out.lo = std::min(out.lo, e);
            out.hi = std::max(out.hi, e);
        }
        out.lo_approx = out.lo.get_d();
        out.hi_approx = out.hi.get_d();
        return out;
    }

    // Numeric mode: materialize sparse member sets once.
    std::vector<std::vector<std::uint64_t>> members(rules.size());
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const IndexSet& s = rules[i].index;
        if (s.kind == IndexSet::Kind::Geometric) {
            mpq_class p = s.ratio;
            for (mpz_class f = floor_q(p); f <= horizon; p *= s.ratio, f = floor_q(p)) members[i].push_back(f.get_ui());
        } else if (s.kind == IndexSet::Kind::Tower) {
            for (std::uint64_t k = 1;; ++k) {
                mpz_class f;
                mpz_ui_pow_ui(f.get_mpz_t(), k, k);
                if (f > horizon) break;
                members[i].push_back(f.get_ui());
            }
        } else if (s.kind == IndexSet::Kind::List) {
            members[i] = s.list;
            std::sort(members[i].begin(), members[i].end());
        }
    }
    auto matches = [&](std::size_t i, std::uint64_t n) {
        const IndexSet& s = rules[i].index;
        if (s.periodic()) return s.kind == IndexSet::Kind::All || (n >= s.b && (n - s.b) % s.a == 0);
        return std::binary_search(members[i].begin(), members[i].end(), n);
    };
    double lb = std::log(beta);
    auto lo = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(horizon))));
    bool first = true;
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 1); n <= horizon; ++n) {
        std::size_t i = 0;
        while (i < rules.size() && !matches(i, n)) ++i;
        if (i == rules.size()) continue;
        double v = rules[i].constant ? -std::log(rules[i].value.get_d()) / (static_cast<double>(n) * lb)
                                     : rules[i].value.get_d();
        if (first) out.lo_approx = out.hi_approx = v;
        out.lo_approx = std::min(out.lo_approx, v);
        out.hi_approx = std::max(out.hi_approx, v);
        first = false;
    }
    out.lo = out.lo_approx;
    out.hi = out.hi_approx;
    return out;
}

}  // namespace betadyn
