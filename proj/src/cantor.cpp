#include "betadyn/cantor.hpp"

#include "betadyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace betadyn {

namespace {

constexpr std::uint64_t kPositionLimit = std::uint64_t{1} << 40;

std::uint64_t to_u64(const mpz_class& z) {
    if (z < 0 || z > mpz_class(std::to_string(kPositionLimit)))
        raise(ErrorKind::CapExceeded, "schedule position too large: " + z.get_str());
    return std::stoull(z.get_str());
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpq_class pow_q(const mpq_class& q, unsigned long e) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

// Natural log of a positive integer or rational without overflow.
double log_z(const mpz_class& z) {
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_q(const mpq_class& q) { return log_z(q.get_num()) - log_z(q.get_den()); }

std::string frac(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

DigitWord marker(std::size_t N) {
    std::vector<int> d(2 * N + 1, 0);
    d[N] = 1;
    return DigitWord(std::move(d));
}

std::size_t segment_at(const std::vector<TemplateSegment>& segs, std::uint64_t pos) {
    auto it = std::upper_bound(segs.begin(), segs.end(), pos,
                               [](std::uint64_t p, const TemplateSegment& s) { return p < s.start; });
    return static_cast<std::size_t>(it - segs.begin()) - 1;
}

}  // namespace

std::uint64_t CantorSchedule::next_start() const {
    std::uint64_t sum_t = 0;
    for (auto x : t) sum_t += x;
    return n_next + 4 * K * N + 2 * N * sum_t;
}

double CantorSchedule::nu_ratio() const {
    return static_cast<double>(gap(K - 1)) / static_cast<double>(n[K - 1]);
}

double CantorSchedule::nu_hat_ratio() const {
    return static_cast<double>(gap(K - 1)) / static_cast<double>(n_next);
}

double CantorSchedule::nu_residual() const {
    double target = mpq_class(v + delta).get_d();
    return std::abs(nu_ratio() - target) / target;
}

double CantorSchedule::nu_hat_residual() const {
    double target = mpq_class(v_hat + delta).get_d();
    if (target == 0) return nu_hat_ratio();
    return std::abs(nu_hat_ratio() - target) / target;
}

CantorSchedule build_schedule(const mpq_class& v, const mpq_class& v_hat, const mpq_class& delta, std::size_t N,
                              std::size_t K) {
    if (v <= 0 || v_hat < 0 || delta < 0) raise(ErrorKind::InvalidParams, "need v > 0, v_hat >= 0, delta >= 0");
    if (N == 0) raise(ErrorKind::InvalidParams, "padding N must be >= 1");
    if (v_hat + delta >= 1) raise(ErrorKind::InfeasibleTargets, "v_hat + delta must be < 1");
    if (v < v_hat / (1 - v_hat))
        raise(ErrorKind::InfeasibleTargets, "v = " + frac(v) + " is below v_hat/(1-v_hat) = " + frac(v_hat / (1 - v_hat)));
    if (K < 2) raise(ErrorKind::DegenerateSchedule, "at least two levels are needed");

    CantorSchedule s;
    s.v = v;
    s.v_hat = v_hat;
    s.delta = delta;
    s.N = N;
    s.K = K;
    s.tower = (v_hat + delta) == 0;
    const mpq_class growth = s.tower ? mpq_class(0) : mpq_class((v + delta) / (v_hat + delta));
    const mpq_class stretch = 1 + v + delta;
    if (!s.tower && growth <= 1) raise(ErrorKind::DegenerateSchedule, "schedule does not grow");

    std::uint64_t prev_m = 0, prev_gap = 0;
    for (std::size_t k = 1; k <= K + 1; ++k) {
        mpz_class base;
        if (s.tower)
            mpz_ui_pow_ui(base.get_mpz_t(), k, k);
        else
            base = floor_q(pow_q(growth, k));
        std::uint64_t nk = to_u64(base);
        if (nk < 1) nk = 1;
        if (k > 1 && nk <= prev_m) {
            nk = prev_m + 1;
            ++s.repairs;
        }
        if (k == K + 1) {
            s.n_next = nk;
            break;
        }
        std::uint64_t mk = to_u64(floor_q(stretch * mpq_class(mpz_class(std::to_string(nk)))));
        if (mk <= nk) {
            mk = nk + 1;
            ++s.repairs;
        }
        if (mk - nk < prev_gap) {
            mk = nk + prev_gap;
            ++s.repairs;
        }
        s.n.push_back(nk);
        s.m.push_back(mk);
        prev_m = mk;
        prev_gap = mk - nk;
    }
    std::uint64_t sum_t = 0;
    for (std::size_t k = 0; k < K; ++k) {
        std::uint64_t next = k + 1 < K ? s.n[k + 1] : s.n_next;
        std::uint64_t g = s.gap(k);
        std::uint64_t tk = (next - s.m[k] - 1) / g;
        s.t.push_back(tk);
        s.l.push_back(s.n[k] + 4 * k * N + 2 * N * sum_t);
        s.h.push_back(s.m[k] + 4 * (k + 1) * N + 2 * N * sum_t);
        s.p.push_back(g - 1);
        s.q.push_back(s.h.back() + tk * (g + 2 * N));
        sum_t += tk;
    }
    return s;
}

CantorConstruction::CantorConstruction(CantorSchedule schedule, const BetaValue& beta)
    : schedule_(std::move(schedule)), beta_(beta), beta_n_(solve_beta_n(beta, schedule_.N)) {
    const auto& s = schedule_;
    std::uint64_t pos = 1;
    std::uint64_t longest_free = 0;
    auto add_free = [&](std::uint64_t len) {
        if (len == 0) return;
        segments_.push_back({TemplateSegment::Kind::Free, pos, len, {}});
        pos += len;
        longest_free = std::max(longest_free, len);
    };
    auto add_fixed = [&](DigitWord w) {
        if (w.empty()) return;
        std::uint64_t len = w.size();
        segments_.push_back({TemplateSegment::Kind::Fixed, pos, len, std::move(w)});
        pos += len;
    };
    add_free(s.n[0] - 1);
    for (std::size_t k = 0; k < s.K; ++k) {
        if (pos != s.l[k]) raise(ErrorKind::InvalidParams, "layout drift at level " + std::to_string(k + 1));
        std::uint64_t g = s.gap(k);
        add_fixed(marker(s.N) + DigitWord::zeros(g - 1) + marker(s.N));
        for (std::uint64_t j = 0; j < s.t[k]; ++j) {
            add_free(g - 1);
            add_fixed(marker(s.N));
        }
        std::uint64_t next = k + 1 < s.K ? s.l[k + 1] : s.next_start();
        add_free(next - pos);
    }
    counter_ = std::make_shared<WordCounter>(Automaton::for_beta(beta_n_, longest_free + 1));
}

std::uint64_t CantorConstruction::template_length() const { return schedule_.next_start() - 1; }

const Automaton& CantorConstruction::block_automaton() const { return counter_->automaton(); }

mpz_class CantorConstruction::block_count(std::uint64_t length) const { return counter_->count(length, 0); }

mpz_class CantorConstruction::completions(std::uint64_t length, int state) const {
    return counter_->count(length, state);
}

mpz_class CantorConstruction::count(std::uint64_t depth) const {
    if (depth > template_length()) raise(ErrorKind::InvalidParams, "depth beyond the schedule");
    mpz_class total = 1;
    for (const auto& seg : segments_) {
        if (seg.start > depth) break;
        if (seg.kind != TemplateSegment::Kind::Free) continue;
        total *= block_count(std::min(seg.length, depth - seg.start + 1));
    }
    return total;
}

std::uint64_t CantorConstruction::max_depth_within(std::size_t cap) const {
    mpz_class limit(std::to_string(cap));
    std::uint64_t lo = 0, hi = template_length();
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (count(mid) <= limit)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

mpq_class CantorConstruction::mass(const DigitWord& w) const {
    if (w.size() > template_length()) raise(ErrorKind::NotTemplateWord, "word longer than the schedule");
    const Automaton& a = block_automaton();
    mpq_class mass = 1;
    for (const auto& seg : segments_) {
        if (seg.start > w.size()) break;
        std::uint64_t take = std::min<std::uint64_t>(seg.length, w.size() - seg.start + 1);
        std::size_t base = seg.start - 1;
        if (seg.kind == TemplateSegment::Kind::Fixed) {
            for (std::uint64_t i = 0; i < take; ++i)
                if (w[base + i] != seg.digits[i])
                    raise(ErrorKind::NotTemplateWord,
                          "digit " + std::to_string(base + i + 1) + " deviates from the template");
            continue;
        }
        int state = 0;
        for (std::uint64_t i = 0; i < take; ++i) {
            state = a.step(state, w[base + i]);
            if (state < 0)
                raise(ErrorKind::NotTemplateWord, "filler block at " + std::to_string(seg.start) + " is not admissible");
        }
        mpq_class factor(completions(seg.length - take, state), block_count(seg.length));
        factor.canonicalize();
        mass *= factor;
    }
    return mass;
}

std::vector<int> CantorConstruction::next_digits(const DigitWord& w) const {
    std::uint64_t pos = w.size() + 1;
    if (pos > template_length()) return {};
    const TemplateSegment& seg = segments_[segment_at(segments_, pos)];
    if (seg.kind == TemplateSegment::Kind::Fixed) return {seg.digits[pos - seg.start]};
    const Automaton& a = block_automaton();
    auto state = a.run(std::span<const int>(w.digits()).subspan(seg.start - 1, pos - seg.start));
    if (!state) raise(ErrorKind::NotTemplateWord, "filler block is not admissible");
    std::vector<int> out;
    for (int d = 0; d <= a.digit_bound(); ++d)
        if (a.step(*state, d) >= 0) out.push_back(d);
    return out;
}

DigitWord CantorConstruction::representative(std::uint64_t depth) const {
    if (depth > template_length()) raise(ErrorKind::InvalidParams, "depth beyond the schedule");
    std::vector<int> d;
    d.reserve(depth);
    for (const auto& seg : segments_) {
        for (std::uint64_t i = 0; i < seg.length && d.size() < depth; ++i)
            d.push_back(seg.kind == TemplateSegment::Kind::Fixed ? seg.digits[i] : 0);
        if (d.size() == depth) break;
    }
    return DigitWord(std::move(d));
}

std::vector<DigitWord> generate_level_words(const CantorConstruction& c, std::uint64_t depth, std::size_t cap) {
    if (c.count(depth) > mpz_class(std::to_string(cap)))
        raise(ErrorKind::CapExceeded, "level " + std::to_string(depth) + " has more than " + std::to_string(cap) +
                                          " template words");
    std::vector<DigitWord> out;
    const auto& segs = c.segments();
    const Automaton& a = c.block_automaton();
    std::vector<int> digits;
    auto rec = [&](auto&& self, std::uint64_t pos, int state) -> void {
        if (pos > depth) {
            out.emplace_back(digits);
            return;
        }
        const TemplateSegment& s = segs[segment_at(segs, pos)];
        if (pos == s.start) state = 0;
        if (s.kind == TemplateSegment::Kind::Fixed) {
            digits.push_back(s.digits[pos - s.start]);
            self(self, pos + 1, 0);
            digits.pop_back();
            return;
        }
        for (int d = 0; d <= a.digit_bound(); ++d) {
            int next = a.step(state, d);
            if (next < 0) continue;
            digits.push_back(d);
            self(self, pos + 1, next);
            digits.pop_back();
        }
    };
    rec(rec, 1, 0);
    return out;
}

mpq_class bernoulli_measure(const CantorConstruction& c, const DigitWord& w) { return c.mass(w); }

ConservationReport check_mass_conservation(const CantorConstruction& c, std::uint64_t depth, std::size_t cap) {
    if (c.count(depth) > mpz_class(std::to_string(cap)))
        raise(ErrorKind::CapExceeded, "conservation check beyond the word cap");
    ConservationReport r;
    r.depth = depth;
    r.total_is_one = c.mass(DigitWord()) == 1;
    std::vector<DigitWord> level{DigitWord()};
    for (std::uint64_t n = 0; n < depth; ++n) {
        std::vector<DigitWord> next;
        for (const DigitWord& w : level) {
            mpq_class parent = c.mass(w);
            mpq_class sum = 0;
            for (int d : c.next_digits(w)) {
                DigitWord child = w;
                child.push_back(d);
                sum += c.mass(child);
                next.push_back(std::move(child));
            }
            ++r.nodes;
            if (sum != parent) ++r.failures;
        }
        mpq_class total = 0;
        for (const DigitWord& w : next) total += c.mass(w);
        if (total != 1) r.total_is_one = false;
        level = std::move(next);
    }
    return r;
}

std::vector<DigitWord> sample_words(const CantorConstruction& c, std::uint64_t depth, std::size_t count,
                                    std::uint64_t seed) {
    if (depth > c.template_length()) raise(ErrorKind::InvalidParams, "depth beyond the schedule");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Automaton& a = c.block_automaton();
    std::vector<DigitWord> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<int> digits;
        digits.reserve(depth);
        for (const auto& seg : c.segments()) {
            if (digits.size() >= depth) break;
            if (seg.kind == TemplateSegment::Kind::Fixed) {
                for (std::uint64_t j = 0; j < seg.length && digits.size() < depth; ++j) digits.push_back(seg.digits[j]);
                continue;
            }
            int state = 0;
            for (std::uint64_t j = 0; j < seg.length && digits.size() < depth; ++j) {
                mpz_class total = c.completions(seg.length - j, state);
                double u = unit(rng);
                double acc = 0;
                int chosen = -1, fallback = -1;
                for (int d = 0; d <= a.digit_bound(); ++d) {
                    int next = a.step(state, d);
                    if (next < 0) continue;
                    fallback = d;
                    mpq_class share(c.completions(seg.length - j - 1, next), total);
                    acc += share.get_d();
                    if (u < acc) {
                        chosen = d;
                        break;
                    }
                }
                if (chosen < 0) chosen = fallback;
                digits.push_back(chosen);
                state = a.step(state, chosen);
            }
        }
        out.emplace_back(std::move(digits));
    }
    return out;
}

namespace {

// -log_beta |I(w)| with a fullness certificate when it applies.
std::pair<double, bool> neg_log_length(const DigitWord& w, const BetaValue& beta) {
    Cylinder cyl = cylinder_interval(w, beta);
    double lb = std::log(beta.approx());
    if (is_full(cyl, beta)) return {static_cast<double>(w.size()), true};
    RealScalar len = cyl.length();
    if (auto q = len.as_rational()) return {-log_q(*q) / lb, false};
    unsigned bits = static_cast<unsigned>(static_cast<double>(w.size()) * lb / std::log(2.0)) + 160;
    Enclosure e = len.enclosure(bits);
    return {-log_q(mpq_class((e.lo + e.hi) / 2)) / lb, false};
}

}  // namespace

std::vector<LocalDimensionPoint> local_dimension_series(const CantorConstruction& c, std::size_t K) {
    const auto& s = c.schedule();
    if (K > s.K) raise(ErrorKind::InvalidParams, "K exceeds the schedule levels");
    double lb = std::log(c.beta().approx());
    std::vector<LocalDimensionPoint> out;
    for (std::size_t k = 0; k < K; ++k) {
        LocalDimensionPoint pt;
        pt.k = k + 1;
        pt.level = s.h[k];
        DigitWord w = c.representative(pt.level);
        pt.neg_log_mass = -log_q(c.mass(w)) / lb;
        auto [len, full] = neg_log_length(w, c.beta());
        pt.neg_log_length = len;
        pt.full = full;
        pt.ratio = pt.neg_log_mass / pt.neg_log_length;
        out.push_back(pt);
    }
    return out;
}

double local_dimension_target(const CantorConstruction& c) {
    const auto& s = c.schedule();
    mpq_class a = s.v + s.delta, b = s.v_hat + s.delta;
    mpq_class core = (s.v - s.v_hat - a * b) / ((1 + a) * (s.v - s.v_hat));
    return core.get_d() * std::log(c.beta_n().approx()) / std::log(c.beta().approx());
}

BoxCountResult boxcount_estimate(const std::vector<CoverScale>& scales) {
    if (scales.size() < 4) raise(ErrorKind::InsufficientScales, "box counting needs at least 4 scales");
    double n = static_cast<double>(scales.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : scales) {
        sx += p.log_inv_eps;
        sy += p.log_count;
        sxx += p.log_inv_eps * p.log_inv_eps;
        sxy += p.log_inv_eps * p.log_count;
    }
    double den = n * sxx - sx * sx;
    if (den == 0) raise(ErrorKind::InsufficientScales, "scales are not distinct");
    BoxCountResult r;
    r.slope = (n * sxy - sx * sy) / den;
    r.intercept = (sy - r.slope * sx) / n;
    double ss = 0;
    for (const auto& p : scales) {
        double e = p.log_count - (r.intercept + r.slope * p.log_inv_eps);
        ss += e * e;
    }
    r.residual = std::sqrt(ss / n);
    r.scales = scales.size();
    return r;
}

BoxCountResult boxcount_estimate(const std::vector<MeasuredCylinder>& cover) {
    std::map<std::uint64_t, std::pair<std::size_t, mpq_class>> levels;
    for (const auto& mc : cover) {
        auto len = mc.cylinder.length().as_rational();
        mpq_class value = len ? *len : mpq_class(mc.cylinder.length().approx());
        auto& slot = levels[mc.level];
        if (slot.first == 0 || value > slot.second) slot.second = value;
        ++slot.first;
    }
    std::vector<CoverScale> scales;
    for (const auto& [level, info] : levels)
        scales.push_back({-log_q(info.second), std::log(static_cast<double>(info.first))});
    return boxcount_estimate(scales);
}

std::vector<CoverScale> milestone_cover(const CantorConstruction& c, std::size_t from, std::size_t to) {
    if (from < 1 || to < from) raise(ErrorKind::InvalidParams, "bad milestone range");
    double lb = std::log(c.beta().approx());
    std::vector<CoverScale> out;
    auto series = local_dimension_series(c, to);
    for (std::size_t k = from; k <= to; ++k) {
        const auto& pt = series[k - 1];
        out.push_back({pt.neg_log_length * lb, log_z(c.count(pt.level))});
    }
    return out;
}

std::vector<MeasuredCylinder> measured_cover(const CantorConstruction& c, std::uint64_t depth, std::size_t cap) {
    std::vector<MeasuredCylinder> out;
    for (std::uint64_t n = 1; n <= depth; ++n) {
        for (auto& w : generate_level_words(c, n, cap)) {
            mpq_class m = c.mass(w);
            out.push_back({cylinder_interval(w, c.beta()), std::move(m), n});
        }
        if (out.size() > cap) raise(ErrorKind::CapExceeded, "cover exceeds the word cap");
    }
    return out;
}

std::string cover_csv(const std::vector<MeasuredCylinder>& cover, int digits) {
    std::ostringstream os;
    os << "level,word,left,length,mass\n";
    for (const auto& mc : cover)
        os << mc.level << ',' << mc.cylinder.word.to_string() << ',' << mc.cylinder.left.to_decimal(digits) << ','
           << mc.cylinder.length().to_decimal(digits) << ',' << frac(mc.mass) << '\n';
    return os.str();
}

MembershipReport verify_membership(const CantorConstruction& c, const std::vector<DigitWord>& samples,
                                   const SpeedFn& psi1, const SpeedFn& psi2) {
    const auto& s = c.schedule();
    const BetaValue& beta = c.beta();
    MembershipReport r;
    r.samples = samples.size();
    constexpr std::size_t kKeep = 16;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const DigitWord& w = samples[i];
        std::size_t done = 0;
        while (done < s.K && s.close(done) <= w.size()) ++done;
        r.milestones = i == 0 ? done : std::min(r.milestones, done);
        if (done == 0) continue;
        RealScalar x = RealScalar::from_digits(beta, w.view());
        std::uint64_t last = s.close(done - 1);
        Orbit o = orbit(x, beta, last + 1);
        for (std::size_t k = 0; k < done; ++k) {
            std::uint64_t at = s.hit(k);
            ++r.asymptotic_checks;
            if (!below_speed(o.points[at], beta, psi1.at(at))) {
                ++r.asymptotic_violations;
                if (r.violations.size() < kKeep) r.violations.push_back({i, "asymptotic", at});
            }
        }
        r.uniform_from = s.hit(0);
        r.uniform_to = std::max(r.uniform_to, last);
        for (const auto& [N, ok] : uniform_check(x, beta, psi2, s.hit(0), last)) {
            ++r.uniform_checks;
            if (!ok) {
                ++r.uniform_violations;
                if (r.violations.size() < kKeep) r.violations.push_back({i, "uniform", N});
            }
        }
    }
    return r;
}

}  // namespace betadyn
