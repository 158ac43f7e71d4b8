#include "betadyn/runs.hpp"

#include "betadyn/error.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace betadyn {

struct DigitStream::State {
    Generator generator;
    std::optional<std::uint64_t> zero_from;
    std::string label;
};

DigitStream::DigitStream(Generator generator, std::optional<std::uint64_t> zero_from, std::string label)
    : state_(std::make_shared<State>(State{std::move(generator), zero_from, std::move(label)})) {}

int DigitStream::digit(std::uint64_t i) const {
    if (i < 1) raise(ErrorKind::InvalidParams, "digit positions start at 1");
    if (state_->zero_from && i >= *state_->zero_from) return 0;
    return state_->generator(i);
}

std::vector<int> DigitStream::prefix(std::uint64_t n) const {
    std::vector<int> out(n);
    for (std::uint64_t i = 1; i <= n; ++i) out[i - 1] = digit(i);
    return out;
}

std::optional<std::uint64_t> DigitStream::zero_from() const { return state_->zero_from; }
const std::string& DigitStream::label() const { return state_->label; }

DigitStream DigitStream::from_word(const DigitWord& w) {
    auto digits = w.digits();
    return DigitStream([digits](std::uint64_t i) { return i <= digits.size() ? digits[i - 1] : 0; },
                       w.size() + 1, "word:" + w.to_string());
}

DigitStream DigitStream::periodic(const DigitWord& w) {
    if (w.empty()) raise(ErrorKind::InvalidParams, "periodic word must be non-empty");
    auto digits = w.digits();
    std::optional<std::uint64_t> zero;
    if (w.max_digit() == 0) zero = 1;
    return DigitStream([digits](std::uint64_t i) { return digits[(i - 1) % digits.size()]; }, zero,
                       "periodic:" + w.to_string());
}

DigitStream DigitStream::expansion(const RealScalar& x, const BetaValue& beta) {
    if (sign(x) < 0 || compare_exact(x, RealScalar(1)) >= 0) raise(ErrorKind::DomainError, "expansion needs 0 <= x < 1");
    struct Cache {
        std::mutex mu;
        std::vector<int> digits;
        RealScalar y;
        bool dead = false;
    };
    auto cache = std::make_shared<Cache>();
    cache->y = x;
    cache->dead = sign(x) == 0;
    DigitStream stream(nullptr, std::nullopt, "expansion");
    std::weak_ptr<State> weak = stream.state_;
    stream.state_->generator = [cache, beta, weak](std::uint64_t i) {
        std::lock_guard<std::mutex> lock(cache->mu);
        while (cache->digits.size() < i && !cache->dead) {
            int d = 0;
            cache->y = beta_step(cache->y, beta, &d);
            cache->digits.push_back(d);
            if (sign(cache->y) == 0) {
                cache->dead = true;
                if (auto s = weak.lock()) s->zero_from = cache->digits.size() + 1;
            }
        }
        return i <= cache->digits.size() ? cache->digits[i - 1] : 0;
    };
    if (cache->dead) stream.state_->zero_from = 1;
    return stream;
}

namespace {

std::uint64_t floor_u64(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!r.fits_ulong_p()) raise(ErrorKind::InvalidParams, "schedule index overflows");
    return r.get_ui();
}

// Scheduled runs (n_k, m_k) with filler between them, generated on demand.
struct Schedule {
    std::mutex mu;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;
    mpq_class next_power;
    mpq_class ratio, gap;
    bool chained = false;

    void extend_to(std::uint64_t i) {
        while (runs.empty() || runs.back().first <= i) {
            std::uint64_t n, m;
            if (chained) {
                n = runs.empty() ? floor_u64(next_power) : runs.back().second;
                m = floor_u64(ratio * mpz_class(static_cast<unsigned long>(n)));
            } else {
                n = floor_u64(next_power);
                next_power *= ratio;
                m = n + floor_u64(gap * mpz_class(static_cast<unsigned long>(n)));
                // Levels whose gap would put two ones side by side are skipped.
                if (m < n + 2) continue;
                if (!runs.empty() && n < runs.back().second) raise(ErrorKind::InvalidParams, "runs overlap: need c + 1 <= R");
            }
            if (m <= n) raise(ErrorKind::InvalidParams, "schedule does not grow");
            runs.emplace_back(n, m);
        }
    }

    int digit(std::uint64_t i) {
        std::lock_guard<std::mutex> lock(mu);
        extend_to(i);
        auto it = std::upper_bound(runs.begin(), runs.end(), i,
                                   [](std::uint64_t v, const auto& r) { return v < r.first; });
        if (it == runs.begin()) return 0;
        --it;
        auto [n, m] = *it;
        if (i == n || i == m) return 1;
        if (i < m || chained) return 0;
        std::uint64_t next = std::next(it)->first;
        return ((i - m) % 2 == 0 && i + 1 < next) ? 1 : 0;
    }
};

std::vector<std::string> split_params(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) parts.push_back(item);
    return parts;
}

}  // namespace

WitnessSpec parse_witness(std::string_view text) {
    std::string s(text);
    auto colon = s.find(':');
    if (colon == std::string::npos) raise(ErrorKind::ParseError, "witness spec needs kind:params");
    std::string kind = s.substr(0, colon);
    auto params = split_params(s.substr(colon + 1));
    if (kind == "periodic") return PeriodicWitness{DigitWord::parse(s.substr(colon + 1))};
    if (kind == "scheduled") {
        if (params.size() != 2) raise(ErrorKind::ParseError, "scheduled needs R,c");
        return ScheduledWitness{parse_rational(params[0]), parse_rational(params[1])};
    }
    if (kind == "chained") {
        if (params.empty() || params.size() > 2) raise(ErrorKind::ParseError, "chained needs R[,start]");
        ChainedWitness w{parse_rational(params[0])};
        if (params.size() == 2) w.start = std::stoull(params[1]);
        return w;
    }
    if (kind == "psi_a") {
        if (params.empty() || params.size() > 2) raise(ErrorKind::ParseError, "psi_a needs a[,blocks]");
        PsiAWitness w{std::stod(params[0])};
        if (params.size() == 2) w.blocks = std::stoi(params[1]);
        return w;
    }
    raise(ErrorKind::ParseError, "unknown witness kind '" + kind + "'");
}

DigitStream witness_stream(const WitnessSpec& spec) {
    if (auto p = std::get_if<PeriodicWitness>(&spec)) return DigitStream::periodic(p->word);
    if (auto p = std::get_if<ScheduledWitness>(&spec)) {
        if (p->ratio <= 1 || sgn(p->gap_factor) <= 0) raise(ErrorKind::InvalidParams, "scheduled needs R > 1, c > 0");
        if (p->gap_factor + 1 > p->ratio) raise(ErrorKind::InvalidParams, "scheduled needs c + 1 <= R");
        auto sched = std::make_shared<Schedule>();
        sched->ratio = p->ratio;
        sched->gap = p->gap_factor;
        sched->next_power = p->ratio;
        return DigitStream([sched](std::uint64_t i) { return sched->digit(i); }, std::nullopt,
                           "scheduled:" + p->ratio.get_str() + "," + p->gap_factor.get_str());
    }
    if (auto p = std::get_if<ChainedWitness>(&spec)) {
        if (p->ratio <= 1 || p->start < 1) raise(ErrorKind::InvalidParams, "chained needs R > 1, start >= 1");
        if (p->ratio * mpz_class(static_cast<unsigned long>(p->start)) < p->start + 2)
            raise(ErrorKind::InvalidParams, "chained start too small for R");
        auto sched = std::make_shared<Schedule>();
        sched->ratio = p->ratio;
        sched->chained = true;
        sched->next_power = mpz_class(static_cast<unsigned long>(p->start));
        return DigitStream([sched](std::uint64_t i) { return sched->digit(i); }, std::nullopt,
                           "chained:" + p->ratio.get_str() + "," + std::to_string(p->start));
    }
    const auto& w = std::get<PsiAWitness>(spec);
    if (!(w.a > 1) || w.blocks < 1) raise(ErrorKind::InvalidParams, "psi_a needs a > 1 and blocks >= 1");
    std::vector<std::uint64_t> ones{1};
    for (int k = 1; k <= w.blocks; ++k) {
        long double e = std::pow(static_cast<long double>(w.a), static_cast<long double>(k) * k);
        if (e > 40) raise(ErrorKind::InvalidParams, "psi_a block " + std::to_string(k) + " overflows; truncate earlier");
        auto zeros = static_cast<std::uint64_t>(std::floor(std::pow(2.0L, e)));
        ones.push_back(ones.back() + zeros + 1);
    }
    std::ostringstream label;
    label << "psi_a:" << w.a << "," << w.blocks;
    return DigitStream([ones](std::uint64_t i) { return std::binary_search(ones.begin(), ones.end(), i) ? 1 : 0; },
                       ones.back() + 1, label.str());
}

RunDecomposition run_decomposition(const DigitStream& d, std::uint64_t horizon) {
    RunDecomposition out;
    out.horizon = horizon;
    std::optional<std::uint64_t> last;
    for (std::uint64_t i = 1; i <= horizon; ++i) {
        if (d.zero_from() && i >= *d.zero_from()) break;
        if (d.digit(i) == 0) continue;
        if (last && i - *last >= 2) out.runs.push_back({*last, i});
        last = i;
    }
    out.terminating = d.zero_from() && *d.zero_from() <= horizon + 1;
    if (!last) out.terminating = out.terminating || d.zero_from().has_value();
    for (const auto& r : out.runs)
        if (out.selected.empty() || r.gap() > out.selected.back().gap()) out.selected.push_back(r);
    return out;
}

ExponentEstimate estimate_exponents(const RunDecomposition& rd, double tail_fraction) {
    ExponentEstimate est;
    est.horizon = rd.horizon;
    if (rd.terminating) {
        est.nu.infinite = est.nu_hat.infinite = true;
        return est;
    }
    const auto& s = rd.selected;
    if (s.size() < 3) raise(ErrorKind::InsufficientRuns, "only " + std::to_string(s.size()) + " selected runs within horizon");
    for (std::size_t k = 0; k < s.size(); ++k) {
        double g = static_cast<double>(s[k].gap());
        est.nu_ratios.push_back(g / static_cast<double>(s[k].start));
        if (k + 1 < s.size()) est.nu_hat_ratios.push_back(g / static_cast<double>(s[k + 1].start));
    }
    auto window = [&](const std::vector<double>& v) {
        std::size_t w = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(v.size()))));
        return std::vector<double>(v.end() - static_cast<long>(std::min(w, v.size())), v.end());
    };
    auto nu_tail = window(est.nu_ratios);
    auto hat_tail = window(est.nu_hat_ratios);
    est.window = nu_tail.size();
    est.nu.value = *std::max_element(nu_tail.begin(), nu_tail.end());
    est.nu_hat.value = *std::min_element(hat_tail.begin(), hat_tail.end());
    return est;
}

ExponentEstimate estimate_exponents(const DigitStream& d, std::uint64_t horizon, double tail_fraction) {
    return estimate_exponents(run_decomposition(d, horizon), tail_fraction);
}

}  // namespace betadyn
