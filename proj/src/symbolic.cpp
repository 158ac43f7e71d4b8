#include "betadyn/symbolic.hpp"

#include "betadyn/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace betadyn {

DigitWord DigitWord::parse(std::string_view text) {
    std::vector<int> digits;
    std::string s(text);
    if (s.find(',') != std::string::npos) {
        std::stringstream in(s);
        for (std::string item; std::getline(in, item, ',');) {
            if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
                raise(ErrorKind::ParseError, "bad digit '" + item + "'");
            digits.push_back(std::stoi(item));
        }
    } else {
        for (char c : s) {
            if (c < '0' || c > '9') raise(ErrorKind::ParseError, std::string("bad digit '") + c + "'");
            digits.push_back(c - '0');
        }
    }
    return DigitWord(std::move(digits));
}

int DigitWord::max_digit() const {
    return digits_.empty() ? 0 : *std::max_element(digits_.begin(), digits_.end());
}

DigitWord DigitWord::prefix(std::size_t n) const {
    n = std::min(n, digits_.size());
    return DigitWord(std::vector<int>(digits_.begin(), digits_.begin() + static_cast<long>(n)));
}

DigitWord DigitWord::suffix_from(std::size_t k) const {
    k = std::min(k, digits_.size());
    return DigitWord(std::vector<int>(digits_.begin() + static_cast<long>(k), digits_.end()));
}

DigitWord operator+(const DigitWord& a, const DigitWord& b) {
    std::vector<int> v = a.digits_;
    v.insert(v.end(), b.digits_.begin(), b.digits_.end());
    return DigitWord(std::move(v));
}

std::string DigitWord::to_string() const {
    std::string out;
    bool commas = max_digit() > 9;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (commas && i) out += ',';
        out += std::to_string(digits_[i]);
    }
    return out;
}

RealScalar beta_step(const RealScalar& x, const BetaValue& beta, int* digit) {
    RealScalar y = x.times_beta(beta);
    mpz_class k = safe_floor(y);
    if (digit) *digit = static_cast<int>(k.get_si());
    return y - RealScalar(mpq_class(k));
}

DigitWord greedy_expand(const RealScalar& x, const BetaValue& beta, std::size_t n) {
    if (sign(x) < 0 || compare_exact(x, RealScalar(1)) >= 0)
        raise(ErrorKind::DomainError, "greedy_expand needs 0 <= x < 1");
    std::vector<int> digits;
    digits.reserve(n);
    RealScalar y = x;
    for (std::size_t i = 0; i < n; ++i) {
        if (y.is_exact_zero()) {
            digits.resize(n, 0);
            break;
        }
        int d = 0;
        y = beta_step(y, beta, &d);
        digits.push_back(d);
    }
    return DigitWord(std::move(digits));
}

namespace {

struct OneOrbit {
    std::weak_ptr<const detail::BetaField> owner;
    std::vector<int> digits;
    RealScalar y = RealScalar(1);
    bool terminated = false;
};

std::mutex one_mu;
std::map<const void*, OneOrbit> one_cache;

}  // namespace

ExpansionOfOne expansion_of_one(const BetaValue& beta, std::size_t n) {
    if (n < 1) raise(ErrorKind::InvalidParams, "expansion_of_one needs n >= 1");
    OneOrbit state;
    {
        std::lock_guard<std::mutex> lock(one_mu);
        auto it = one_cache.find(beta.field().get());
        if (it != one_cache.end() && !it->second.owner.expired()) state = it->second;
        else state.owner = beta.field();
    }
    // 1 is a boundary point: the first step takes floor(beta), later steps are T_beta.
    while (!state.terminated && state.digits.size() < n) {
        int d = 0;
        state.y = beta_step(state.y, beta, &d);
        state.digits.push_back(d);
        if (sign(state.y) == 0) state.terminated = true;
    }
    {
        std::lock_guard<std::mutex> lock(one_mu);
        auto& slot = one_cache[beta.field().get()];
        if (slot.owner.expired() || slot.digits.size() < state.digits.size()) slot = state;
    }
    ExpansionOfOne out;
    std::vector<int> digits(state.digits.begin(), state.digits.begin() + static_cast<long>(std::min(n, state.digits.size())));
    if (state.terminated && state.digits.size() <= n) {
        out.simple_parry = true;
        out.length = state.digits.size();
    } else {
        out.undetermined = true;
    }
    digits.resize(n, 0);
    out.digits = DigitWord(std::move(digits));
    return out;
}

EpsStar eps_star_prefix(const BetaValue& beta, std::size_t n) {
    if (n < 1) raise(ErrorKind::InvalidParams, "eps_star_prefix needs n >= 1");
    EpsStar out;
    ExpansionOfOne one = expansion_of_one(beta, n);
    if (!one.simple_parry) {
        out.prefix = one.digits;
        return out;
    }
    const std::size_t m = *one.length;
    std::vector<int> period(one.digits.digits().begin(), one.digits.digits().begin() + static_cast<long>(m));
    period.back() -= 1;
    std::vector<int> prefix(n);
    for (std::size_t i = 0; i < n; ++i) prefix[i] = period[i % m];
    out.prefix = DigitWord(std::move(prefix));
    out.simple_parry = true;
    out.period = std::make_pair(std::size_t{1}, m);
    return out;
}

Automaton::Automaton(std::vector<int> eps, bool periodic) : eps_(std::move(eps)), periodic_(periodic) {
    if (eps_.empty() || eps_.front() < 1) raise(ErrorKind::InvalidParams, "automaton needs eps*_1 >= 1");
}

Automaton Automaton::for_beta(const BetaValue& beta, std::size_t length) {
    EpsStar e = eps_star_prefix(beta, std::max<std::size_t>(length, 1));
    if (e.simple_parry) {
        const auto& d = e.prefix.digits();
        return Automaton(std::vector<int>(d.begin(), d.begin() + static_cast<long>(e.period->second)), true);
    }
    return Automaton(e.prefix.digits(), false);
}

int Automaton::step(int state, int digit) const {
    if (digit < 0) return -1;
    if (static_cast<std::size_t>(state) >= eps_.size())
        raise(ErrorKind::CapExceeded, "word exceeds the eps* prefix known to the automaton");
    int e = eps_[static_cast<std::size_t>(state)];
    if (digit > e) return -1;
    if (digit < e) return 0;
    int next = state + 1;
    if (periodic_ && static_cast<std::size_t>(next) == eps_.size()) next = 0;
    return next;
}

std::optional<int> Automaton::run(std::span<const int> word, int state) const {
    for (int d : word) {
        state = step(state, d);
        if (state < 0) return std::nullopt;
    }
    return state;
}

std::size_t Automaton::max_length() const {
    return periodic_ ? static_cast<std::size_t>(-1) : eps_.size();
}

WordCounter::WordCounter(Automaton automaton) : automaton_(std::move(automaton)) {
    rows_.emplace_back(automaton_.state_count(), mpz_class(1));
}

const mpz_class& WordCounter::count(std::size_t length, int state) {
    if (length > automaton_.max_length() || static_cast<std::size_t>(state) + length > automaton_.max_length())
        raise(ErrorKind::CapExceeded, "count beyond the known eps* prefix");
    const auto& eps = automaton_.eps();
    while (rows_.size() <= length) {
        const auto& prev = rows_.back();
        std::size_t width = automaton_.periodic() ? eps.size() : prev.size() - 1;
        std::vector<mpz_class> row(width);
        for (std::size_t j = 0; j < width; ++j) {
            std::size_t next = j + 1;
            if (automaton_.periodic() && next == eps.size()) next = 0;
            row[j] = prev[0] * eps[j] + prev[next];
        }
        rows_.push_back(std::move(row));
    }
    return rows_[length][static_cast<std::size_t>(state)];
}

bool is_admissible(const DigitWord& w, const BetaValue& beta) {
    if (w.empty()) return true;
    for (int d : w.digits())
        if (d < 0 || d > beta.digit_bound()) return false;
    return Automaton::for_beta(beta, w.size()).accepts(w.view());
}

namespace {

void check_enumeration(const BetaValue& beta, std::size_t n, std::size_t cap) {
    if (n < 1) raise(ErrorKind::InvalidParams, "n must be >= 1");
    if (n > cap) raise(ErrorKind::CapExceeded, "n=" + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
    (void)beta;
}

}  // namespace

std::vector<DigitWord> enumerate_admissible(const BetaValue& beta, std::size_t n, std::size_t cap) {
    check_enumeration(beta, n, cap);
    Automaton a = Automaton::for_beta(beta, n);
    WordCounter counter(a);
    if (counter.count(n) > kMaterializeCap)
        raise(ErrorKind::CapExceeded, "too many words to materialize; use count-only mode");
    std::vector<DigitWord> out;
    std::vector<int> word;
    auto dfs = [&](auto&& self, int state) -> void {
        if (word.size() == n) {
            out.emplace_back(word);
            return;
        }
        for (int d = 0; d <= a.digit_bound(); ++d) {
            int next = a.step(state, d);
            if (next < 0) continue;
            word.push_back(d);
            self(self, next);
            word.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

mpz_class count_admissible(const BetaValue& beta, std::size_t n, std::size_t cap) {
    check_enumeration(beta, n, cap);
    WordCounter counter(Automaton::for_beta(beta, n));
    return counter.count(n);
}

BetaValue solve_beta_n(const BetaValue& beta, std::size_t N) {
    if (N < 1) raise(ErrorKind::InvalidParams, "N must be >= 1");
    EpsStar e = eps_star_prefix(beta, N);
    long total = 0;
    std::vector<mpq_class> coeffs(N + 1);
    coeffs[N] = 1;
    for (std::size_t i = 1; i <= N; ++i) {
        coeffs[N - i] = -e.prefix[i - 1];
        total += e.prefix[i - 1];
    }
    if (total <= 1)
        raise(ErrorKind::DegenerateEquation, "eps* prefix of length " + std::to_string(N) + " forces a root <= 1");
    return BetaValue::from_polynomial(Polynomial(std::move(coeffs)), 1, e.prefix[0] + 1);
}

}  // namespace betadyn
