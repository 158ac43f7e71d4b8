#pragma once

#include "betadyn/precision.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace betadyn {

class DigitWord {
public:
    DigitWord() = default;
    DigitWord(std::initializer_list<int> digits) : digits_(digits) {}
    explicit DigitWord(std::vector<int> digits) : digits_(std::move(digits)) {}

    // "10100" or "10,11,3" (comma separated when digits exceed 9)
    static DigitWord parse(std::string_view text);
    static DigitWord zeros(std::size_t n) { return DigitWord(std::vector<int>(n, 0)); }

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    int operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<int>& digits() const { return digits_; }
    std::span<const int> view() const { return digits_; }
    int max_digit() const;

    DigitWord prefix(std::size_t n) const;
    DigitWord suffix_from(std::size_t k) const;
    void push_back(int d) { digits_.push_back(d); }
    void pop_back() { digits_.pop_back(); }
    friend DigitWord operator+(const DigitWord& a, const DigitWord& b);

    std::string to_string() const;

    auto operator<=>(const DigitWord&) const = default;
    bool operator==(const DigitWord&) const = default;

private:
    std::vector<int> digits_;
};

// One step of the greedy algorithm: returns T_beta x and stores floor(beta x).
RealScalar beta_step(const RealScalar& x, const BetaValue& beta, int* digit = nullptr);

DigitWord greedy_expand(const RealScalar& x, const BetaValue& beta, std::size_t n);

struct ExpansionOfOne {
    DigitWord digits;            // n digits of d_beta(1), zero padded after termination
    bool simple_parry = false;   // terminated within n digits (certified zero tail)
    bool undetermined = false;   // did not terminate within n digits
    std::optional<std::size_t> length;  // m when simple Parry
};

ExpansionOfOne expansion_of_one(const BetaValue& beta, std::size_t n);

struct EpsStar {
    DigitWord prefix;
    bool simple_parry = false;
    std::optional<std::pair<std::size_t, std::size_t>> period;  // (start, length), 1-based start
};

EpsStar eps_star_prefix(const BetaValue& beta, std::size_t n);

// Admissibility automaton. The state is the length of the longest suffix of the
// word read so far that is a prefix of eps*; a digit below eps*_{j+1} resets to 0.
// For simple Parry beta the automaton is finite with period-many states.
class Automaton {
public:
    Automaton(std::vector<int> eps, bool periodic);
    static Automaton for_beta(const BetaValue& beta, std::size_t length);

    int step(int state, int digit) const;  // -1 when rejected
    std::optional<int> run(std::span<const int> word, int state = 0) const;
    bool accepts(std::span<const int> word) const { return run(word).has_value(); }

    bool periodic() const { return periodic_; }
    std::size_t state_count() const { return periodic_ ? eps_.size() : eps_.size() + 1; }
    // Longest word length the automaton can decide.
    std::size_t max_length() const;
    int digit_bound() const { return eps_.front(); }
    const std::vector<int>& eps() const { return eps_; }

private:
    std::vector<int> eps_;
    bool periodic_;
};

// Number of admissible continuations of a given length from a state, memoized.
class WordCounter {
public:
    explicit WordCounter(Automaton automaton);
    const mpz_class& count(std::size_t length, int state = 0);
    const Automaton& automaton() const { return automaton_; }

private:
    Automaton automaton_;
    std::vector<std::vector<mpz_class>> rows_;
};

bool is_admissible(const DigitWord& w, const BetaValue& beta);

inline constexpr std::size_t kEnumerationCap = 24;
inline constexpr std::size_t kCountCap = 4096;
inline constexpr std::size_t kMaterializeCap = std::size_t{1} << 22;

std::vector<DigitWord> enumerate_admissible(const BetaValue& beta, std::size_t n, std::size_t cap = kEnumerationCap);
mpz_class count_admissible(const BetaValue& beta, std::size_t n, std::size_t cap = kCountCap);

// Root > 1 of 1 = eps*_1/z + ... + eps*_N/z^N.
BetaValue solve_beta_n(const BetaValue& beta, std::size_t N);

}  // namespace betadyn
