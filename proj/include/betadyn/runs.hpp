#pragma once

#include "betadyn/precision.hpp"
#include "betadyn/symbolic.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace betadyn {

// Lazily generated digit sequence a_1, a_2, ... (1-based positions).
class DigitStream {
public:
    using Generator = std::function<int(std::uint64_t)>;

    DigitStream(Generator generator, std::optional<std::uint64_t> zero_from = std::nullopt, std::string label = {});

    static DigitStream from_word(const DigitWord& w);   // w then zeros
    static DigitStream periodic(const DigitWord& w);    // w w w ...
    static DigitStream expansion(const RealScalar& x, const BetaValue& beta);

    int digit(std::uint64_t i) const;
    std::vector<int> prefix(std::uint64_t n) const;
    // Position from which every digit is known to be zero (terminating stream).
    std::optional<std::uint64_t> zero_from() const;
    const std::string& label() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

struct PeriodicWitness {
    DigitWord word;
};
// n_k = floor(R^k), m_k = n_k + floor(c n_k); filler 1010.. keeps later runs short.
struct ScheduledWitness {
    mpq_class ratio;
    mpq_class gap_factor;
};
// n_{k+1} = m_k = floor(R n_k): runs share endpoints, nu_hat -> 1 - 1/R.
struct ChainedWitness {
    mpq_class ratio;
    std::uint64_t start = 4;
};
// 1 0^{floor 2^{a^{1}}} 1 0^{floor 2^{a^{4}}} 1 ... truncated after `blocks` blocks.
struct PsiAWitness {
    double a = 2;
    int blocks = 3;
};
using WitnessSpec = std::variant<PeriodicWitness, ScheduledWitness, ChainedWitness, PsiAWitness>;

// periodic:<word> | scheduled:R,c | chained:R[,start] | psi_a:a[,blocks]
WitnessSpec parse_witness(std::string_view text);
DigitStream witness_stream(const WitnessSpec& spec);

struct Run {
    std::uint64_t start;  // n', nonzero digit
    std::uint64_t end;    // m', next nonzero digit
    std::uint64_t gap() const { return end - start; }
};

struct RunDecomposition {
    std::vector<Run> runs;
    std::vector<Run> selected;  // strictly increasing gaps, greedy from the first run
    bool terminating = false;
    std::uint64_t horizon = 0;
};

RunDecomposition run_decomposition(const DigitStream& d, std::uint64_t horizon);

struct ExtendedReal {
    bool infinite = false;
    double value = 0;
};

struct ExponentEstimate {
    ExtendedReal nu;
    ExtendedReal nu_hat;
    std::uint64_t horizon = 0;
    std::size_t window = 0;
    std::vector<double> nu_ratios;      // (m_k - n_k) / n_k
    std::vector<double> nu_hat_ratios;  // (m_k - n_k) / n_{k+1}
};

inline constexpr double kTailFraction = 0.5;

ExponentEstimate estimate_exponents(const DigitStream& d, std::uint64_t horizon, double tail_fraction = kTailFraction);
ExponentEstimate estimate_exponents(const RunDecomposition& runs, double tail_fraction = kTailFraction);

}  // namespace betadyn
