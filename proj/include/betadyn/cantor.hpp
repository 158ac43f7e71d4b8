#pragma once

#include "betadyn/cylinders.hpp"
#include "betadyn/orbit.hpp"
#include "betadyn/symbolic.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace betadyn {

// Run schedule of the Cantor subset: forced 1s at n_k, m_k and m_k + j (m_k - n_k),
// j <= t_k, zeros in between. Sequences are 1-based by level, stored 0-based.
struct CantorSchedule {
    mpq_class v, v_hat, delta;
    std::size_t N = 0;
    std::size_t K = 0;
    std::vector<std::uint64_t> n, m, t;  // K entries each
    std::uint64_t n_next = 0;            // n_{K+1}
    std::size_t repairs = 0;
    bool tower = false;  // n_k = k^k when v_hat + delta = 0

    // Padded positions: l_k first marker start, h_k end of the m_k marker,
    // p_k free length between repeats, q_k end of the last repeat marker.
    std::vector<std::uint64_t> l, h, p, q;
    // Positions of the marker 1s for n_k and m_k.
    std::uint64_t hit(std::size_t k) const { return l[k] + N; }
    std::uint64_t close(std::size_t k) const { return h[k] - N; }
    std::uint64_t gap(std::size_t k) const { return m[k] - n[k]; }
    std::uint64_t next_start() const;  // l_{K+1}

    double nu_ratio() const;       // (m_K - n_K)/n_K
    double nu_hat_ratio() const;   // (m_K - n_K)/n_{K+1}
    double nu_residual() const;    // relative error against v + delta
    double nu_hat_residual() const;
};

CantorSchedule build_schedule(const mpq_class& v, const mpq_class& v_hat, const mpq_class& delta, std::size_t N,
                              std::size_t K);

// Template segments in order; Free blocks range over words of the auxiliary base beta_N.
struct TemplateSegment {
    enum class Kind { Free, Fixed };
    Kind kind = Kind::Fixed;
    std::uint64_t start = 1;  // first position, 1-based
    std::uint64_t length = 0;
    DigitWord digits;         // Fixed only
};

class CantorConstruction {
public:
    CantorConstruction(CantorSchedule schedule, const BetaValue& beta);

    const CantorSchedule& schedule() const { return schedule_; }
    const BetaValue& beta() const { return beta_; }
    const BetaValue& beta_n() const { return beta_n_; }
    const std::vector<TemplateSegment>& segments() const { return segments_; }
    std::uint64_t template_length() const;  // l_{K+1} - 1

    // Number of template words of a given length.
    mpz_class count(std::uint64_t depth) const;
    // Number of beta_N words of a length (blocks restart from state 0).
    mpz_class block_count(std::uint64_t length) const;
    // Admissible continuations inside a free block.
    mpz_class completions(std::uint64_t length, int state) const;
    const Automaton& block_automaton() const;

    // Throws NotTemplateWord.
    mpq_class mass(const DigitWord& w) const;
    // Allowed next digits after a template prefix.
    std::vector<int> next_digits(const DigitWord& w) const;
    // Smallest template word of a given length (all fillers zero).
    DigitWord representative(std::uint64_t depth) const;
    // Deepest level whose template words number at most cap.
    std::uint64_t max_depth_within(std::size_t cap) const;

private:
    CantorSchedule schedule_;
    BetaValue beta_;
    BetaValue beta_n_;
    std::vector<TemplateSegment> segments_;
    std::shared_ptr<WordCounter> counter_;
};

inline constexpr std::size_t kCantorWordCap = std::size_t{1} << 18;

std::vector<DigitWord> generate_level_words(const CantorConstruction& c, std::uint64_t depth,
                                            std::size_t cap = kCantorWordCap);

mpq_class bernoulli_measure(const CantorConstruction& c, const DigitWord& w);

// Exact check that children masses add up to the parent at every level up to depth.
struct ConservationReport {
    std::uint64_t depth = 0;
    std::size_t nodes = 0;
    std::size_t failures = 0;
    bool total_is_one = false;
};
ConservationReport check_mass_conservation(const CantorConstruction& c, std::uint64_t depth,
                                           std::size_t cap = kCantorWordCap);

// Words of a given length drawn from the measure.
std::vector<DigitWord> sample_words(const CantorConstruction& c, std::uint64_t depth, std::size_t count,
                                    std::uint64_t seed = 1);

struct LocalDimensionPoint {
    std::size_t k = 0;
    std::uint64_t level = 0;   // h_k
    double neg_log_mass = 0;   // -log_beta mu(I_{h_k})
    double neg_log_length = 0; // -log_beta |I_{h_k}|
    bool full = false;         // certified |I| = beta^-h_k
    double ratio = 0;
};

std::vector<LocalDimensionPoint> local_dimension_series(const CantorConstruction& c, std::size_t K);

// (v - v_hat - (v + d)(v_hat + d)) / ((1 + v + d)(v - v_hat)) * log_beta beta_N
double local_dimension_target(const CantorConstruction& c);

struct MeasuredCylinder {
    Cylinder cylinder;
    mpq_class mass;
    std::uint64_t level = 0;
};

// One cover scale: N(eps) pieces of length eps, both on a log scale.
struct CoverScale {
    double log_inv_eps = 0;
    double log_count = 0;
};

struct BoxCountResult {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // RMS of the regression residuals
    std::size_t scales = 0;
};

BoxCountResult boxcount_estimate(const std::vector<CoverScale>& scales);
// Groups cylinders by level; the scale of a level is its largest cylinder length.
BoxCountResult boxcount_estimate(const std::vector<MeasuredCylinder>& cover);
// Count-only cover at the milestone levels h_from..h_to (1-based).
std::vector<CoverScale> milestone_cover(const CantorConstruction& c, std::size_t from, std::size_t to);

std::vector<MeasuredCylinder> measured_cover(const CantorConstruction& c, std::uint64_t depth,
                                             std::size_t cap = kCantorWordCap);
// level,word,left,length,mass
std::string cover_csv(const std::vector<MeasuredCylinder>& cover, int digits = 30);

struct MembershipViolation {
    std::size_t sample = 0;
    std::string check;  // "asymptotic" or "uniform"
    std::uint64_t index = 0;
};

struct MembershipReport {
    std::size_t samples = 0;
    std::size_t milestones = 0;  // completed levels
    std::size_t asymptotic_checks = 0, asymptotic_violations = 0;
    std::size_t uniform_checks = 0, uniform_violations = 0;
    std::uint64_t uniform_from = 0, uniform_to = 0;
    std::vector<MembershipViolation> violations;  // first few
    bool passed() const { return asymptotic_violations == 0 && uniform_violations == 0; }
};

// Samples are template words; each point is the left endpoint of its cylinder.
// psi1 is tested at the marker 1 of every completed n_k; psi2 for every N from
// the first marker 1 to the deepest completed m_k marker 1.
MembershipReport verify_membership(const CantorConstruction& c, const std::vector<DigitWord>& samples,
                                   const SpeedFn& psi1, const SpeedFn& psi2);

}  // namespace betadyn
