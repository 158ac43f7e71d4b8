#include "betadyn/cylinders.hpp"

#include "betadyn/error.hpp"

#include <sstream>

namespace betadyn {

namespace {

void require_admissible(const DigitWord& w, const BetaValue& beta) {
    if (!is_admissible(w, beta)) raise(ErrorKind::NotAdmissible, "word " + w.to_string() + " is not admissible");
}

Cylinder build(const DigitWord& w, const BetaValue& beta, const Automaton& automaton) {
    Cylinder c{w, RealScalar::from_digits(beta, w.view()), RealScalar(1)};
    if (auto next = lexicographic_successor(w, automaton)) c.right = RealScalar::from_digits(beta, next->view());
    return c;
}

}  // namespace

std::optional<DigitWord> lexicographic_successor(const DigitWord& w, const Automaton& automaton) {
    std::vector<int> states{0};
    for (int d : w.digits()) {
        int s = automaton.step(states.back(), d);
        if (s < 0) raise(ErrorKind::NotAdmissible, "word " + w.to_string() + " is not admissible");
        states.push_back(s);
    }
    for (std::size_t i = w.size(); i-- > 0;) {
        for (int d = w[i] + 1; d <= automaton.digit_bound(); ++d) {
            if (automaton.step(states[i], d) < 0) continue;
            // Zeros are always admissible, so the smallest completion pads with 0.
            std::vector<int> next(w.digits().begin(), w.digits().begin() + static_cast<long>(i));
            next.push_back(d);
            next.resize(w.size(), 0);
            return DigitWord(std::move(next));
        }
    }
    return std::nullopt;
}

Cylinder cylinder_interval(const DigitWord& w, const BetaValue& beta) {
    require_admissible(w, beta);
    return build(w, beta, Automaton::for_beta(beta, w.size()));
}

bool is_full(const Cylinder& c, const BetaValue& beta) {
    return sign(c.length() - RealScalar::beta_power(beta, -static_cast<long>(c.order()))) == 0;
}

bool is_full(const DigitWord& w, const BetaValue& beta) { return is_full(cylinder_interval(w, beta), beta); }

std::vector<Cylinder> partition_level(const BetaValue& beta, std::size_t n, std::size_t cap) {
    auto words = enumerate_admissible(beta, n, cap);
    std::vector<Cylinder> out;
    out.reserve(words.size());
    for (auto& w : words) {
        RealScalar left = RealScalar::from_digits(beta, w.view());
        out.push_back({std::move(w), std::move(left), RealScalar(1)});
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i].right = out[i + 1].left;
    return out;
}

Cylinder locate_cylinder(const RealScalar& x, const BetaValue& beta, std::size_t n) {
    return cylinder_interval(greedy_expand(x, beta, n), beta);
}

Cylinder smallest_full_extension(const DigitWord& w, const BetaValue& beta, std::size_t max_extra) {
    require_admissible(w, beta);
    Automaton automaton = Automaton::for_beta(beta, w.size() + max_extra);
    for (std::size_t m = 0; m <= max_extra; ++m) {
        Cylinder found;
        bool hit = false;
        DigitWord ext = w;
        auto dfs = [&](auto&& self, int state, std::size_t left) -> void {
            if (hit) return;
            if (left == 0) {
                Cylinder c = build(ext, beta, automaton);
                if (is_full(c, beta)) {
                    found = std::move(c);
                    hit = true;
                }
                return;
            }
            for (int d = 0; d <= automaton.digit_bound() && !hit; ++d) {
                int s = automaton.step(state, d);
                if (s < 0) continue;
                ext.push_back(d);
                self(self, s, left - 1);
                ext.pop_back();
            }
        };
        dfs(dfs, *automaton.run(w.view()), m);
        if (hit) return found;
    }
    raise(ErrorKind::NotFoundWithinBudget, "no full extension of " + w.to_string() + " within " +
                                               std::to_string(max_extra) + " extra digits");
}

std::string cylinders_csv(const std::vector<Cylinder>& cylinders, const BetaValue& beta, int digits) {
    std::ostringstream out;
    out << "word,left,right,length,is_full\n";
    for (const auto& c : cylinders) {
        out << c.word.to_string() << ',' << c.left.to_decimal(digits) << ',' << c.right.to_decimal(digits) << ','
            << c.length().to_decimal(digits) << ',' << (is_full(c, beta) ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace betadyn
