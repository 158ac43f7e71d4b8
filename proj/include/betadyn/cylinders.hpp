#pragma once

#include "betadyn/precision.hpp"
#include "betadyn/symbolic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace betadyn {

// Basic interval I_n(w) = [left, right).
struct Cylinder {
    DigitWord word;
    RealScalar left;
    RealScalar right;

    std::size_t order() const { return word.size(); }
    RealScalar length() const { return right - left; }
};

// Next word of the same length in lexicographic order, if any.
std::optional<DigitWord> lexicographic_successor(const DigitWord& w, const Automaton& automaton);

Cylinder cylinder_interval(const DigitWord& w, const BetaValue& beta);
bool is_full(const DigitWord& w, const BetaValue& beta);
bool is_full(const Cylinder& c, const BetaValue& beta);
std::vector<Cylinder> partition_level(const BetaValue& beta, std::size_t n, std::size_t cap = kEnumerationCap);
Cylinder locate_cylinder(const RealScalar& x, const BetaValue& beta, std::size_t n);
Cylinder smallest_full_extension(const DigitWord& w, const BetaValue& beta, std::size_t max_extra = 16);

// word,left,right,length,is_full
std::string cylinders_csv(const std::vector<Cylinder>& cylinders, const BetaValue& beta, int digits = 30);

}  // namespace betadyn
