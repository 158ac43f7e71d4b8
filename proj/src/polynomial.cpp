#include "betadyn/polynomial.hpp"

#include "betadyn/error.hpp"

#include <algorithm>
#include <sstream>

namespace betadyn {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

void Polynomial::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    for (auto& c : coeffs_) c.canonicalize();
}

Polynomial Polynomial::constant(const mpq_class& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, const mpq_class& c) {
    std::vector<mpq_class> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const mpq_class& r) { return Polynomial({-r, 1}); }

mpq_class Polynomial::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

mpq_class Polynomial::operator()(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int Polynomial::sign_at(const mpq_class& x) const { return sgn((*this)(x)); }

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<mpq_class> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return {};
    std::vector<mpq_class> v = coeffs_;
    mpq_class lead = v.back();
    for (auto& c : v) c /= lead;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
    std::vector<mpq_class> v = coeffs_;
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<mpq_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
}

std::string Polynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& c = coeffs_[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) continue;
        mpq_class mag = abs(c);
        out << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool unit = mag == 1 && i > 0;
        if (!unit) out << mag.get_str();
        if (i > 0) out << (unit ? "" : "*") << "z";
        if (i > 1) out << "^" << i;
        first = false;
    }
    return out.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) raise(ErrorKind::DomainError, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<mpq_class> rem = a.coefficients();
    std::vector<mpq_class> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const auto& bc = b.coefficients();
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
        mpq_class c = rem[static_cast<std::size_t>(k)] / b.leading();
        quot[static_cast<std::size_t>(k - db)] = c;
        if (sgn(c) == 0) continue;
        for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k - db + i)] -= c * bc[static_cast<std::size_t>(i)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = x % y;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
    if (p.degree() <= 0) return p.monic();
    Polynomial g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

namespace {

int variations(const std::vector<Polynomial>& chain, const mpq_class& x) {
    int count = 0, last = 0;
    for (const auto& q : chain) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

int count_roots(const Polynomial& p, const mpq_class& a, const mpq_class& b) {
    if (p.degree() <= 0) return 0;
    Polynomial sf = squarefree_part(p);
    std::vector<Polynomial> chain{sf, sf.derivative()};
    while (chain.back().degree() > 0) {
        Polynomial r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return variations(chain, a) - variations(chain, b);
}

}  // namespace betadyn
