#include "superquant/polynomial.hpp"

#include "superquant/errors.hpp"

#include <algorithm>
#include <numeric>

namespace superquant {

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Exponents(num_vars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t var) {
    Exponents e(num_vars, 0);
    e.at(var) = 1;
    Polynomial p;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Rational Polynomial::constant_term() const {
    for (const auto& [e, c] : terms_)
        if (std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; })) return c;
    return 0;
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r;
    for (const auto& [e, c] : terms_) {
        if (e.at(var) == 0) continue;
        Exponents f = e;
        --f[var];
        // Lowering one fixed exponent is injective, so keys never collide.
        r.terms_.emplace(std::move(f), c * e[var]);
    }
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, v] : r.terms_) v = -v;
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    if (a.is_zero() || b.is_zero()) return r;
    Exponents sum;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            if (ea.size() != eb.size()) throw InputError("polynomial variable count mismatch");
            sum.resize(ea.size());
            for (std::size_t i = 0; i < ea.size(); ++i) {
                unsigned s = unsigned(ea[i]) + unsigned(eb[i]);
                if (s > 0xFFFFu) throw ResourceError("polynomial exponent overflow");
                sum[i] = static_cast<std::uint16_t>(s);
            }
            r.add_term(sum, ca * cb);
        }
    }
    return r;
}

} // namespace superquant
