#include "superquant/rational.hpp"

#include "superquant/errors.hpp"

#include <cctype>

namespace superquant {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long degree) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), degree) == 0) return std::nullopt;
    return root;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw InputError("invalid rational literal '" + std::string(text) + "'");
    Rational q{mpz_class{std::string(num)}, mpz_class{std::string(den)}};
    if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> rational_power(const Rational& base, const Rational& exponent) {
    if (is_integer(exponent) && exponent >= 0) {
        Rational r = 1;
        for (mpz_class e = exponent.get_num(); e > 0; --e) r *= base;
        return r;
    }
    if (base == 0) return std::nullopt;
    if (base < 0) return std::nullopt;
    mpz_class a = exponent.get_num();
    const mpz_class& b = exponent.get_den();
    if (!b.fits_ulong_p() || !a.fits_slong_p()) return std::nullopt;
    Rational c = a < 0 ? Rational(1 / base) : base;
    unsigned long power = static_cast<unsigned long>(a < 0 ? -a.get_si() : a.get_si());
    auto num = exact_root(c.get_num(), b.get_ui());
    auto den = exact_root(c.get_den(), b.get_ui());
    if (!num || !den) return std::nullopt;
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num->get_mpz_t(), power);
    mpz_pow_ui(d.get_mpz_t(), den->get_mpz_t(), power);
    Rational r{n, d};
    r.canonicalize();
    return r;
}

Rational binomial(const Rational& w, unsigned k) {
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (w - i);
        r /= (i + 1);
    }
    return r;
}

} // namespace superquant
