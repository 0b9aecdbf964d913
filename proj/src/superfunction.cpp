#include "superquant/superfunction.hpp"

#include "superquant/errors.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>
#include <unordered_map>

namespace superquant {

namespace {

std::optional<unsigned> degree_cap() {
    static const std::optional<unsigned> cap = []() -> std::optional<unsigned> {
        const char* env = std::getenv("SUPERQUANT_MAX_DEGREE");
        if (env == nullptr || *env == '\0') return std::nullopt;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || v < 0) return std::nullopt;
        return static_cast<unsigned>(v);
    }();
    return cap;
}

void check_same(const Chart& a, const Chart& b) {
    if (a && b && !same_chart(a, b)) throw InputError("chart mismatch between superfunctions");
}

std::string monomial_string(const ChartSpec& chart, const Exponents& e, OddMask mask) {
    std::string out;
    auto append = [&](const std::string& factor) {
        if (!out.empty()) out += '*';
        out += factor;
    };
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        const std::string& name = static_cast<int>(v) < chart.n ? chart.names[v] : chart.params[v - chart.n];
        append(e[v] == 1 ? name : name + "^" + std::to_string(e[v]));
    }
    for (int j = 0; j < chart.m; ++j)
        if (mask & (OddMask{1} << j)) append(chart.names[chart.n + j]);
    return out;
}

} // namespace

int koszul_sign(OddMask a, OddMask b) {
    int inversions = 0;
    while (b) {
        int j = std::countr_zero(b);
        b &= b - 1;
        inversions += std::popcount(j + 1 >= 32 ? OddMask{0} : a >> (j + 1));
    }
    return inversions % 2 ? -1 : 1;
}

SuperFunction SuperFunction::constant(const Chart& chart, const Rational& c) {
    SuperFunction f(chart);
    f.add_term(0, Polynomial::constant(chart->num_vars(), c));
    return f;
}

SuperFunction SuperFunction::coordinate(const Chart& chart, int index) {
    if (index < 0 || index >= chart->dim()) throw InputError("coordinate index out of range");
    SuperFunction f(chart);
    if (index < chart->n)
        f.add_term(0, Polynomial::variable(chart->num_vars(), index));
    else
        f.add_term(OddMask{1} << (index - chart->n), Polynomial::constant(chart->num_vars(), 1));
    return f;
}

SuperFunction SuperFunction::param(const Chart& chart, int index) {
    if (index < 0 || index >= static_cast<int>(chart->params.size())) throw InputError("parameter index out of range");
    SuperFunction f(chart);
    f.add_term(0, Polynomial::variable(chart->num_vars(), chart->n + index));
    return f;
}

void SuperFunction::add_term(OddMask mask, const Polynomial& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mask, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::optional<int> SuperFunction::parity() const {
    std::optional<int> p;
    for (const auto& [mask, poly] : terms_) {
        int q = std::popcount(mask) % 2;
        if (p && *p != q) return std::nullopt;
        p = q;
    }
    return p.value_or(0);
}

SuperFunction SuperFunction::part(int parity) const {
    SuperFunction r(chart_);
    for (const auto& [mask, poly] : terms_)
        if (std::popcount(mask) % 2 == parity) r.terms_.emplace_hint(r.terms_.end(), mask, poly);
    return r;
}

Polynomial SuperFunction::body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Polynomial{} : it->second;
}

bool SuperFunction::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_constant();
}

Rational SuperFunction::constant_term() const { return body().constant_term(); }

bool SuperFunction::is_nilpotent() const { return !terms_.contains(0); }

unsigned SuperFunction::degree() const {
    unsigned d = 0;
    for (const auto& [mask, poly] : terms_) d = std::max(d, poly.degree());
    return d;
}

std::string SuperFunction::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mask, poly] : terms_) {
        for (const auto& [e, c] : poly.terms()) {
            std::string mono = monomial_string(*chart_, e, mask);
            Rational a = c;
            if (first) {
                if (a < 0) out << '-';
            } else {
                out << (a < 0 ? " - " : " + ");
            }
            a = abs(a);
            if (mono.empty())
                out << a.get_str();
            else if (a == 1)
                out << mono;
            else
                out << a.get_str() << '*' << mono;
            first = false;
        }
    }
    return out.str();
}

void SuperFunction::adopt(const Chart& other) {
    check_same(chart_, other);
    if (!chart_) chart_ = other;
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& other) {
    adopt(other.chart_);
    for (const auto& [mask, poly] : other.terms_) add_term(mask, poly);
    return *this;
}

SuperFunction& SuperFunction::operator-=(const SuperFunction& other) {
    adopt(other.chart_);
    for (const auto& [mask, poly] : other.terms_) add_term(mask, -poly);
    return *this;
}

SuperFunction& SuperFunction::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [mask, poly] : terms_) poly *= c;
    return *this;
}

SuperFunction SuperFunction::operator-() const {
    SuperFunction r = *this;
    for (auto& [mask, poly] : r.terms_) poly = -poly;
    return r;
}

SuperFunction multiply(const SuperFunction& a, const SuperFunction& b, bool* odd_square) {
    check_same(a.chart(), b.chart());
    SuperFunction r(a.chart() ? a.chart() : b.chart());
    for (const auto& [ma, pa] : a.terms()) {
        for (const auto& [mb, pb] : b.terms()) {
            if (ma & mb) {
                if (odd_square) *odd_square = true;
                continue;
            }
            Polynomial p = pa * pb;
            if (koszul_sign(ma, mb) < 0) p = -p;
            r.add_term(ma | mb, p);
        }
    }
    if (auto cap = degree_cap(); cap && r.degree() > *cap)
        throw ResourceError("polynomial degree " + std::to_string(r.degree()) + " exceeds SUPERQUANT_MAX_DEGREE=" +
                            std::to_string(*cap));
    return r;
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) { return multiply(a, b); }

bool operator==(const SuperFunction& a, const SuperFunction& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    if (a.chart_ && b.chart_ && !same_chart(a.chart_, b.chart_)) return false;
    return a.terms_ == b.terms_;
}

SuperFunction partial(int index, const SuperFunction& f) {
    if (!f.chart()) return f;
    const ChartSpec& chart = *f.chart();
    if (index < 0 || index >= chart.dim()) throw InputError("partial: coordinate index out of range");
    SuperFunction r(f.chart());
    if (index < chart.n) {
        for (const auto& [mask, poly] : f.terms()) r.add_term(mask, poly.derivative(index));
        return r;
    }
    const int j = index - chart.n;
    const OddMask bit = OddMask{1} << j;
    for (const auto& [mask, poly] : f.terms()) {
        if (!(mask & bit)) continue;
        int left = std::popcount(mask & (bit - 1));
        r.add_term(mask & ~bit, left % 2 ? -poly : poly);
    }
    return r;
}

SuperFunction substitute(const SuperFunction& f, std::span<const SuperFunction> images) {
    if (!f.chart()) return f;
    const ChartSpec& source = *f.chart();
    if (static_cast<int>(images.size()) != source.dim()) throw InputError("substitute: need one image per coordinate");
    Chart target;
    for (const auto& g : images)
        if (g.chart()) {
            check_same(target, g.chart());
            if (!target) target = g.chart();
        }
    if (!target) target = f.chart();
    if (target->params != source.params) throw InputError("substitute: source and target parameters differ");
    for (int i = 0; i < source.dim(); ++i) {
        auto p = images[i].parity();
        if (!p || (*p != source.parity(i) && !images[i].is_zero()))
            throw InputError("substitute: image of " + source.names[i] + " has the wrong parity");
    }
    // Memoized powers of the even images; parameters map to themselves.
    std::vector<SuperFunction> base;
    for (int v = 0; v < source.num_vars(); ++v)
        base.push_back(v < source.n ? images[v] : SuperFunction::param(target, v - source.n));
    std::vector<std::vector<SuperFunction>> powers(base.size());
    auto power = [&](std::size_t v, unsigned e) -> const SuperFunction& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(SuperFunction::constant(target, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * base[v]);
        return cache[e];
    };
    SuperFunction result(target);
    for (const auto& [mask, poly] : f.terms()) {
        SuperFunction odd = SuperFunction::constant(target, 1);
        for (int j = 0; j < source.m; ++j)
            if (mask & (OddMask{1} << j)) odd = odd * images[source.n + j];
        if (odd.is_zero()) continue;
        SuperFunction even(target);
        for (const auto& [e, c] : poly.terms()) {
            SuperFunction term = SuperFunction::constant(target, c);
            for (std::size_t v = 0; v < e.size(); ++v)
                if (e[v]) term = term * power(v, e[v]);
            even += term;
        }
        result += even * odd;
    }
    return result;
}

void require_parity(const SuperFunction& f, int parity, const std::string& what) {
    auto p = f.parity();
    if (!p) throw InputError(what + " is not parity-homogeneous");
    if (!f.is_zero() && *p != parity)
        throw InputError(what + " has parity " + std::to_string(*p) + ", expected " + std::to_string(parity));
}

} // namespace superquant
