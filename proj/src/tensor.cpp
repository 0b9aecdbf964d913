#include "superquant/tensor.hpp"

#include "superquant/errors.hpp"

#include <algorithm>

namespace superquant {

namespace {

int sign_of(int parity) { return parity % 2 ? -1 : 1; }

SuperFunction signed_part(const SuperFunction& f, int parity_factor) {
    // (-1)^{parity_factor * p(f)} f, applied term by term on homogeneous parts.
    if (parity_factor % 2 == 0) return f;
    return f.even_part() - f.odd_part();
}

Rational factorial(int k) {
    Rational r = 1;
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

} // namespace

int canonicalize_word(Word& w, const std::vector<int>& parity) {
    int swaps = 0;
    for (std::size_t i = 1; i < w.size(); ++i)
        for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
            if (parity.at(w[j - 1]) && parity.at(w[j])) ++swaps;
            std::swap(w[j - 1], w[j]);
        }
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && parity.at(w[i])) return 0;
    return swaps % 2 ? -1 : 1;
}

int word_parity(const Word& w, const std::vector<int>& parity) {
    int p = 0;
    for (int i : w) p += parity.at(i);
    return p % 2;
}

std::string word_string(const Word& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(w[i]);
    }
    return out + "]";
}

int VectorField::parity(const ChartSpec& chart) const {
    if (static_cast<int>(components.size()) != chart.dim()) throw InputError("vector field needs one component per coordinate");
    std::optional<int> p;
    for (int i = 0; i < chart.dim(); ++i) {
        if (components[i].is_zero()) continue;
        auto q = components[i].parity();
        if (!q) throw InputError("vector field component is not parity-homogeneous");
        int candidate = (*q + chart.parity(i)) % 2;
        if (p && *p != candidate) throw InputError("vector field components have inconsistent parities");
        p = candidate;
    }
    return p.value_or(0);
}

SuperFunction VectorField::apply(const SuperFunction& f) const {
    SuperFunction r(f.chart());
    for (std::size_t i = 0; i < components.size(); ++i)
        if (!components[i].is_zero()) r += components[i] * partial(static_cast<int>(i), f);
    return r;
}

int OneForm::parity(const ChartSpec& chart) const {
    VectorField as_field{components};
    return as_field.parity(chart);
}

SymmetricTensor::SymmetricTensor(Chart chart, std::vector<int> index_parity, Rational weight, int degree)
    : chart_(std::move(chart)), parity_(std::move(index_parity)), weight_(std::move(weight)), degree_(degree) {
    if (degree < 0) throw InputError("negative tensor degree");
}

SymmetricTensor SymmetricTensor::symbol(const Chart& chart, const Rational& weight, int degree) {
    std::vector<int> p;
    for (int i = 0; i < chart->dim(); ++i) p.push_back(chart->parity(i));
    return SymmetricTensor(chart, p, weight, degree);
}

void SymmetricTensor::add_term(Word w, const SuperFunction& coeff) {
    if (static_cast<int>(w.size()) != degree_) throw InputError("tensor term has the wrong degree");
    for (int i : w)
        if (i < 0 || i >= static_cast<int>(parity_.size())) throw InputError("tensor index out of range");
    if (coeff.is_zero()) return;
    int s = canonicalize_word(w, parity_);
    if (s == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, s > 0 ? coeff : -coeff);
    if (!inserted) {
        if (s > 0) it->second += coeff;
        else it->second -= coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SuperFunction SymmetricTensor::coefficient(const Word& canonical) const {
    auto it = terms_.find(canonical);
    return it == terms_.end() ? SuperFunction(chart_) : it->second;
}

std::optional<int> SymmetricTensor::parity() const {
    std::optional<int> p;
    for (const auto& [w, c] : terms_) {
        auto q = c.parity();
        if (!q) return std::nullopt;
        int t = (*q + word_parity(w, parity_)) % 2;
        if (p && *p != t) return std::nullopt;
        p = t;
    }
    return p.value_or(0);
}

void SymmetricTensor::check_compatible(const SymmetricTensor& other) const {
    if (parity_ != other.parity_ || degree_ != other.degree_)
        throw InputError("tensors of different frames or degrees cannot be added");
    if (weight_ != other.weight_) throw InputError("tensors of different weights cannot be added");
    if (chart_ && other.chart_ && !same_chart(chart_, other.chart_)) throw InputError("chart mismatch between tensors");
}

SymmetricTensor& SymmetricTensor::operator+=(const SymmetricTensor& other) {
    check_compatible(other);
    if (!chart_) chart_ = other.chart_;
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

SymmetricTensor& SymmetricTensor::operator-=(const SymmetricTensor& other) {
    check_compatible(other);
    if (!chart_) chart_ = other.chart_;
    for (const auto& [w, c] : other.terms_) add_term(w, -c);
    return *this;
}

SymmetricTensor& SymmetricTensor::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_) coeff *= c;
    return *this;
}

SymmetricTensor operator*(const SuperFunction& g, const SymmetricTensor& s) {
    SymmetricTensor r(s.chart_, s.parity_, s.weight_, s.degree_);
    for (const auto& [w, c] : s.terms_) r.add_term(w, g * c);
    return r;
}

bool operator==(const SymmetricTensor& a, const SymmetricTensor& b) {
    return a.parity_ == b.parity_ && a.degree_ == b.degree_ && a.weight_ == b.weight_ && a.terms_ == b.terms_;
}

std::string SymmetricTensor::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")" + word_string(w);
    }
    return out;
}

SymmetricTensor vee(const SymmetricTensor& a, const SymmetricTensor& b) {
    if (a.index_parity() != b.index_parity()) throw InputError("vee: tensors over different frames");
    if (a.chart() && b.chart() && !same_chart(a.chart(), b.chart())) throw InputError("vee: chart mismatch");
    SymmetricTensor r(a.chart() ? a.chart() : b.chart(), a.index_parity(), a.weight() + b.weight(), a.degree() + b.degree());
    for (const auto& [u, phi] : a.terms()) {
        int pu = word_parity(u, a.index_parity());
        for (const auto& [v, psi] : b.terms()) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            r.add_term(w, phi * signed_part(psi, pu));
        }
    }
    return r;
}

SymmetricTensor contract_index(int j, const SymmetricTensor& s) {
    if (s.degree() == 0) throw InputError("contraction of a degree-0 tensor");
    const auto& parity = s.index_parity();
    SymmetricTensor r(s.chart(), parity, s.weight(), s.degree() - 1);
    const int pj = parity.at(j);
    for (const auto& [w, phi] : s.terms()) {
        auto pos = std::find(w.begin(), w.end(), j);
        if (pos == w.end()) continue;
        Word rest = w;
        rest.erase(rest.begin() + (pos - w.begin()));
        SuperFunction coeff;
        if (pj) {
            int odd_before = 0;
            for (auto it = w.begin(); it != pos; ++it) odd_before += parity[*it];
            coeff = signed_part(phi, 1);
            if (odd_before % 2) coeff = -coeff;
        } else {
            coeff = phi * Rational(static_cast<int>(std::count(w.begin(), w.end(), j)));
        }
        r.add_term(rest, coeff);
    }
    return r;
}

SymmetricTensor interior(const OneForm& alpha, const SymmetricTensor& s) {
    if (static_cast<int>(alpha.components.size()) != static_cast<int>(s.index_parity().size()))
        throw InputError("interior: one-form has the wrong number of components");
    if (s.degree() == 0) throw InputError("interior: degree underflow");
    SymmetricTensor r(s.chart(), s.index_parity(), s.weight(), s.degree() - 1);
    for (std::size_t i = 0; i < alpha.components.size(); ++i)
        if (!alpha.components[i].is_zero()) r += alpha.components[i] * contract_index(static_cast<int>(i), s);
    return r;
}

CovTensor::CovTensor(Chart chart, std::vector<int> index_parity, Rational weight, int degree)
    : chart_(std::move(chart)), parity_(std::move(index_parity)), weight_(std::move(weight)), degree_(degree) {}

void CovTensor::set_value(Word w, const JetFunction& value) {
    if (static_cast<int>(w.size()) != degree_) throw InputError("covariant tensor value has the wrong degree");
    int s = canonicalize_word(w, parity_);
    if (s == 0 || value.is_zero()) {
        values_.erase(w);
        return;
    }
    values_[w] = s > 0 ? value : -value;
}

JetFunction CovTensor::value(Word w) const {
    int s = canonicalize_word(w, parity_);
    if (s == 0) return JetFunction(chart_);
    auto it = values_.find(w);
    if (it == values_.end()) return JetFunction(chart_);
    return s > 0 ? it->second : -it->second;
}

CovTensor CovTensor::evaluate(const SuperFunction& f) const {
    CovTensor r(chart_, parity_, weight_, degree_);
    for (const auto& [w, v] : values_) r.set_value(w, JetFunction(v.evaluate(f)));
    return r;
}

bool operator==(const CovTensor& a, const CovTensor& b) {
    return a.parity_ == b.parity_ && a.degree_ == b.degree_ && a.weight_ == b.weight_ && a.values_ == b.values_;
}

SymmetricTensor interior(const CovTensor& t, const SymmetricTensor& s) {
    if (t.index_parity() != s.index_parity()) throw InputError("interior: tensors over different frames");
    if (t.degree() > s.degree()) throw InputError("interior: degree underflow");
    const int l = t.degree();
    const int size = static_cast<int>(s.index_parity().size());
    SymmetricTensor r(s.chart(), s.index_parity(), s.weight() + t.weight(), s.degree() - l);
    Word a(l, 0);
    for (;;) {
        JetFunction v = t.value(a);
        if (!v.linear().empty()) throw InputError("interior: covariant tensor carries jet generators");
        if (!v.free_part().is_zero()) {
            int koszul = 0;
            for (int i = 0; i < l; ++i)
                for (int j = i + 1; j < l; ++j) koszul += s.index_parity()[a[i]] * s.index_parity()[a[j]];
            if (koszul % 2) v = -v;
            SymmetricTensor c = s;
            for (int pos = l - 1; pos >= 0; --pos) c = contract_index(a[pos], c);
            SymmetricTensor term = v.free_part() * c;
            for (const auto& [w, coeff] : term.terms()) r.add_term(w, coeff);
        }
        int pos = l - 1;
        while (pos >= 0 && ++a[pos] == size) a[pos--] = 0;
        if (pos < 0) break;
    }
    r *= Rational(1) / factorial(l);
    return r;
}

JetFunction pair(const SymmetricTensor& s, const CovTensor& t) {
    if (s.index_parity() != t.index_parity() || s.degree() != t.degree())
        throw InputError("pair: degree or frame mismatch");
    JetFunction r(s.chart() ? s.chart() : t.chart());
    for (const auto& [w, phi] : s.terms()) {
        auto it = t.values().find(w);
        if (it != t.values().end()) r += phi * it->second;
    }
    return r;
}

} // namespace superquant
