#include "superquant/jet.hpp"

#include "superquant/errors.hpp"

#include <numeric>

namespace superquant {

int order(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

int odd_length(const ChartSpec& chart, const MultiIndex& alpha) {
    int count = 0;
    for (int i = chart.n; i < chart.dim(); ++i) count += alpha[i];
    return count;
}

SuperFunction apply_multi_partial(const MultiIndex& alpha, const SuperFunction& f) {
    SuperFunction r = f;
    for (int i = static_cast<int>(alpha.size()) - 1; i >= 0; --i)
        for (int t = 0; t < alpha[i]; ++t) r = partial(i, r);
    return r;
}

JetFunction::JetFunction(const SuperFunction& g) : chart_(g.chart()), free_(g) {}

JetFunction JetFunction::generator(const Chart& chart, const MultiIndex& alpha) {
    if (static_cast<int>(alpha.size()) != chart->dim()) throw InputError("multi-index has the wrong length");
    for (int i = chart->n; i < chart->dim(); ++i)
        if (alpha[i] > 1) throw InputError("odd entries of a multi-index must be 0 or 1");
    JetFunction j(chart);
    j.linear_.emplace(alpha, SuperFunction::constant(chart, 1));
    return j;
}

void JetFunction::adopt(const Chart& other) {
    if (chart_ && other && !same_chart(chart_, other)) throw InputError("chart mismatch between jet expressions");
    if (!chart_) chart_ = other;
}

void JetFunction::add_linear(const MultiIndex& alpha, const SuperFunction& c) {
    if (c.is_zero()) return;
    adopt(c.chart());
    auto [it, inserted] = linear_.try_emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) linear_.erase(it);
    }
}

SuperFunction JetFunction::evaluate(const SuperFunction& f) const {
    SuperFunction r = free_;
    for (const auto& [alpha, c] : linear_) r += c * apply_multi_partial(alpha, f);
    return r;
}

JetFunction& JetFunction::operator+=(const JetFunction& other) {
    adopt(other.chart_);
    free_ += other.free_;
    for (const auto& [alpha, c] : other.linear_) add_linear(alpha, c);
    return *this;
}

JetFunction& JetFunction::operator-=(const JetFunction& other) {
    adopt(other.chart_);
    free_ -= other.free_;
    for (const auto& [alpha, c] : other.linear_) add_linear(alpha, -c);
    return *this;
}

JetFunction& JetFunction::operator*=(const Rational& c) {
    if (c == 0) {
        free_ = SuperFunction(chart_);
        linear_.clear();
        return *this;
    }
    free_ *= c;
    for (auto& [alpha, coeff] : linear_) coeff *= c;
    return *this;
}

JetFunction JetFunction::operator-() const {
    JetFunction r = *this;
    r *= Rational(-1);
    return r;
}

JetFunction operator*(const SuperFunction& g, const JetFunction& a) {
    JetFunction r(a.chart_ ? a.chart_ : g.chart());
    r.adopt(g.chart());
    r.free_ = g * a.free_;
    for (const auto& [alpha, c] : a.linear_) r.add_linear(alpha, g * c);
    return r;
}

bool operator==(const JetFunction& a, const JetFunction& b) { return a.free_ == b.free_ && a.linear_ == b.linear_; }

std::string multi_index_string(const ChartSpec& chart, const MultiIndex& alpha) {
    std::string out;
    for (int i = 0; i < chart.dim(); ++i)
        for (int t = 0; t < alpha[i]; ++t) out += "d" + chart.names[i];
    return out.empty() ? "1" : out;
}

std::string JetFunction::to_string() const {
    std::string out;
    if (!free_.is_zero()) out = free_.to_string();
    for (const auto& [alpha, c] : linear_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")*u[" + multi_index_string(*chart_, alpha) + "]";
    }
    return out.empty() ? "0" : out;
}

JetFunction partial(int index, const JetFunction& f) {
    JetFunction r(f.chart());
    if (!f.chart()) return r;
    const ChartSpec& chart = *f.chart();
    const int pi = chart.parity(index);
    r += JetFunction(partial(index, f.free_part()));
    for (const auto& [alpha, c] : f.linear()) {
        r.add_linear(alpha, partial(index, c));
        if (pi == 1 && alpha[index] == 1) continue;
        MultiIndex beta = alpha;
        ++beta[index];
        // Moving d_index past the odd partials of smaller index already in alpha.
        int passes = 0;
        if (pi == 1)
            for (int j = chart.n; j < index; ++j) passes += alpha[j];
        for (int p : {0, 1}) {
            SuperFunction part = c.part(p);
            if (part.is_zero()) continue;
            int s = (pi * p + passes) % 2;
            r.add_linear(beta, s ? -part : part);
        }
    }
    return r;
}

} // namespace superquant
