#include "superquant/supermatrix.hpp"

#include "superquant/errors.hpp"

namespace superquant {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

std::optional<RationalMatrix> invert_rational(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational scale = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

SuperMatrix diagonal_block(const SuperMatrix& a, const std::vector<int>& rows) {
    std::vector<int> parity;
    for (int r : rows) parity.push_back(a.index_parity()[r]);
    SuperMatrix s(a.chart(), parity);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) s(static_cast<int>(i), static_cast<int>(j)) = a(rows[i], rows[j]);
    return s;
}

// Determinant of a matrix of mutually commuting (even) entries.
SuperFunction det_even(const std::vector<std::vector<SuperFunction>>& m, const Chart& chart) {
    const std::size_t n = m.size();
    if (n == 0) return SuperFunction::constant(chart, 1);
    if (n == 1) return m[0][0];
    SuperFunction total(chart);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<SuperFunction>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<SuperFunction> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        SuperFunction term = m[0][j] * det_even(minor, chart);
        if (j % 2) total -= term;
        else total += term;
    }
    return total;
}

std::pair<std::vector<int>, std::vector<int>> split_indices(const std::vector<int>& parity) {
    std::vector<int> even, odd;
    for (int i = 0; i < static_cast<int>(parity.size()); ++i) (parity[i] ? odd : even).push_back(i);
    return {even, odd};
}

} // namespace

SuperMatrix::SuperMatrix(Chart chart, std::vector<int> index_parity)
    : chart_(std::move(chart)), parity_(std::move(index_parity)), entries_(parity_.size() * parity_.size(), SuperFunction(chart_)) {}

SuperMatrix SuperMatrix::identity(const Chart& chart, const std::vector<int>& index_parity) {
    SuperMatrix m(chart, index_parity);
    for (int i = 0; i < m.size(); ++i) m(i, i) = SuperFunction::constant(chart, 1);
    return m;
}

std::vector<int> SuperMatrix::coordinate_parities(const ChartSpec& chart) {
    std::vector<int> p;
    for (int i = 0; i < chart.dim(); ++i) p.push_back(chart.parity(i));
    return p;
}

std::optional<int> SuperMatrix::parity() const {
    for (int candidate : {0, 1}) {
        bool ok = true;
        for (int i = 0; i < size() && ok; ++i)
            for (int j = 0; j < size() && ok; ++j) {
                const auto& e = (*this)(i, j);
                auto p = e.parity();
                ok = p && (e.is_zero() || *p == (parity_[i] + parity_[j] + candidate) % 2);
            }
        if (ok) return candidate;
    }
    return std::nullopt;
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.parity_ != b.parity_) throw InputError("supermatrix shape mismatch");
    SuperMatrix r(a.chart_, a.parity_);
    for (int i = 0; i < a.size(); ++i)
        for (int k = 0; k < a.size(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (int j = 0; j < a.size(); ++j)
                if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.parity_ != b.parity_) throw InputError("supermatrix shape mismatch");
    SuperMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
}

SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.parity_ != b.parity_) throw InputError("supermatrix shape mismatch");
    SuperMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.parity_ == b.parity_ && a.entries_ == b.entries_;
}

SuperFunction supertrace(const SuperMatrix& b) {
    auto p = b.parity();
    if (!p) throw InputError("supertrace: matrix is not parity-homogeneous");
    SuperFunction s(b.chart());
    for (int i = 0; i < b.size(); ++i) {
        int pi = b.index_parity()[i];
        if ((pi * (*p + pi)) % 2) s -= b(i, i);
        else s += b(i, i);
    }
    return s;
}

bool in_berezinian_class(const SuperMatrix& a) {
    if (a.parity() != 0) return false;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j)
            if (!a(i, j).body().is_constant()) return false;
    auto [even, odd] = split_indices(a.index_parity());
    for (const auto* block : {&even, &odd}) {
        RationalMatrix c(block->size(), std::vector<Rational>(block->size()));
        for (std::size_t i = 0; i < block->size(); ++i)
            for (std::size_t j = 0; j < block->size(); ++j) c[i][j] = a((*block)[i], (*block)[j]).constant_term();
        if (!invert_rational(c)) return false;
    }
    return true;
}

SuperMatrix inverse(const SuperMatrix& a) {
    if (!in_berezinian_class(a)) throw InputError("inverse: matrix outside the supported class (constant invertible + nilpotent)");
    const int n = a.size();
    RationalMatrix c(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i][j] = a(i, j).constant_term();
    auto cinv = invert_rational(c);
    if (!cinv) throw InputError("inverse: singular constant part");
    SuperMatrix x(a.chart(), a.index_parity());
    SuperMatrix nil(a.chart(), a.index_parity());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            x(i, j) = SuperFunction::constant(a.chart(), (*cinv)[i][j]);
            nil(i, j) = a(i, j) - SuperFunction::constant(a.chart(), c[i][j]);
        }
    // (C + N)^{-1} = sum_k (-C^{-1} N)^k C^{-1}; terminates because N is nilpotent.
    SuperMatrix step = x * nil;
    SuperMatrix neg_step(a.chart(), a.index_parity());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) neg_step(i, j) = -step(i, j);
    SuperMatrix result = x;
    SuperMatrix term = x;
    const SuperMatrix zero(a.chart(), a.index_parity());
    for (int iter = 0; iter <= 2 * a.chart()->m + 2; ++iter) {
        term = neg_step * term;
        if (term == zero) return result;
        result = result + term;
    }
    throw InputError("inverse: nilpotent series did not terminate");
}

SuperFunction invert_even(const SuperFunction& f) {
    if (f.parity() != 0) throw InputError("invert_even: argument is not even");
    if (!f.body().is_constant() || f.constant_term() == 0)
        throw PreconditionError("invert_even: body is not an invertible constant");
    const Chart& chart = f.chart();
    Rational c = f.constant_term();
    SuperFunction nu = f - SuperFunction::constant(chart, c);
    nu *= Rational(-1 / c);
    SuperFunction result = SuperFunction::constant(chart, 1);
    SuperFunction power = result;
    for (;;) {
        power = power * nu;
        if (power.is_zero()) break;
        result += power;
    }
    return result * Rational(1 / c);
}

SuperFunction berezinian(const SuperMatrix& a) {
    if (!in_berezinian_class(a))
        throw InputError("berezinian: matrix outside the supported class (even, constant invertible + nilpotent)");
    const Chart& chart = a.chart();
    auto [even, odd] = split_indices(a.index_parity());
    SuperMatrix d = diagonal_block(a, odd);
    SuperMatrix dinv = inverse(d);
    std::vector<std::vector<SuperFunction>> schur(even.size(), std::vector<SuperFunction>(even.size(), SuperFunction(chart)));
    for (std::size_t i = 0; i < even.size(); ++i)
        for (std::size_t j = 0; j < even.size(); ++j) {
            SuperFunction s = a(even[i], even[j]);
            for (std::size_t k = 0; k < odd.size(); ++k) {
                if (a(even[i], odd[k]).is_zero()) continue;
                for (std::size_t l = 0; l < odd.size(); ++l) {
                    if (dinv(static_cast<int>(k), static_cast<int>(l)).is_zero() || a(odd[l], even[j]).is_zero()) continue;
                    s -= a(even[i], odd[k]) * dinv(static_cast<int>(k), static_cast<int>(l)) * a(odd[l], even[j]);
                }
            }
            schur[i][j] = s;
        }
    std::vector<std::vector<SuperFunction>> dd(odd.size(), std::vector<SuperFunction>(odd.size(), SuperFunction(chart)));
    for (std::size_t i = 0; i < odd.size(); ++i)
        for (std::size_t j = 0; j < odd.size(); ++j) dd[i][j] = d(static_cast<int>(i), static_cast<int>(j));
    return det_even(schur, chart) * invert_even(det_even(dd, chart));
}

SuperFunction unipotent_power(const SuperFunction& f, const Rational& w) {
    if (f.parity() != 0) throw InputError("unipotent_power: argument is not even");
    if (!f.body().is_constant() || f.constant_term() <= 0)
        throw PreconditionError("power of a function whose body is not a positive constant");
    const Chart& chart = f.chart();
    Rational c = f.constant_term();
    auto root = rational_power(c, w);
    if (!root) throw PreconditionError("constant " + c.get_str() + " has no rational power " + w.get_str());
    SuperFunction nu = f - SuperFunction::constant(chart, c);
    nu *= Rational(1 / c);
    SuperFunction result = SuperFunction::constant(chart, 1);
    SuperFunction power = result;
    for (unsigned k = 1;; ++k) {
        power = power * nu;
        if (power.is_zero()) break;
        result += power * binomial(w, k);
    }
    return result * *root;
}

} // namespace superquant
