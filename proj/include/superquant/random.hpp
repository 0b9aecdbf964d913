#pragma once

#include "superquant/change.hpp"
#include "superquant/connection.hpp"
#include "superquant/errors.hpp"
#include "superquant/jet.hpp"
#include "superquant/superfunction.hpp"
#include "superquant/tensor.hpp"

#include <random>

namespace superquant {

/// Seeded generator of random test objects (functions, tensors, connections,
/// coordinate changes) used by the randomized property suites.
class RandomGenerator {
  public:
    explicit RandomGenerator(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }

    Rational small_rational(int bound = 3) {
        int num = uniform(-bound, bound);
        int den = uniform(1, 2);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    /// k/2 for k uniform in [lo, hi].
    Rational half_integer(int lo, int hi) {
        Rational q(uniform(lo, hi), 2);
        q.canonicalize();
        return q;
    }

    Rational nonzero_rational(int bound = 3) {
        Rational q = 0;
        while (q == 0) q = small_rational(bound);
        return q;
    }

    /// Random homogeneous function of the given parity with at most `terms`
    /// terms and even-part degree at most `max_degree`.
    SuperFunction function(const Chart& chart, int parity, int terms = 3, int max_degree = 2) {
        SuperFunction f(chart);
        std::vector<OddMask> masks;
        for (OddMask mask = 0; mask < (OddMask{1} << chart->m); ++mask)
            if (std::popcount(mask) % 2 == parity) masks.push_back(mask);
        if (masks.empty()) return f;
        int count = uniform(0, terms);
        for (int t = 0; t < count; ++t) {
            OddMask mask = masks[uniform(0, static_cast<int>(masks.size()) - 1)];
            Exponents e(chart->num_vars(), 0);
            int degree = uniform(0, max_degree);
            for (int d = 0; d < degree && chart->n > 0; ++d) ++e[uniform(0, chart->n - 1)];
            Polynomial p;
            p.add_term(e, small_rational());
            f.add_term(mask, p);
        }
        return f;
    }

    /// Random homogeneous symmetric tensor of total parity `parity`.
    SymmetricTensor tensor(const Chart& chart, const std::vector<int>& index_parity, const Rational& weight, int degree,
                           int parity, int terms = 3, int max_degree = 2) {
        SymmetricTensor s(chart, index_parity, weight, degree);
        int count = uniform(1, terms);
        for (int t = 0; t < count; ++t) {
            Word w;
            for (int d = 0; d < degree; ++d) w.push_back(uniform(0, static_cast<int>(index_parity.size()) - 1));
            int pw = word_parity(w, index_parity);
            s.add_term(w, function(chart, (parity + pw) % 2, 2, max_degree));
        }
        return s;
    }

    SymmetricTensor symbol(const Chart& chart, const Rational& weight, int degree, int parity, int terms = 3,
                           int max_degree = 2) {
        std::vector<int> p;
        for (int i = 0; i < chart->dim(); ++i) p.push_back(chart->parity(i));
        return tensor(chart, p, weight, degree, parity, terms, max_degree);
    }

    SymmetricTensor nonzero_symbol(const Chart& chart, const Rational& weight, int degree, int parity, int terms = 3,
                                   int max_degree = 2) {
        if (parity == 1 && chart->m == 0) throw InputError("no odd symbols without odd coordinates");
        for (;;) {
            auto s = symbol(chart, weight, degree, parity, terms, max_degree);
            if (!s.is_zero()) return s;
        }
    }

    OneForm one_form(const Chart& chart, int parity, int max_degree = 2) {
        OneForm a;
        for (int i = 0; i < chart->dim(); ++i) a.components.push_back(function(chart, (parity + chart->parity(i)) % 2, 2, max_degree));
        return a;
    }

    VectorField vector_field(const Chart& chart, int parity, int max_degree = 2) {
        return VectorField{one_form(chart, parity, max_degree).components};
    }

    JetFunction jet(const Chart& chart, int max_order = 2, int terms = 3) {
        JetFunction j(chart);
        j += JetFunction(function(chart, uniform(0, 1)));
        int count = uniform(0, terms);
        for (int t = 0; t < count; ++t) {
            MultiIndex alpha(chart->dim(), 0);
            int ord = uniform(0, max_order);
            for (int d = 0; d < ord; ++d) {
                int i = uniform(0, chart->dim() - 1);
                if (chart->parity(i) == 0 || alpha[i] == 0) ++alpha[i];
            }
            j.add_linear(alpha, function(chart, uniform(0, 1)));
        }
        return j;
    }

    /// Random torsion-free connection with `entries` independent nonzero entries.
    SuperConnection connection(const Chart& chart, int entries = 4, int max_degree = 1) {
        std::vector<SuperConnection::Entry> list;
        const int n = chart->dim();
        for (int t = 0; t < entries; ++t) {
            int i = uniform(0, n - 1), j = uniform(i, n - 1), k = uniform(0, n - 1);
            if (i == j && chart->parity(i)) continue;
            bool seen = false;
            for (const auto& e : list) seen = seen || (e.i == i && e.j == j && e.k == k);
            if (seen) continue;
            int p = (chart->parity(i) + chart->parity(j) + chart->parity(k)) % 2;
            list.push_back({i, j, k, function(chart, p, 2, max_degree)});
        }
        return SuperConnection::from_entries(chart, list);
    }


    /// Random affine change xbar = A x + b with block-diagonal A whose
    /// Berezinian is a positive rational square.
    CoordinateChange affine_change(const Chart& chart) {
        const int n = chart->dim();
        std::vector<int> p = SuperMatrix::coordinate_parities(*chart);
        SuperMatrix a = SuperMatrix::identity(chart, p);
        for (int i = 0; i < n; ++i) a(i, i) = SuperFunction::constant(chart, coin() ? 1 : (coin() ? 4 : Rational(1, 4)));
        for (int t = 0; t < 3; ++t) {
            int i = uniform(0, n - 1), j = uniform(0, n - 1);
            if (i == j || p[i] != p[j]) continue;
            SuperMatrix e = SuperMatrix::identity(chart, p);
            e(i, j) = SuperFunction::constant(chart, small_rational(2));
            a = e * a;
        }
        SuperMatrix ainv = inverse(a);
        std::vector<SuperFunction> shift(n, SuperFunction(chart));
        for (int i = 0; i < chart->n; ++i) shift[i] = SuperFunction::constant(chart, small_rational(2));
        std::vector<SuperFunction> forward(n, SuperFunction(chart)), inverse_map(n, SuperFunction(chart));
        for (int j = 0; j < n; ++j) {
            forward[j] = shift[j];
            for (int i = 0; i < n; ++i) forward[j] += a(j, i) * SuperFunction::coordinate(chart, i);
        }
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                inverse_map[j] += ainv(j, i) * (SuperFunction::coordinate(chart, i) - shift[i]);
        return CoordinateChange(chart, forward, inverse_map);
    }

    /// Random triangular change xbar^i = x^i + h^i where h^i only involves
    /// coordinates of larger index and has nilpotent even derivatives.
    CoordinateChange triangular_change(const Chart& chart) {
        const int n = chart->dim();
        std::vector<SuperFunction> h(n, SuperFunction(chart));
        auto x = [&](int i) { return SuperFunction::coordinate(chart, i); };
        for (int i = 0; i < n; ++i) {
            int pi = chart->parity(i);
            std::vector<int> odd_later;
            for (int j = std::max(i + 1, chart->n); j < n; ++j) odd_later.push_back(j);
            if (pi == 0) {
                for (std::size_t a = 0; a < odd_later.size(); ++a)
                    for (std::size_t b = a + 1; b < odd_later.size(); ++b) {
                        if (!coin()) continue;
                        SuperFunction c = SuperFunction::constant(chart, small_rational(2));
                        for (int j = i + 1; j < chart->n; ++j)
                            if (coin()) c = c * x(j);
                        h[i] += c * x(odd_later[a]) * x(odd_later[b]);
                    }
                for (int j = i + 1; j < chart->n; ++j)
                    if (coin()) h[i] += SuperFunction::constant(chart, small_rational(2)) * x(j);
            } else {
                for (std::size_t a = 0; a < odd_later.size(); ++a)
                    if (coin()) h[i] += SuperFunction::constant(chart, small_rational(2)) * x(odd_later[a]);
                if (odd_later.size() >= 3 && coin())
                    h[i] += x(odd_later[0]) * x(odd_later[1]) * x(odd_later[2]);
            }
        }
        std::vector<SuperFunction> forward(n, SuperFunction(chart)), inverse_map(n, SuperFunction(chart));
        for (int i = 0; i < n; ++i) {
            forward[i] = x(i) + h[i];
            inverse_map[i] = x(i);
        }
        for (int i = n - 1; i >= 0; --i) inverse_map[i] = x(i) - substitute(h[i], inverse_map);
        return CoordinateChange(chart, forward, inverse_map);
    }

    /// Affine change composed with a triangular one.
    CoordinateChange change(const Chart& chart) {
        CoordinateChange a = affine_change(chart);
        CoordinateChange t = triangular_change(chart);
        std::vector<SuperFunction> forward, inverse_map;
        for (int i = 0; i < chart->dim(); ++i) {
            forward.push_back(substitute(a.forward()[i], t.forward()));
            inverse_map.push_back(substitute(t.inverse()[i], a.inverse()));
        }
        return CoordinateChange(chart, forward, inverse_map);
    }

    /// Random even matrix over the coordinate grading with invertible
    /// constant block-triangular part plus a nilpotent part.
    SuperMatrix supported_matrix(const Chart& chart) {
        auto parity = SuperMatrix::coordinate_parities(*chart);
        SuperMatrix a(chart, parity);
        for (int i = 0; i < a.size(); ++i)
            for (int j = 0; j < a.size(); ++j) {
                SuperFunction entry(chart);
                if (parity[i] == parity[j] && j >= i)
                    entry += SuperFunction::constant(chart, i == j ? nonzero_rational() : small_rational());
                auto g = function(chart, (parity[i] + parity[j]) % 2, 2, 1);
                for (const auto& [mask, poly] : g.terms())
                    if (mask != 0) entry.add_term(mask, poly);
                a(i, j) = entry;
            }
        return a;
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

} // namespace superquant
