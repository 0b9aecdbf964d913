#include "superquant/quantize.hpp"

#include "superquant/errors.hpp"
#include "superquant/projective.hpp"
#include "superquant/supermatrix.hpp"
#include "superquant/thomas.hpp"

#include <map>

namespace superquant {

namespace {

// nabla_s sums over all (l+1)! orderings at each step, so on flat monomials
// nabla_s^k produces prod_{l<=k} l! copies of each derivative.
Rational superfactorial(int k) {
    Rational r = 1, f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= i;
        r *= f;
    }
    return r;
}

void check_symbol(const ContraSymbol& s, const Rational& lambda, const Rational& mu) {
    if (s.weight() != mu - lambda)
        throw InputError("symbol weight " + to_string(s.weight()) + " differs from mu - lambda = " + to_string(mu - lambda));
    if (!s.parity()) throw InputError("symbol is not parity-homogeneous");
}

JetFunction pairing(const SymmetricTensor& s, const FrameGeometry& frame, const Rational& lambda) {
    const Chart& chart = frame.chart;
    CovTensor t = nabla_s_power(frame, JetFunction::argument(chart), lambda, s.degree());
    JetFunction j = pair(s, t);
    j *= Rational(1) / superfactorial(s.degree());
    return j;
}

SymmetricTensor ricci_interior(const SuperConnection& connection, const ContraSymbol& s) {
    const Chart& chart = connection.chart();
    const int n = chart->dim();
    auto curvature = curvature_package(connection);
    CovTensor ric(chart, SuperMatrix::coordinate_parities(*chart), 0, 2);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            if (a == b && chart->parity(a)) continue;
            SuperFunction v = curvature.Ric(b, a) + curvature.Ric(a, b) * Rational((chart->parity(a) && chart->parity(b)) ? -1 : 1);
            ric.set_value({a, b}, JetFunction(v * Rational(1, 2)));
        }
    return interior(ric, s);
}

// The four pieces <S, nabla^2 f>, <Div S, nabla f>, <Div^2 S, f>, <i(Ric) S, f>.
std::array<JetFunction, 4> ansatz_pieces(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda) {
    FrameGeometry frame = coordinate_frame(connection);
    JetFunction f = JetFunction::argument(connection.chart());
    ContraSymbol div = divergence(frame, s);
    ContraSymbol div2 = divergence(frame, div);
    return {pairing(s, frame, lambda), pairing(div, frame, lambda), div2.coefficient({}) * f,
            ricci_interior(connection, s).coefficient({}) * f};
}

} // namespace

DifferentialOperator quantize(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda,
                              const Rational& mu) {
    check_symbol(s, lambda, mu);
    LiftedTensor lift = div_free_lift(connection, s);
    JetFunction j = pairing(lift, thomas_frame(connection), lambda);
    return DifferentialOperator::from_jet(j, lambda, mu);
}

DifferentialOperator special_nm_minus1(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda,
                                       const Rational& mu, const Rational& t) {
    const ChartSpec& chart = *connection.chart();
    if (chart.superdim() != -1) throw SuperdimensionError(chart.superdim(), "the special formulas need n - m = -1");
    check_symbol(s, lambda, mu);
    if (s.degree() < 1 || s.degree() > 2) throw InputError("the special formulas cover symbols of degree 1 and 2 only");
    FrameGeometry frame = coordinate_frame(connection);
    ContraSymbol div = divergence(frame, s);
    JetFunction j = pairing(s, frame, lambda);
    if (s.degree() == 1)
        j += t * (div.coefficient({}) * JetFunction::argument(connection.chart()));
    else
        j += Rational(1, 2) * pairing(div, frame, lambda);
    return DifferentialOperator::from_jet(j, lambda, mu);
}

DifferentialOperator degree2_ansatz(const SuperConnection& connection, const ContraSymbol& s, const Rational& lambda,
                                    const Rational& mu, const std::array<Rational, 3>& abc) {
    check_symbol(s, lambda, mu);
    if (s.degree() != 2) throw InputError("the ansatz is for symbols of degree 2");
    auto pieces = ansatz_pieces(connection, s, lambda);
    JetFunction j = pieces[0];
    for (int i = 0; i < 3; ++i) j += abc[i] * pieces[i + 1];
    return DifferentialOperator::from_jet(j, lambda, mu);
}

namespace {

struct GenericBuilder {
    Chart chart;
    std::vector<Exponents> even_monomials;  // over the even coordinates only
    int next = 0;

    SuperFunction generic(int parity, unsigned max_degree) {
        SuperFunction f(chart);
        for (OddMask mask = 0; mask < (OddMask{1} << chart->m); ++mask) {
            if (std::popcount(mask) % 2 != parity) continue;
            for (const auto& e : even_monomials) {
                unsigned d = 0;
                for (int v = 0; v < chart->n; ++v) d += e[v];
                if (d > max_degree) continue;
                Exponents full = e;
                full[chart->n + next++] = 1;
                Polynomial p;
                p.add_term(full, 1);
                f.add_term(mask, p);
            }
        }
        return f;
    }
};

std::vector<Exponents> monomials_up_to(int vars, int total_vars, unsigned degree) {
    std::vector<Exponents> out;
    Exponents e(total_vars, 0);
    auto rec = [&](auto&& self, int v, unsigned left) -> void {
        if (v == vars) {
            out.push_back(e);
            return;
        }
        for (unsigned d = 0; d <= left; ++d) {
            e[v] = d;
            self(self, v + 1, left - d);
        }
        e[v] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

// Exact row reduction of [A | rhs] with three unknowns.
void solve(AnsatzReport& report) {
    std::vector<std::array<Rational, 4>> rows = report.equations;
    int rank = 0;
    std::array<int, 3> pivot_row{-1, -1, -1};
    for (int col = 0; col < 3; ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        Rational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational factor = rows[r][col];
            for (int c = 0; c < 4; ++c) rows[r][c] -= factor * rows[rank][c];
        }
        pivot_row[col] = rank++;
    }
    report.rank = rank;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
        if (rows[r][3] != 0) {
            report.solvable = false;
            return;
        }
    report.solvable = true;
    std::array<Rational, 3> x{0, 0, 0};
    for (int col = 0; col < 3; ++col) {
        if (pivot_row[col] < 0) report.free_unknowns.push_back(col);
        else x[col] = rows[pivot_row[col]][3];
    }
    report.solution = x;
}

} // namespace

AnsatzReport ansatz_degree2_system(int n, int m, const Rational& lambda, const Rational& mu) {
    if (n < 0 || m < 0 || n + m == 0) throw InputError("invalid dimension");
    AnsatzReport report;
    report.n = n;
    report.m = m;
    report.lambda = lambda;
    report.mu = mu;
    const Rational delta = mu - lambda;
    Chart base = make_chart(n, m);
    const int dim = n + m;
    auto parity = [&](int i) { return base->parity(i); };

    // Generic 2-jets of the connection and of the 1-form, one parameter per coefficient.
    constexpr unsigned jet_order = 2;
    const int monomials = static_cast<int>(monomials_up_to(n, n, jet_order).size());
    int masks_per_parity[2] = {0, 0};
    for (OddMask mask = 0; mask < (OddMask{1} << m); ++mask) ++masks_per_parity[std::popcount(mask) % 2];
    int count = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            if (i == j && parity(i)) continue;
            for (int k = 0; k < dim; ++k) count += masks_per_parity[(parity(i) + parity(j) + parity(k)) % 2] * monomials;
        }
    for (int i = 0; i < dim; ++i) count += masks_per_parity[parity(i)] * monomials;
    std::vector<std::string> names;
    for (int p = 0; p < count; ++p) names.push_back("g" + std::to_string(p + 1));
    Chart chart = with_params(base, names);

    GenericBuilder builder{chart, monomials_up_to(n, chart->num_vars(), 2), 0};
    std::vector<SuperConnection::Entry> entries;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            if (i == j && parity(i)) continue;
            for (int k = 0; k < dim; ++k)
                entries.push_back({i, j, k, builder.generic((parity(i) + parity(j) + parity(k)) % 2, jet_order)});
        }
    SuperConnection connection = SuperConnection::from_entries(chart, entries);
    OneForm alpha;
    for (int i = 0; i < dim; ++i) alpha.components.push_back(builder.generic(parity(i), jet_order));
    SuperConnection perturbed = perturb(connection, alpha);

    // Every monomial symbol of order <= 2 in the even coordinates.
    std::map<std::array<Rational, 4>, bool> seen;
    auto record = [&](const Rational& ca, const Rational& cb, const Rational& cc, const Rational& rhs) {
        std::array<Rational, 4> row{ca, cb, cc, rhs};
        Rational scale = 0;
        for (const auto& x : row)
            if (x != 0) {
                scale = x;
                break;
            }
        if (scale == 0) return;
        for (auto& x : row) x /= scale;
        if (seen.emplace(row, true).second) report.equations.push_back(row);
    };
    const auto symbol_monomials = monomials_up_to(n, chart->num_vars(), 2);
    for (const auto& w : canonical_words(SuperMatrix::coordinate_parities(*chart), 2))
        for (OddMask mask = 0; mask < (OddMask{1} << m); ++mask)
            for (const auto& e : symbol_monomials) {
                Polynomial p;
                p.add_term(e, 1);
                SuperFunction coeff(chart);
                coeff.add_term(mask, p);
                ContraSymbol s = SymmetricTensor::symbol(chart, delta, 2);
                s.add_term(w, coeff);
                auto before = ansatz_pieces(connection, s, lambda);
                auto after = ansatz_pieces(perturbed, s, lambda);
                std::array<JetFunction, 4> diff;
                for (int q = 0; q < 4; ++q) diff[q] = after[q] - before[q];
                // Equation per (jet generator, odd monomial, polynomial monomial).
                std::map<std::tuple<MultiIndex, OddMask, Exponents>, std::array<Rational, 4>> collected;
                for (int q = 0; q < 4; ++q) {
                    if (!diff[q].free_part().is_zero()) throw InputError("ansatz produced a term without the argument");
                    for (const auto& [alpha_index, c] : diff[q].linear())
                        for (const auto& [odd, poly] : c.terms())
                            for (const auto& [ex, value] : poly.terms())
                                collected[{alpha_index, odd, ex}][q] += value;
                }
                for (const auto& [key, v] : collected) record(v[1], v[2], v[3], -v[0]);
            }
    solve(report);
    return report;
}

} // namespace superquant
