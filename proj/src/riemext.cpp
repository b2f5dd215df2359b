#include "szabolab/riemext.hpp"

namespace szabolab {

NeutralMetric::NeutralMetric(int base_dim, std::vector<Expr> g) : n_(base_dim), g_(std::move(g)) {
    const int dim = 2 * n_;
    if (n_ < 1) throw MetricError("base dimension must be positive");
    if (g_.size() != static_cast<size_t>(dim) * dim)
        throw MetricError("metric needs (2n)^2 entries");
    for (int a = 1; a <= dim; ++a)
        for (int b = a + 1; b <= dim; ++b)
            if (!(at(a, b) == at(b, a))) throw MetricError("metric must be symmetric");
    // Extension block form: identity pairing, vanishing fiber-fiber block,
    // base-base entries at most linear in the fiber coordinates.
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j) {
            const Expr expected = i == j ? Expr::constant(1) : Expr{};
            if (!(at(i, n_ + j) == expected))
                throw MetricError("base-fiber block must be the identity pairing");
            if (!at(n_ + i, n_ + j).is_zero())
                throw MetricError("fiber-fiber block must vanish");
            for (const auto& [mono, coeff] : at(i, j).terms()) {
                int fiber_degree = 0;
                for (const auto& [atom, exp] : mono.factors)
                    if (atom.kind() == AtomKind::ChartVar && atom.index() > n_) fiber_degree += exp;
                if (fiber_degree > 1)
                    throw MetricError("base-base block must be linear in the fiber coordinates");
            }
        }
}

NeutralMetric riemannian_extension(const Connection& c) {
    if (!is_torsion_free(c)) throw TorsionError("extension requires a torsion-free connection");
    const int n = c.dim();
    const int dim = 2 * n;
    std::vector<Expr> g(static_cast<size_t>(dim) * dim);
    auto set = [&](int a, int b, const Expr& e) {
        g[static_cast<size_t>(a - 1) * dim + (b - 1)] = e;
        g[static_cast<size_t>(b - 1) * dim + (a - 1)] = e;
    };
    for (int i = 1; i <= n; ++i) {
        set(i, n + i, Expr::constant(1));
        for (int j = i; j <= n; ++j) {
            Expr v;
            for (int k = 1; k <= n; ++k) {
                v = v + scale(Expr::chart_var(n + k) * c.gamma(i, j, k), -2);
            }
            set(i, j, v);
        }
    }
    return NeutralMetric(n, std::move(g));
}

std::vector<Expr> metric_inverse(const NeutralMetric& g) {
    const int n = g.base_dim();
    const int dim = g.dim();
    std::vector<Expr> inv(static_cast<size_t>(dim) * dim);
    auto set = [&](int a, int b, const Expr& e) {
        inv[static_cast<size_t>(a - 1) * dim + (b - 1)] = e;
    };
    for (int i = 1; i <= n; ++i) {
        set(i, n + i, Expr::constant(1));
        set(n + i, i, Expr::constant(1));
        for (int j = 1; j <= n; ++j) set(n + i, n + j, neg(g.at(i, j)));
    }
    return inv;
}

Connection levi_civita_koszul(const NeutralMetric& g) {
    const int dim = g.dim();
    const std::vector<Expr> inv = metric_inverse(g);
    auto ginv = [&](int a, int b) -> const Expr& {
        return inv[static_cast<size_t>(a - 1) * dim + (b - 1)];
    };
    std::vector<Expr> gamma(static_cast<size_t>(dim) * dim * dim);
    for (int al = 1; al <= dim; ++al)
        for (int be = al; be <= dim; ++be)
            for (int ga = 1; ga <= dim; ++ga) {
                Expr v;
                for (int de = 1; de <= dim; ++de) {
                    if (ginv(ga, de).is_zero()) continue;
                    Expr bracket = diff(g.at(de, be), al) + diff(g.at(al, de), be) -
                                   diff(g.at(al, be), de);
                    v = v + ginv(ga, de) * bracket;
                }
                v = scale(v, Rational(1, 2));
                gamma[((static_cast<size_t>(al - 1) * dim) + (be - 1)) * dim + (ga - 1)] = v;
                gamma[((static_cast<size_t>(be - 1) * dim) + (al - 1)) * dim + (ga - 1)] = v;
            }
    return Connection(Chart::standard(dim), std::move(gamma));
}

Connection levi_civita_closed_form(const Connection& c) {
    if (!is_torsion_free(c)) throw TorsionError("extension requires a torsion-free connection");
    const int n = c.dim();
    const int dim = 2 * n;
    std::vector<Expr> gamma(static_cast<size_t>(dim) * dim * dim);
    auto set = [&](int i, int j, int k, const Expr& e) {
        gamma[((static_cast<size_t>(i - 1) * dim) + (j - 1)) * dim + (k - 1)] = e;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                set(i, j, k, c.gamma(i, j, k));
                // fiber row/column pair: Γ^{k'}_{i'j} = -Γ^i_{jk} = Γ^{k'}_{j i'}
                set(i + n, j, k + n, neg(c.gamma(j, k, i)));
                set(j, i + n, k + n, neg(c.gamma(j, k, i)));
            }
            // base-base entries of the fiber rows, linear in fiber coordinates
            for (int k = 1; k <= n; ++k) {
                Expr v;
                for (int r = 1; r <= n; ++r) {
                    Expr bracket = diff(c.gamma(i, j, r), k) - diff(c.gamma(j, k, r), i) -
                                   diff(c.gamma(i, k, r), j);
                    for (int l = 1; l <= n; ++l)
                        bracket = bracket + scale(c.gamma(k, l, r) * c.gamma(i, j, l), 2);
                    v = v + Expr::chart_var(n + r) * bracket;
                }
                set(i, j, k + n, v);
            }
        }
    return Connection(Chart::standard(dim), std::move(gamma));
}

bool is_metric_compatible(const Connection& conn, const NeutralMetric& g) {
    const int dim = g.dim();
    if (conn.dim() != dim) return false;
    for (int a = 1; a <= dim; ++a)
        for (int b = 1; b <= dim; ++b)
            for (int c = b; c <= dim; ++c) {
                Expr v = diff(g.at(b, c), a);
                for (int d = 1; d <= dim; ++d) {
                    v = v - conn.gamma(a, b, d) * g.at(d, c) - conn.gamma(a, c, d) * g.at(b, d);
                }
                if (!v.is_zero()) return false;
            }
    return true;
}

SzaboVerdict is_pseudo_szabo(const NeutralMetric& g) {
    return is_affine_szabo(levi_civita_koszul(g));
}

BlockReport check_block_structure(const Connection& c) {
    const int n = c.dim();
    const SzaboMatrix base = szabo_operator(c);
    const SzaboMatrix ext = szabo_operator(levi_civita_closed_form(c));

    BlockReport report;
    report.upper_right_zero = true;
    for (int p = 1; p <= n; ++p)
        for (int m = n + 1; m <= 2 * n; ++m)
            if (!ext.at(p, m).is_zero()) report.upper_right_zero = false;

    Bindings drop_fiber_dirs;
    drop_fiber_dirs.set_zero_dir_params(n + 1, 2 * n);
    report.base_block_matches = true;
    report.transpose_block_matches = true;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (!(substitute(ext.at(a, b), drop_fiber_dirs) == base.at(a, b)))
                report.base_block_matches = false;
            if (!(substitute(ext.at(n + a, n + b), drop_fiber_dirs) == base.at(b, a)))
                report.transpose_block_matches = false;
        }

    const CharPoly whole = char_poly(ext);
    const CharPoly split =
        char_poly_product(char_poly(base), char_poly(base.transpose()));
    report.factorization_holds = whole.n == split.n;
    for (int d = 0; d <= whole.n && report.factorization_holds; ++d)
        if (!(whole.coeff[d] == split.coeff[d])) report.factorization_holds = false;
    return report;
}

ExtensionCurvatureChecks check_extension_curvature_identities(const Connection& c) {
    const int n = c.dim();
    const CurvatureTensor base = curvature(c);
    const CurvatureTensor ext = curvature(levi_civita_closed_form(c));

    ExtensionCurvatureChecks checks;
    checks.base_block = true;
    checks.fiber_argument_block = true;
    checks.mixed_block = true;
    for (int h = 1; h <= n; ++h)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k) {
                    if (!(ext.at(h, i, k, j) == base.at(h, i, k, j)))
                        checks.base_block = false;
                    // R̃(∂_k,∂_j)∂_{i'} = -R(∂_k,∂_j)∂_h on the fiber component h'
                    if (!(ext.at(h + n, i + n, k, j) == neg(base.at(i, h, k, j))))
                        checks.fiber_argument_block = false;
                    // R̃(∂_{k'},∂_j)∂_i = R(∂_h,∂_i)∂_j on the fiber component h'
                    if (!(ext.at(h + n, i, k + n, j) == base.at(k, j, h, i)))
                        checks.mixed_block = false;
                }
    return checks;
}

}  // namespace szabolab
