#include "szabolab/tensorcalc.hpp"

namespace szabolab {

namespace {

void require_torsion_free(const Connection& c) {
    if (!is_torsion_free(c))
        throw TorsionError("connection has torsion; curvature formulas assume symmetry");
}

}  // namespace

CurvatureTensor curvature(const Connection& c) {
    require_torsion_free(c);
    const int n = c.dim();
    CurvatureTensor r(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= n; ++k) {
                for (int l = 1; l <= n; ++l) {
                    Expr v = diff(c.gamma(l, j, i), k) - diff(c.gamma(k, j, i), l);
                    for (int m = 1; m <= n; ++m) {
                        v = v + c.gamma(k, m, i) * c.gamma(l, j, m) -
                            c.gamma(l, m, i) * c.gamma(k, j, m);
                    }
                    r.at(i, j, k, l) = v;
                }
            }
        }
    }
    return r;
}

RicciTensor ricci(const CurvatureTensor& r) {
    const int n = r.dim();
    RicciTensor out(n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) {
            Expr v;
            for (int i = 1; i <= n; ++i) v = v + r.at(i, k, i, j);
            out.at(j, k) = v;
        }
    return out;
}

RicciTensor ricci(const Connection& c) { return ricci(curvature(c)); }

CovDerivRicci cov_deriv_ricci(const Connection& c) {
    const RicciTensor ric = ricci(c);
    const int n = c.dim();
    CovDerivRicci out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Expr v = diff(ric.at(j, k), i);
                for (int m = 1; m <= n; ++m) {
                    v = v - c.gamma(i, j, m) * ric.at(m, k) - c.gamma(i, k, m) * ric.at(j, m);
                }
                out.at(i, j, k) = v;
            }
    return out;
}

CovDerivCurvature cov_deriv_curvature(const Connection& c) {
    const CurvatureTensor r = curvature(c);
    const int n = c.dim();
    CovDerivCurvature out(n);
    for (int m = 1; m <= n; ++m)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l) {
                        if (k == l) continue;
                        Expr v = diff(r.at(i, j, k, l), m);
                        for (int p = 1; p <= n; ++p) {
                            v = v + c.gamma(m, p, i) * r.at(p, j, k, l) -
                                c.gamma(m, k, p) * r.at(i, j, p, l) -
                                c.gamma(m, l, p) * r.at(i, j, k, p) -
                                c.gamma(m, j, p) * r.at(i, p, k, l);
                        }
                        out.at(m, i, j, k, l) = v;
                    }
    return out;
}

CyclicVerdict is_cyclic_parallel(const Connection& c) {
    const CovDerivRicci d = cov_deriv_ricci(c);
    const int n = c.dim();
    CyclicVerdict verdict;
    verdict.cyclic_parallel = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Expr sum = d.at(i, j, k) + d.at(j, k, i) + d.at(k, i, j);
                if (!sum.is_zero()) {
                    verdict.cyclic_parallel = false;
                    verdict.witness_indices = {i, j, k};
                    verdict.witness = sum;
                    return verdict;
                }
            }
    return verdict;
}

Expr cyclic_cubic(const Connection& c) {
    const CovDerivRicci d = cov_deriv_ricci(c);
    const int n = c.dim();
    Expr out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                Expr dir = Expr::dir_param(i) * Expr::dir_param(j) * Expr::dir_param(k);
                out = out + dir * d.at(i, j, k);
            }
    return out;
}

std::vector<Expr> PdeSystem::equations() const {
    std::vector<Expr> out;
    out.reserve(by_direction.size());
    for (const auto& [m, e] : by_direction) out.push_back(e);
    return out;
}

Expr generic_coefficient(int i) {
    return Expr::atom(Atom::func("f" + std::to_string(i), {1, 2, 3}));
}

Connection generic_family1() {
    return Connection::family1(generic_coefficient(1), generic_coefficient(2),
                               generic_coefficient(3));
}

Connection generic_family2() {
    return Connection::family2(generic_coefficient(1), generic_coefficient(2),
                               generic_coefficient(3));
}

PdeSystem cyclic_parallel_pde_system(FamilyTag family) {
    Connection c = family == FamilyTag::family2 ? generic_family2() : generic_family1();
    PdeSystem sys;
    sys.by_direction = collect_by_kind(cyclic_cubic(c), AtomKind::DirParam);
    return sys;
}

namespace {

Expr f(int i) { return generic_coefficient(i); }
Expr d(const Expr& e, int v) { return diff(e, v); }
Expr d2(const Expr& e, int v, int w) { return diff(diff(e, v), w); }
Expr c2(long long n) { return Expr::constant(n); }

}  // namespace

std::vector<Expr> family1_constraint_reference() {
    Expr f1 = f(1), f2 = f(2), f3 = f(3);
    return {
        d2(f3, 3, 3) + c2(2) * f3 * d(f3, 3),
        d2(f2, 2, 2) + c2(2) * f2 * d(f2, 2),
        d2(f1, 3, 3) + c2(4) * f3 * d(f3, 1) - c2(2) * f3 * d(f1, 3),
        d2(f1, 2, 2) + c2(4) * f2 * d(f2, 1) - c2(2) * f2 * d(f1, 2),
        d2(f3, 1, 1) - d2(f1, 1, 3) - f1 * d(f3, 1) + f1 * d(f1, 3),
        d2(f2, 1, 1) - d2(f1, 1, 2) - f1 * d(f2, 1) + f1 * d(f1, 2),
        d2(f3, 2, 2) + c2(2) * d2(f2, 2, 3) + c2(2) * f2 * d(f2, 3) + c2(2) * f3 * d(f2, 2) +
            c2(2) * f2 * d(f3, 2),
        d2(f2, 3, 3) + c2(2) * d2(f3, 2, 3) + c2(2) * f3 * d(f3, 2) + c2(2) * f3 * d(f2, 3) +
            c2(2) * f2 * d(f3, 3),
        c2(4) * f3 * d(f2, 1) + c2(4) * f2 * d(f3, 1) - c2(2) * f3 * d(f1, 2) -
            c2(2) * f2 * d(f1, 3) + c2(2) * d2(f1, 2, 3),
    };
}

std::vector<Expr> family2_constraint_reference() {
    Expr f1 = f(1), f2 = f(2), f3 = f(3);
    return {
        d2(f1, 1, 2),
        d2(f1, 3, 2),
        d2(f2, 1, 3),
        d2(f2, 2, 3),
        d2(f3, 2, 1),
        d2(f3, 3, 1),
        d2(f1, 2, 2) - c2(2) * f1 * d(f2, 3),
        d2(f3, 1, 1) - c2(2) * f3 * d(f1, 2),
        d2(f2, 3, 3) - c2(2) * f2 * d(f3, 1),
    };
}

bool same_system_up_to_scale(std::vector<Expr> a, std::vector<Expr> b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const Expr& ea : a) {
        bool matched = false;
        for (size_t i = 0; i < b.size(); ++i) {
            if (used[i]) continue;
            if (proportional(ea, b[i])) {
                used[i] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

}  // namespace szabolab
