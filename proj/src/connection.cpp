#include "szabolab/connection.hpp"

namespace szabolab {

Chart Chart::standard(int n) {
    Chart c;
    c.dim = n;
    c.names.reserve(n);
    for (int i = 1; i <= n; ++i) c.names.push_back("x" + std::to_string(i));
    return c;
}

std::string to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::family1: return "family-1";
        case FamilyTag::family2: return "family-2";
        case FamilyTag::generic: break;
    }
    return "generic";
}

namespace {

void validate_entry(const Expr& e, int n, int i, int j, int k) {
    for (const Atom& a : atoms_of(e)) {
        bool ok = false;
        switch (a.kind()) {
            case AtomKind::ChartVar:
                ok = a.index() >= 1 && a.index() <= n;
                break;
            case AtomKind::Func:
                ok = !a.func_args().empty() && a.func_args().back() <= n;
                break;
            default:
                ok = false;  // direction/spectral atoms never belong in Christoffels
        }
        if (!ok) {
            throw Error("Christoffel entry (" + std::to_string(i) + "," + std::to_string(j) +
                        "," + std::to_string(k) + ") uses atom " + a.to_string() +
                        " outside the chart");
        }
    }
}

}  // namespace

Connection::Connection(Chart chart, std::vector<Expr> gamma, FamilyTag tag)
    : chart_(std::move(chart)), gamma_(std::move(gamma)), tag_(tag) {
    const int n = chart_.dim;
    if (n < 1) throw Error("chart dimension must be positive");
    if (static_cast<int>(chart_.names.size()) != n) throw Error("chart needs one name per variable");
    if (gamma_.size() != static_cast<size_t>(n) * n * n)
        throw Error("Christoffel array must have dim^3 entries");
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) validate_entry(this->gamma(i, j, k), n, i, j, k);
}

Connection Connection::flat(int n) {
    return Connection(Chart::standard(n), std::vector<Expr>(static_cast<size_t>(n) * n * n));
}

Connection Connection::family1_directed(int dir, Expr f1, Expr f2, Expr f3) {
    const int n = 3;
    if (dir < 1 || dir > n) throw Error("family-1 direction out of range");
    std::vector<Expr> g(static_cast<size_t>(n) * n * n);
    auto set = [&](int i, int j, int k, const Expr& e) {
        g[((static_cast<size_t>(i - 1) * n) + (j - 1)) * n + (k - 1)] = e;
    };
    // ∇_{∂_1}∂_j = f_j ∂_dir, symmetrized so the connection is torsion-free.
    set(1, 1, dir, f1);
    set(1, 2, dir, f2);
    set(2, 1, dir, f2);
    set(1, 3, dir, f3);
    set(3, 1, dir, f3);
    return Connection(Chart::standard(n), std::move(g), FamilyTag::family1);
}

Connection Connection::family2(Expr f1, Expr f2, Expr f3) {
    const int n = 3;
    std::vector<Expr> g(static_cast<size_t>(n) * n * n);
    auto set = [&](int i, int j, int k, const Expr& e) {
        g[((static_cast<size_t>(i - 1) * n) + (j - 1)) * n + (k - 1)] = e;
    };
    set(1, 1, 2, f1);
    set(2, 2, 3, f2);
    set(3, 3, 1, f3);
    return Connection(Chart::standard(n), std::move(g), FamilyTag::family2);
}

Tensor3 torsion(const Connection& c) {
    const int n = c.dim();
    Tensor3 t(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) t.at(i, j, k) = c.gamma(i, j, k) - c.gamma(j, i, k);
    return t;
}

bool is_torsion_free(const Connection& c) {
    const int n = c.dim();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                if (!(c.gamma(i, j, k) == c.gamma(j, i, k))) return false;
    return true;
}

Expr shift_chart_vars(const Expr& e, int offset) {
    if (offset == 0) return e;
    Bindings b;
    for (const Atom& a : atoms_of(e)) {
        if (a.kind() == AtomKind::ChartVar) {
            b.set(a, Expr::chart_var(a.index() + offset));
        } else if (a.kind() == AtomKind::Func) {
            std::vector<int> args = a.func_args();
            for (int& v : args) v += offset;
            Expr shifted = Expr::atom(Atom::func(a.func_name(), std::move(args)));
            for (int v : a.deriv()) shifted = diff(shifted, v + offset);
            b.set(a, shifted);
        }
    }
    return substitute(e, b);
}

Connection direct_sum(const Connection& a, const Connection& b) {
    const int n1 = a.dim(), n2 = b.dim(), n = n1 + n2;
    std::vector<Expr> g(static_cast<size_t>(n) * n * n);
    auto set = [&](int i, int j, int k, Expr e) {
        g[((static_cast<size_t>(i - 1) * n) + (j - 1)) * n + (k - 1)] = std::move(e);
    };
    for (int i = 1; i <= n1; ++i)
        for (int j = 1; j <= n1; ++j)
            for (int k = 1; k <= n1; ++k) set(i, j, k, a.gamma(i, j, k));
    for (int i = 1; i <= n2; ++i)
        for (int j = 1; j <= n2; ++j)
            for (int k = 1; k <= n2; ++k)
                set(i + n1, j + n1, k + n1, shift_chart_vars(b.gamma(i, j, k), n1));
    return Connection(Chart::standard(n), std::move(g));
}

}  // namespace szabolab
