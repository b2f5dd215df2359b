#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "szabolab/catalog.hpp"
#include "szabolab/riemext.hpp"

using namespace szabolab;

namespace {

Expr x(int i) { return Expr::chart_var(i); }

// Leibniz determinant of a general symbolic matrix, 1-based accessor.
Expr full_determinant(int n, const std::function<const Expr&(int, int)>& at) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    Expr det;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Expr prod = Expr::constant(1);
        bool zero = false;
        for (int r = 1; r <= n && !zero; ++r) {
            if (at(r, perm[r - 1]).is_zero()) zero = true;
            prod = prod * at(r, perm[r - 1]);
        }
        if (zero) continue;
        det = (inversions % 2 == 0) ? det + prod : det - prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

bool connections_equal(const Connection& a, const Connection& b) {
    if (a.dim() != b.dim()) return false;
    for (int i = 1; i <= a.dim(); ++i)
        for (int j = 1; j <= a.dim(); ++j)
            for (int k = 1; k <= a.dim(); ++k)
                if (!(a.gamma(i, j, k) == b.gamma(i, j, k))) return false;
    return true;
}

}  // namespace

TEST_SUITE("riemext") {

TEST_CASE("extension of the flat connection is the pairing metric") {
    NeutralMetric g = riemannian_extension(Connection::flat(3));
    CHECK(g.dim() == 6);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            CHECK(g.at(i, j).is_zero());
            CHECK(g.at(3 + i, 3 + j).is_zero());
            CHECK(g.at(i, 3 + j) == (i == j ? Expr::constant(1) : Expr{}));
        }
}

TEST_CASE("extension metric entries are the contracted Christoffels") {
    NeutralMetric g = riemannian_extension(catalog::family1_dilating());
    CHECK(g.at(1, 1) == scale(x(1) * x(4), -2));
    CHECK(g.at(1, 2) == scale(x(3) * x(4), -4));
    CHECK(g.at(1, 3) == scale(x(2) * x(4), 4));
    CHECK(g.at(2, 1) == g.at(1, 2));
    CHECK(g.at(2, 2).is_zero());
    CHECK(g.at(2, 3).is_zero());
    CHECK(g.at(3, 3).is_zero());
}

TEST_CASE("extension metric determinant is a unit") {
    for (const auto& [name, conn] : catalog::corpus()) {
        CAPTURE(name);
        NeutralMetric g = riemannian_extension(conn);
        Expr det = full_determinant(
            g.dim(), [&](int a, int b) -> const Expr& { return g.at(a, b); });
        CHECK(det == Expr::constant(g.base_dim() % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("block inverse is a two-sided inverse") {
    NeutralMetric g = riemannian_extension(catalog::family2_quadratic());
    std::vector<Expr> inv = metric_inverse(g);
    const int n = g.dim();
    auto inv_at = [&](int a, int b) -> const Expr& {
        return inv[static_cast<size_t>(a - 1) * n + (b - 1)];
    };
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            Expr sum;
            for (int c = 1; c <= n; ++c) sum = sum + g.at(a, c) * inv_at(c, b);
            CHECK(sum == (a == b ? Expr::constant(1) : Expr{}));
        }
    // the fiber-fiber block of the inverse mirrors the base-base block
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(inv_at(3 + i, 3 + j) == neg(g.at(i, j)));
}

TEST_CASE("ill-formed metrics are rejected") {
    NeutralMetric g = riemannian_extension(Connection::flat(2));
    std::vector<Expr> entries;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) entries.push_back(g.at(a, b));
    entries[0 * 4 + 1] = x(1);  // breaks symmetry
    CHECK_THROWS_AS(NeutralMetric(2, entries), MetricError);
}

TEST_CASE("Koszul route equals the closed form on the corpus") {
    for (const auto& [name, conn] : catalog::corpus()) {
        CAPTURE(name);
        Connection koszul = levi_civita_koszul(riemannian_extension(conn));
        Connection closed = levi_civita_closed_form(conn);
        CHECK(connections_equal(koszul, closed));
        CHECK(is_torsion_free(closed));
    }
}

TEST_CASE("the extension connection is metric") {
    for (const auto& [name, conn] : catalog::corpus()) {
        CAPTURE(name);
        NeutralMetric g = riemannian_extension(conn);
        CHECK(is_metric_compatible(levi_civita_koszul(g), g));
    }
}

TEST_CASE("extension curvature identities") {
    for (const auto& [name, conn] : catalog::corpus()) {
        CAPTURE(name);
        ExtensionCurvatureChecks checks = check_extension_curvature_identities(conn);
        CHECK(checks.base_block);
        CHECK(checks.fiber_argument_block);
        CHECK(checks.mixed_block);
    }
    // also with fully generic coefficient functions
    CHECK(check_extension_curvature_identities(generic_family2()).ok());
}

TEST_CASE("block structure of the extension operator") {
    for (const auto& name : {"family1-rotational", "family2-cascade", "family2-quadratic"}) {
        CAPTURE(name);
        Connection conn = std::string(name) == "family1-rotational"
                              ? catalog::family1_rotational()
                              : (std::string(name) == "family2-cascade"
                                     ? catalog::family2_cascade()
                                     : catalog::family2_quadratic());
        BlockReport report = check_block_structure(conn);
        CHECK(report.upper_right_zero);
        CHECK(report.base_block_matches);
        CHECK(report.transpose_block_matches);
        CHECK(report.factorization_holds);
    }
}

TEST_CASE("nilpotency transfers to the extension and back") {
    CHECK(is_pseudo_szabo(riemannian_extension(Connection::flat(3))).is_szabo);

    SzaboVerdict good = is_pseudo_szabo(riemannian_extension(catalog::family1_dilating()));
    CHECK(good.is_szabo);
    CHECK(good.poly.n == 6);

    SzaboVerdict bad = is_pseudo_szabo(riemannian_extension(catalog::family2_quadratic()));
    CHECK_FALSE(bad.is_szabo);

    for (const auto& [name, conn] : catalog::corpus()) {
        CAPTURE(name);
        CHECK(is_affine_szabo(conn).is_szabo ==
              is_pseudo_szabo(riemannian_extension(conn)).is_szabo);
    }
}

TEST_CASE("extension requires a torsion-free base") {
    std::vector<Expr> gamma(27);
    gamma[(0 * 3 + 1) * 3 + 0] = x(3);
    Connection c(Chart::standard(3), std::move(gamma));
    CHECK_THROWS_AS(riemannian_extension(c), TorsionError);
    CHECK_THROWS_AS(levi_civita_closed_form(c), TorsionError);
}

}  // TEST_SUITE
