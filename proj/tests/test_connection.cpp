#include <doctest.h>

#include "szabolab/catalog.hpp"
#include "szabolab/szabo.hpp"

using namespace szabolab;

namespace {
Expr x(int i) { return Expr::chart_var(i); }
}

TEST_SUITE("connection") {

TEST_CASE("flat connection has no torsion") {
    Connection flat = Connection::flat(3);
    Tensor3 t = torsion(flat);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) CHECK(t.at(i, j, k).is_zero());
    CHECK(is_torsion_free(flat));
}

TEST_CASE("generic families are torsion-free by construction") {
    CHECK(is_torsion_free(generic_family1()));
    CHECK(is_torsion_free(generic_family2()));
    Tensor3 t = torsion(generic_family1());
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) CHECK(t.at(i, j, k).is_zero());
}

TEST_CASE("an asymmetric entry produces antisymmetric torsion") {
    std::vector<Expr> gamma(27);
    gamma[(0 * 3 + 1) * 3 + 0] = x(3);  // Γ^1_{12} = x3, Γ^1_{21} = 0
    Connection c(Chart::standard(3), std::move(gamma));
    CHECK_FALSE(is_torsion_free(c));
    Tensor3 t = torsion(c);
    CHECK(t.at(1, 2, 1) == x(3));
    CHECK(t.at(2, 1, 1) == neg(x(3)));
}

TEST_CASE("torsion is antisymmetric for random connections") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Expr> gamma(27);
        for (auto& e : gamma) e = sample_polynomial(rng, 3, 2, 2);
        Connection c(Chart::standard(3), std::move(gamma));
        Tensor3 t = torsion(c);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k) CHECK(t.at(i, j, k) == neg(t.at(j, i, k)));
    }
}

TEST_CASE("christoffel entries must live on the chart") {
    std::vector<Expr> bad(27);
    bad[0] = Expr::dir_param(1);
    CHECK_THROWS_AS(Connection(Chart::standard(3), std::move(bad)), Error);
    std::vector<Expr> oob(27);
    oob[0] = x(4);
    CHECK_THROWS_AS(Connection(Chart::standard(3), std::move(oob)), Error);
}

TEST_CASE("direct sum of flat pieces is flat") {
    Connection sum = direct_sum(Connection::flat(3), Connection::flat(3));
    CHECK(sum.dim() == 6);
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j)
            for (int k = 1; k <= 6; ++k) CHECK(sum.gamma(i, j, k).is_zero());
}

TEST_CASE("direct sum shifts the second block's variables") {
    Connection sum = direct_sum(catalog::family1_rotational(), catalog::family2_cascade());
    CHECK(sum.dim() == 6);
    CHECK(is_torsion_free(sum));
    // first block untouched
    CHECK(sum.gamma(1, 2, 1) == neg(x(3)));
    // second block: Γ^3_{22} = x2 becomes Γ^6_{55} = x5
    CHECK(sum.gamma(5, 5, 6) == x(5));
    CHECK(sum.gamma(6, 6, 4) == x(5) + pow_int(x(6), 2));
    // no mixed entries
    for (int i = 1; i <= 3; ++i)
        for (int j = 4; j <= 6; ++j)
            for (int k = 1; k <= 6; ++k) {
                CHECK(sum.gamma(i, j, k).is_zero());
                CHECK(sum.gamma(j, i, k).is_zero());
            }
}

TEST_CASE("direct sum curvature is block diagonal with the summand blocks") {
    Connection a = catalog::family1_rotational();
    Connection b = catalog::family2_cascade();
    Connection sum = direct_sum(a, b);
    CurvatureTensor rsum = curvature(sum);
    CurvatureTensor ra = curvature(a);
    CurvatureTensor rb = curvature(b);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                for (int l = 1; l <= 3; ++l) {
                    CHECK(rsum.at(i, j, k, l) == ra.at(i, j, k, l));
                    CHECK(rsum.at(i + 3, j + 3, k + 3, l + 3) ==
                          shift_chart_vars(rb.at(i, j, k, l), 3));
                }
    // cross blocks vanish
    for (int i = 1; i <= 3; ++i)
        for (int j = 4; j <= 6; ++j)
            for (int k = 1; k <= 6; ++k)
                for (int l = 1; l <= 6; ++l) CHECK(rsum.at(i, j, k, l).is_zero());
}

TEST_CASE("direct sum with opaque functions keeps them independent") {
    Connection g2 = generic_family2();
    Connection sum = direct_sum(generic_family1(), g2);
    CHECK(is_torsion_free(sum));
    // the shifted block depends on x4..x6 only
    for (const Atom& atom : atoms_of(sum.gamma(4, 4, 5)))
        if (atom.kind() == AtomKind::Func)
            for (int arg : atom.func_args()) CHECK(arg > 3);
}

TEST_CASE("family tags are advisory") {
    CHECK(catalog::family1_rotational().family() == FamilyTag::family1);
    CHECK(catalog::family2_cascade().family() == FamilyTag::family2);
    CHECK(direct_sum(Connection::flat(2), Connection::flat(2)).family() == FamilyTag::generic);
}

}  // TEST_SUITE
