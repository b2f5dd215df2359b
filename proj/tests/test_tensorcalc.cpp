#include <doctest.h>

#include "szabolab/catalog.hpp"
#include "szabolab/szabo.hpp"

using namespace szabolab;

namespace {

Expr x(int i) { return Expr::chart_var(i); }
Expr f(int i) { return generic_coefficient(i); }
Expr d(const Expr& e, int v) { return diff(e, v); }

}  // namespace

TEST_SUITE("tensorcalc") {

TEST_CASE("curvature requires a torsion-free connection") {
    std::vector<Expr> gamma(27);
    gamma[(0 * 3 + 1) * 3 + 0] = x(3);
    Connection c(Chart::standard(3), std::move(gamma));
    CHECK_THROWS_AS(curvature(c), TorsionError);
}

TEST_CASE("flat connection: everything vanishes") {
    Connection flat = Connection::flat(3);
    CurvatureTensor r = curvature(flat);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                for (int l = 1; l <= 3; ++l) CHECK(r.at(i, j, k, l).is_zero());
    RicciTensor ric = ricci(flat);
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) CHECK(ric.at(j, k).is_zero());
    CovDerivRicci dric = cov_deriv_ricci(flat);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) CHECK(dric.at(i, j, k).is_zero());
    CovDerivCurvature dr = cov_deriv_curvature(flat);
    CHECK(dr.at(1, 1, 2, 1, 2).is_zero());
    CHECK(is_cyclic_parallel(flat).cyclic_parallel);
}

TEST_CASE("single-row family: displayed curvature components") {
    CurvatureTensor r = curvature(generic_family1());
    Expr f1 = f(1), f2 = f(2), f3 = f(3);
    CHECK(r.at(1, 1, 1, 2) == d(f2, 1) - d(f1, 2));
    CHECK(r.at(1, 2, 1, 2) == neg(d(f2, 2) + f2 * f2));
    CHECK(r.at(1, 3, 1, 2) == neg(d(f3, 2) + f2 * f3));
    CHECK(r.at(1, 1, 1, 3) == d(f3, 1) - d(f1, 3));
    CHECK(r.at(1, 2, 1, 3) == neg(d(f2, 3) + f2 * f3));
    CHECK(r.at(1, 3, 1, 3) == neg(d(f3, 3) + f3 * f3));
    CHECK(r.at(1, 1, 2, 3) == d(f3, 2) - d(f2, 3));
    // remaining independent components vanish
    CHECK(r.at(1, 2, 2, 3).is_zero());
    CHECK(r.at(1, 3, 2, 3).is_zero());
    for (int i = 2; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                for (int l = 1; l <= 3; ++l) CHECK(r.at(i, j, k, l).is_zero());
}

TEST_CASE("cyclic-shift family: displayed curvature components") {
    CurvatureTensor r = curvature(generic_family2());
    Expr f1 = f(1), f2 = f(2), f3 = f(3);
    CHECK(r.at(2, 1, 1, 2) == neg(d(f1, 2)));
    CHECK(r.at(3, 1, 1, 2) == neg(f1 * f2));
    CHECK(r.at(3, 2, 1, 2) == d(f2, 1));
    CHECK(r.at(2, 1, 1, 3) == neg(d(f1, 3)));
    CHECK(r.at(1, 3, 1, 3) == d(f3, 1));
    CHECK(r.at(2, 3, 1, 3) == f1 * f3);
    CHECK(r.at(3, 2, 2, 3) == neg(d(f2, 3)));
    CHECK(r.at(1, 2, 2, 3) == neg(f2 * f3));
    CHECK(r.at(1, 3, 2, 3) == d(f3, 2));
    // a few displayed zeros
    CHECK(r.at(1, 1, 1, 2).is_zero());
    CHECK(r.at(1, 2, 1, 2).is_zero());
    CHECK(r.at(2, 2, 1, 2).is_zero());
    CHECK(r.at(3, 3, 1, 3).is_zero());
}

TEST_CASE("single-row family: displayed Ricci components") {
    RicciTensor ric = ricci(generic_family1());
    Expr f1 = f(1), f2 = f(2), f3 = f(3);
    CHECK(ric.at(2, 1) == d(f2, 1) - d(f1, 2));
    CHECK(ric.at(2, 2) == neg(d(f2, 2) + f2 * f2));
    CHECK(ric.at(2, 3) == neg(d(f3, 2) + f2 * f3));
    CHECK(ric.at(3, 1) == d(f3, 1) - d(f1, 3));
    CHECK(ric.at(3, 2) == neg(d(f2, 3) + f2 * f3));
    CHECK(ric.at(3, 3) == neg(d(f3, 3) + f3 * f3));
    for (int k = 1; k <= 3; ++k) CHECK(ric.at(1, k).is_zero());
}

TEST_CASE("cyclic-shift family: diagonal Ricci tensor") {
    RicciTensor ric = ricci(generic_family2());
    CHECK(ric.at(1, 1) == d(f(1), 2));
    CHECK(ric.at(2, 2) == d(f(2), 3));
    CHECK(ric.at(3, 3) == d(f(3), 1));
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
            if (j != k) CHECK(ric.at(j, k).is_zero());
}

TEST_CASE("covariant derivative of Ricci: selected component") {
    CovDerivRicci dric = cov_deriv_ricci(generic_family2());
    CHECK(dric.at(2, 2, 2) == d(d(f(2), 3), 2));
}

TEST_CASE("covariant derivative of curvature vanishes for constant flat entries") {
    // constant Christoffels with zero curvature
    std::vector<Expr> gamma(8);
    gamma[0] = Expr::constant(5);  // Γ^1_{11} on a 2-dim chart
    Connection c(Chart::standard(2), std::move(gamma));
    REQUIRE(is_torsion_free(c));
    CurvatureTensor r = curvature(c);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 2; ++k)
                for (int l = 1; l <= 2; ++l) REQUIRE(r.at(i, j, k, l).is_zero());
    CovDerivCurvature dr = cov_deriv_curvature(c);
    for (int m = 1; m <= 2; ++m)
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j)
                for (int k = 1; k <= 2; ++k)
                    for (int l = 1; l <= 2; ++l) CHECK(dr.at(m, i, j, k, l).is_zero());
}

TEST_CASE("cyclic parallel verdicts on the sample connections") {
    CHECK(is_cyclic_parallel(catalog::family1_rotational()).cyclic_parallel);
    CHECK(is_cyclic_parallel(catalog::family1_dilating()).cyclic_parallel);
    CHECK(is_cyclic_parallel(catalog::family2_quadratic()).cyclic_parallel);
}

TEST_CASE("a failing connection reports its first witness triple") {
    // f1 = x2^2 breaks the pure-x2 constraint d2^2 f1 = 0
    Connection c = Connection::family2(pow_int(x(2), 2), Expr{}, Expr{});
    CyclicVerdict v = is_cyclic_parallel(c);
    REQUIRE_FALSE(v.cyclic_parallel);
    REQUIRE(v.witness_indices.has_value());
    CHECK((*v.witness_indices) == std::array<int, 3>{1, 1, 2});
    CHECK(v.witness == Expr::constant(2));
}

TEST_CASE("witnessed verdict agrees with the direction cubic") {
    std::vector<Connection> conns = {
        Connection::family2(pow_int(x(2), 2), Expr{}, Expr{}),
        Connection::family1(x(2), x(1), Expr{}),
    };
    for (const auto& [name, c] : catalog::corpus()) conns.push_back(c);
    conns.push_back(generic_family1());
    conns.push_back(generic_family2());
    for (const Connection& c : conns) {
        CHECK(is_cyclic_parallel(c).cyclic_parallel == cyclic_cubic(c).is_zero());
    }
}

TEST_CASE("a single linear term can break the pure-direction constraint") {
    // f2 = x2 violates d2^2 f2 + 2 f2 d2 f2 = 0 for the single-row family
    Connection c = Connection::family1(Expr{}, x(2), Expr{});
    CHECK_FALSE(is_cyclic_parallel(c).cyclic_parallel);
    CHECK_FALSE(is_affine_szabo(c).is_szabo);
}

TEST_CASE("single-row constraint system matches the reference list") {
    PdeSystem sys = cyclic_parallel_pde_system(FamilyTag::family1);
    REQUIRE(sys.by_direction.size() == 9);
    CHECK(same_system_up_to_scale(sys.equations(), family1_constraint_reference()));

    // spot-check a single direction monomial: pure a3 cubic
    Monomial a3cubed;
    a3cubed.factors.emplace_back(Atom::dir_param(3), 3);
    auto it = sys.by_direction.find(a3cubed);
    REQUIRE(it != sys.by_direction.end());
    CHECK(proportional(it->second, d(d(f(3), 3), 3) + scale(f(3) * d(f(3), 3), 2)));
}

TEST_CASE("cyclic-shift constraint system matches the reference list") {
    PdeSystem sys = cyclic_parallel_pde_system(FamilyTag::family2);
    REQUIRE(sys.by_direction.size() == 9);
    CHECK(same_system_up_to_scale(sys.equations(), family2_constraint_reference()));

    // pure a1 cubic carries the d1 d2 f1 constraint
    Monomial a1cubed;
    a1cubed.factors.emplace_back(Atom::dir_param(1), 3);
    auto it = sys.by_direction.find(a1cubed);
    REQUIRE(it != sys.by_direction.end());
    CHECK(proportional(it->second, d(d(f(1), 1), 2)));

    // a1^2 a2 carries d2^2 f1 - 2 f1 d3 f2
    Monomial m;
    m.factors.emplace_back(Atom::dir_param(1), 2);
    m.factors.emplace_back(Atom::dir_param(2), 1);
    auto it2 = sys.by_direction.find(m);
    REQUIRE(it2 != sys.by_direction.end());
    CHECK(proportional(it2->second, d(d(f(1), 2), 2) - scale(f(1) * d(f(2), 3), 2)));
}

TEST_CASE("first Bianchi identity holds for torsion-free connections") {
    Rng rng(77);
    std::vector<Connection> conns = {generic_family1(), generic_family2(),
                                     catalog::family2_quadratic()};
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Expr> gamma(27);
        for (int i = 1; i <= 3; ++i)
            for (int j = i; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k) {
                    Expr e = sample_polynomial(rng, 3, 2, 2);
                    gamma[((i - 1) * 3 + (j - 1)) * 3 + (k - 1)] = e;
                    gamma[((j - 1) * 3 + (i - 1)) * 3 + (k - 1)] = e;
                }
        conns.emplace_back(Chart::standard(3), std::move(gamma));
    }
    for (const Connection& c : conns) {
        CurvatureTensor r = curvature(c);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                for (int k = 1; k <= 3; ++k)
                    for (int l = 1; l <= 3; ++l) {
                        CHECK((r.at(i, j, k, l) + r.at(i, k, l, j) + r.at(i, l, j, k)).is_zero());
                        CHECK(r.at(i, j, k, l) == neg(r.at(i, j, l, k)));
                    }
    }
}

TEST_CASE("trace of the direction operator equals the cyclic cubic") {
    for (const auto& [name, conn] : catalog::corpus()) {
        CAPTURE(name);
        CHECK(szabo_operator(conn).trace() == cyclic_cubic(conn));
    }
    CHECK(szabo_operator(generic_family1()).trace() == cyclic_cubic(generic_family1()));
    CHECK(szabo_operator(generic_family2()).trace() == cyclic_cubic(generic_family2()));
}

}  // TEST_SUITE
