#include "szabolab/catalog.hpp"

namespace szabolab {
namespace catalog {

namespace {
Expr x(int i) { return Expr::chart_var(i); }
}  // namespace

Connection family1_rotational() {
    return Connection::family1(Expr{}, neg(x(3)), x(2));
}

Connection family1_dilating() {
    return Connection::family1(x(1), scale(x(3), 2), scale(x(2), -2));
}

Connection family2_quadratic() {
    return Connection::family2(pow_int(x(1), 2), x(1) + x(2), x(2) + pow_int(x(3), 2));
}

Connection family2_cascade() {
    return Connection::family2(Expr{}, x(2), x(2) + pow_int(x(3), 2));
}

Connection family2_planar() {
    return Connection::family2(pow_int(x(1), 2), x(1) + x(2), Expr{});
}

std::vector<std::pair<std::string, Connection>> corpus() {
    std::vector<std::pair<std::string, Connection>> out;
    out.emplace_back("flat", Connection::flat(3));
    out.emplace_back("family1-rotational", family1_rotational());
    out.emplace_back("family1-dilating", family1_dilating());
    out.emplace_back("family2-quadratic", family2_quadratic());
    out.emplace_back("family2-cascade", family2_cascade());
    out.emplace_back("family2-planar", family2_planar());
    return out;
}

}  // namespace catalog
}  // namespace szabolab
