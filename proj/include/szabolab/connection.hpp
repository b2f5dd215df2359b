#pragma once

#include <string>
#include <vector>

#include "szabolab/expr.hpp"

namespace szabolab {

/// Coordinate chart: dimension plus the display names of its variables.
struct Chart {
    int dim = 0;
    std::vector<std::string> names;  ///< names[i-1] displays variable i

    static Chart standard(int n);  ///< x1 ... xn
};

enum class FamilyTag { generic, family1, family2 };

std::string to_string(FamilyTag tag);

/// Dense rank-3 array of expressions, 1-based indices.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), c_(static_cast<size_t>(n) * n * n) {}
    int dim() const { return n_; }
    const Expr& at(int i, int j, int k) const { return c_[idx(i, j, k)]; }
    Expr& at(int i, int j, int k) { return c_[idx(i, j, k)]; }

private:
    size_t idx(int i, int j, int k) const {
        return ((static_cast<size_t>(i - 1) * n_) + (j - 1)) * n_ + (k - 1);
    }
    int n_ = 0;
    std::vector<Expr> c_;
};

/// Affine connection on a chart, stored through its Christoffel symbols
/// Γ^k_{ij} = gamma(i,j,k). Immutable after construction; the family tag is
/// advisory only and never consulted by the predicates.
class Connection {
public:
    Connection(Chart chart, std::vector<Expr> gamma, FamilyTag tag = FamilyTag::generic);

    static Connection flat(int n);
    /// All covariant derivatives of the coordinate fields point along ∂_dir:
    /// Γ^dir_{1j} = Γ^dir_{j1} = f_j on a 3-dimensional chart.
    static Connection family1_directed(int dir, Expr f1, Expr f2, Expr f3);
    static Connection family1(Expr f1, Expr f2, Expr f3) {
        return family1_directed(1, std::move(f1), std::move(f2), std::move(f3));
    }
    /// Γ^2_{11} = f1, Γ^3_{22} = f2, Γ^1_{33} = f3 on a 3-dimensional chart.
    static Connection family2(Expr f1, Expr f2, Expr f3);

    int dim() const { return chart_.dim; }
    const Chart& chart() const { return chart_; }
    /// Γ^k_{ij}, 1-based.
    const Expr& gamma(int i, int j, int k) const {
        return gamma_[((static_cast<size_t>(i - 1) * dim()) + (j - 1)) * dim() + (k - 1)];
    }
    FamilyTag family() const { return tag_; }

private:
    Chart chart_;
    std::vector<Expr> gamma_;
    FamilyTag tag_;
};

/// Torsion components T^k_{ij} = Γ^k_{ij} - Γ^k_{ji}.
Tensor3 torsion(const Connection& c);

bool is_torsion_free(const Connection& c);

/// Block-diagonal sum on the product chart: the second summand's variables
/// (and opaque-function arguments) are shifted past the first chart.
Connection direct_sum(const Connection& a, const Connection& b);

/// Expression with every chart-variable index (and opaque-function argument)
/// shifted by `offset`. Direction parameters are left alone.
Expr shift_chart_vars(const Expr& e, int offset);

}  // namespace szabolab
