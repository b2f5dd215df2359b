#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "szabolab/connection.hpp"

namespace szabolab {

/// Curvature components R^i_{jkl} with R(∂_k,∂_l)∂_j = Σ_i R^i_{jkl} ∂_i.
class CurvatureTensor {
public:
    explicit CurvatureTensor(int n) : n_(n), c_(pow4(n)) {}
    int dim() const { return n_; }
    const Expr& at(int i, int j, int k, int l) const { return c_[idx(i, j, k, l)]; }
    Expr& at(int i, int j, int k, int l) { return c_[idx(i, j, k, l)]; }

private:
    static size_t pow4(int n) { return static_cast<size_t>(n) * n * n * n; }
    size_t idx(int i, int j, int k, int l) const {
        return (((static_cast<size_t>(i - 1) * n_ + (j - 1)) * n_) + (k - 1)) * n_ + (l - 1);
    }
    int n_;
    std::vector<Expr> c_;
};

/// Ric(∂_j,∂_k) = Σ_i R^i_{kij}; not symmetric for a general connection.
class RicciTensor {
public:
    explicit RicciTensor(int n) : n_(n), c_(static_cast<size_t>(n) * n) {}
    int dim() const { return n_; }
    const Expr& at(int j, int k) const { return c_[static_cast<size_t>(j - 1) * n_ + (k - 1)]; }
    Expr& at(int j, int k) { return c_[static_cast<size_t>(j - 1) * n_ + (k - 1)]; }

private:
    int n_;
    std::vector<Expr> c_;
};

/// (∇_{∂_i} Ric)_{jk}.
class CovDerivRicci {
public:
    explicit CovDerivRicci(int n) : n_(n), c_(static_cast<size_t>(n) * n * n) {}
    int dim() const { return n_; }
    const Expr& at(int i, int j, int k) const { return c_[idx(i, j, k)]; }
    Expr& at(int i, int j, int k) { return c_[idx(i, j, k)]; }

private:
    size_t idx(int i, int j, int k) const {
        return ((static_cast<size_t>(i - 1) * n_) + (j - 1)) * n_ + (k - 1);
    }
    int n_;
    std::vector<Expr> c_;
};

/// (∇_{∂_m} R)^i_{jkl}, same slot convention as CurvatureTensor.
class CovDerivCurvature {
public:
    explicit CovDerivCurvature(int n) : n_(n), c_(pow5(n)) {}
    int dim() const { return n_; }
    const Expr& at(int m, int i, int j, int k, int l) const { return c_[idx(m, i, j, k, l)]; }
    Expr& at(int m, int i, int j, int k, int l) { return c_[idx(m, i, j, k, l)]; }

private:
    static size_t pow5(int n) {
        return static_cast<size_t>(n) * n * n * n * n;
    }
    size_t idx(int m, int i, int j, int k, int l) const {
        return ((((static_cast<size_t>(m - 1) * n_ + (i - 1)) * n_ + (j - 1)) * n_) + (k - 1)) * n_ +
               (l - 1);
    }
    int n_;
    std::vector<Expr> c_;
};

/// R^i_{jkl} = ∂_k Γ^i_{lj} - ∂_l Γ^i_{kj} + Σ_m (Γ^i_{km} Γ^m_{lj} - Γ^i_{lm} Γ^m_{kj}).
/// Requires a torsion-free connection (coordinate fields commute).
CurvatureTensor curvature(const Connection& c);

RicciTensor ricci(const Connection& c);
RicciTensor ricci(const CurvatureTensor& r);

/// (∇_{∂_i} Ric)_{jk} = ∂_i Ric_{jk} - Σ_m Γ^m_{ij} Ric_{mk} - Σ_m Γ^m_{ik} Ric_{jm}.
CovDerivRicci cov_deriv_ricci(const Connection& c);

/// (∇_{∂_m} R)^i_{jkl} = ∂_m R^i_{jkl}
///   + Σ_r (Γ^i_{mr} R^r_{jkl} - Γ^r_{mk} R^i_{jrl} - Γ^r_{ml} R^i_{jkr} - Γ^r_{mj} R^i_{rkl}).
CovDerivCurvature cov_deriv_curvature(const Connection& c);

struct CyclicVerdict {
    bool cyclic_parallel = false;
    /// First failing triple (i,j,k) in lexicographic order, with its cyclic sum.
    std::optional<std::array<int, 3>> witness_indices;
    Expr witness;
};

/// Whether the cyclic sum (∇_i Ric)_{jk} + (∇_j Ric)_{ki} + (∇_k Ric)_{ij}
/// vanishes identically for every index triple.
CyclicVerdict is_cyclic_parallel(const Connection& c);

/// (∇_X Ric)(X,X) for X = Σ a_i ∂_i, as a cubic in the direction parameters.
Expr cyclic_cubic(const Connection& c);

/// Coefficients of the cyclic cubic grouped by direction monomial; the values
/// are the constraint expressions whose simultaneous vanishing characterises a
/// cyclic-parallel Ricci tensor for the given generic family.
struct PdeSystem {
    std::map<Monomial, Expr, MonomialOrder> by_direction;
    std::vector<Expr> equations() const;
};

PdeSystem cyclic_parallel_pde_system(FamilyTag family);

/// Family connections with fully generic opaque coefficient functions
/// f1, f2, f3 of all three chart variables.
Connection generic_family1();
Connection generic_family2();
/// The generic coefficient function f_i(x1,x2,x3) used by the generic families.
Expr generic_coefficient(int i);

/// Hand-expanded constraint sets used as independent cross-checks of the
/// derived systems (one expression per equation, scale not normalised).
std::vector<Expr> family1_constraint_reference();
std::vector<Expr> family2_constraint_reference();

/// Multiset equality up to a nonzero rational scale per element.
bool same_system_up_to_scale(std::vector<Expr> a, std::vector<Expr> b);

}  // namespace szabolab
