#pragma once

#include "szabolab/szabo.hpp"

namespace szabolab {

/// Neutral-signature metric on the cotangent chart of an n-dimensional base:
/// coordinates x_1..x_n (base) and x_{n+1}..x_{2n} (fiber). The base-fiber
/// block is the identity pairing, the fiber-fiber block vanishes, and the
/// base-base block is linear in the fiber coordinates.
class NeutralMetric {
public:
    NeutralMetric(int base_dim, std::vector<Expr> g);

    int base_dim() const { return n_; }
    int dim() const { return 2 * n_; }
    const Expr& at(int a, int b) const { return g_[static_cast<size_t>(a - 1) * dim() + (b - 1)]; }

private:
    int n_;
    std::vector<Expr> g_;
};

/// Cotangent-bundle metric with g(∂_i,∂_j) = -2 Σ_k x_{n+k} Γ^k_{ij},
/// g(∂_i,∂_{n+j}) = δ_ij and vanishing fiber-fiber block.
NeutralMetric riemannian_extension(const Connection& c);

/// Exact inverse exploiting the block form: swaps the pairing blocks and
/// negates the base-base block into the fiber-fiber corner. Row-major 2n×2n.
std::vector<Expr> metric_inverse(const NeutralMetric& g);

/// Levi-Civita connection from the Koszul formula
/// Γ^γ_{αβ} = 1/2 Σ_δ g^{γδ} (∂_α g_{δβ} + ∂_β g_{αδ} - ∂_δ g_{αβ}).
Connection levi_civita_koszul(const NeutralMetric& g);

/// Levi-Civita connection of the extension metric written directly in terms
/// of the base Christoffels (primes denote fiber indices, k' = k+n):
///   Γ^k_{ij} unchanged,  Γ^{k'}_{i'j} = -Γ^i_{jk},  Γ^{k'}_{ij'} = -Γ^j_{ik},
///   Γ^{k'}_{ij} = Σ_r x_{r'} (∂_k Γ^r_{ij} - ∂_i Γ^r_{jk} - ∂_j Γ^r_{ik}
///                             + 2 Σ_l Γ^r_{kl} Γ^l_{ij}).
Connection levi_civita_closed_form(const Connection& c);

/// Covariant derivative of the metric under `conn`; identically zero exactly
/// when the connection is metric.
bool is_metric_compatible(const Connection& conn, const NeutralMetric& g);

/// Nilpotency of the direction-cubic operator of the extension metric, probed
/// with all 2n direction parameters symbolic. Uses the Koszul-derived
/// connection so the closed form stays available as an independent route.
SzaboVerdict is_pseudo_szabo(const NeutralMetric& g);

/// Structure of the extension operator relative to the base operator S:
/// vanishing upper-right block, base block equal to S once the fiber
/// direction parameters are switched off, lower-right block equal to the
/// transpose of S, and the characteristic polynomial splitting into
/// P(S)·P(transpose S) as an exact identity.
struct BlockReport {
    bool upper_right_zero = false;
    bool base_block_matches = false;
    bool transpose_block_matches = false;
    bool factorization_holds = false;

    bool ok() const {
        return upper_right_zero && base_block_matches && transpose_block_matches &&
               factorization_holds;
    }
};

BlockReport check_block_structure(const Connection& c);

/// The three curvature-component identities tying the extension to its base
/// (fiber slots written with plane-plane-argument lower ordering):
///   R̃^h_{kji} = R^h_{kji},  R̃^{h'}_{kji'} = -R^i_{kjh},  R̃^{h'}_{k'ji} = R^k_{hij}.
struct ExtensionCurvatureChecks {
    bool base_block = false;
    bool fiber_argument_block = false;
    bool mixed_block = false;

    bool ok() const { return base_block && fiber_argument_block && mixed_block; }
};

ExtensionCurvatureChecks check_extension_curvature_identities(const Connection& c);

}  // namespace szabolab
