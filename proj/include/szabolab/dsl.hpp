#pragma once

#include <optional>
#include <string>
#include <vector>

#include "szabolab/connection.hpp"

namespace szabolab {

/// Declaration of an opaque coefficient function of one chart variable.
struct FunctionDecl {
    std::string name;
    int arg = 0;  ///< 1-based chart variable index

    friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

struct ChristoffelEntry {
    int i = 0, j = 0, k = 0;  ///< G[i,j,k] stores the coefficient of ∂_k in ∇_{∂_i}∂_j
    Expr value;

    friend bool operator==(const ChristoffelEntry&, const ChristoffelEntry&) = default;
};

/// Parsed connection-definition file.
///
/// Grammar (line oriented, '#' starts a comment):
///   dim N
///   vars x1 ... xN            (optional; names are fixed to x1..xN)
///   func name(xi)             (zero or more)
///   family family-1|family-2|generic   (optional, advisory)
///   torsion_free true|false   (optional; true symmetrizes declared entries)
///   G[i,j,k] = <expr>
/// Expressions use + - * ^ with integer or num/den rational literals,
/// chart variables, and applications of declared functions.
struct ConnectionSpec {
    int dim = 0;
    std::vector<std::string> variables;
    std::vector<FunctionDecl> functions;
    bool torsion_free_declared = false;
    std::optional<FamilyTag> declared_family;
    std::vector<ChristoffelEntry> christoffels;

    Connection to_connection() const;

    friend bool operator==(const ConnectionSpec&, const ConnectionSpec&) = default;
};

ConnectionSpec parse_connection_file(const std::string& text);

/// Canonical text form; parsing it again yields an equal spec.
std::string print_connection_spec(const ConnectionSpec& spec);

/// Parse a single expression in the context of a spec's declarations
/// (exposed for fixtures and tests).
Expr parse_expression_text(const std::string& text, const ConnectionSpec& context);

}  // namespace szabolab
