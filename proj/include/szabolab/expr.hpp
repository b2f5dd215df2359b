#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace szabolab {

/// Exact rational scalar used for every polynomial coefficient.
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// A connection with nonvanishing torsion was passed where a symmetric one is required.
struct TorsionError : Error {
    using Error::Error;
};
/// A function atom occurred whose value cannot be derived from the given bindings.
struct SubstitutionError : Error {
    using Error::Error;
};
/// Numeric evaluation hit an atom with no assigned value.
struct EvalError : Error {
    using Error::Error;
};
/// Metric is not of the expected invertible block form.
struct MetricError : Error {
    using Error::Error;
};
struct ParseError : Error {
    int line;
    int col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

/// The kinds are ordered; the enum values fix the global atom order.
enum class AtomKind : int {
    ChartVar = 0,  ///< coordinate x_i
    DirParam = 1,  ///< direction component a_i of the probed vector field
    Spectral = 2,  ///< the eigenvalue variable of characteristic polynomials
    Func = 3,      ///< opaque smooth function of chart variables, possibly differentiated
};

/// An indeterminate of the polynomial ring.
///
/// Function atoms model generic smooth coefficient functions: `func("f", {1})`
/// is f(x1), and differentiating it yields a fresh, algebraically independent
/// atom per derivative multiset. Mixed partials commute by construction
/// because the multiset is kept sorted.
class Atom {
public:
    static Atom chart_var(int index);
    static Atom dir_param(int index);
    static Atom spectral();
    /// Opaque function of the given chart variables (sorted, unique, nonempty).
    static Atom func(std::string name, std::vector<int> args);

    AtomKind kind() const { return kind_; }
    /// Variable index for ChartVar/DirParam atoms (1-based).
    int index() const { return index_; }
    const std::string& func_name() const { return name_; }
    const std::vector<int>& func_args() const { return args_; }
    /// Sorted multiset of differentiation directions, e.g. {2,3} for d2d3(f).
    const std::vector<int>& deriv() const { return deriv_; }
    int deriv_order() const { return static_cast<int>(deriv_.size()); }

    /// Derivative with respect to chart variable `var`; requires `depends_on(var)`.
    Atom differentiated(int var) const;
    /// Whether d/dx_var is nonzero on this atom.
    bool depends_on(int var) const;

    std::string to_string() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

private:
    AtomKind kind_ = AtomKind::ChartVar;
    int index_ = 0;
    std::string name_;
    std::vector<int> args_;
    std::vector<int> deriv_;
};

/// Product of atom powers with positive exponents, factors sorted by atom.
struct Monomial {
    std::vector<std::pair<Atom, int>> factors;

    int degree() const;
    int degree_in(AtomKind kind) const;
    Monomial times(const Monomial& other) const;
    std::string to_string() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Three-way graded-lexicographic comparison (higher degree sorts first).
int compare_grlex(const Monomial& a, const Monomial& b);

struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare_grlex(a, b) > 0;
    }
};

class Bindings;

/// Canonical multivariate polynomial: sorted monomials with nonzero exact
/// rational coefficients. Equality of canonical forms decides identical
/// vanishing under the convention that distinct atoms are algebraically
/// independent. Values are immutable once built; all operations return new
/// expressions.
class Expr {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Expr() = default;  ///< zero
    static Expr constant(long long n);
    static Expr constant(const Rational& q);
    static Expr atom(const Atom& a);
    /// Single-term expression c * m (canonical: zero c gives the zero expression).
    static Expr term(Monomial m, Rational c);
    static Expr chart_var(int i) { return atom(Atom::chart_var(i)); }
    static Expr dir_param(int i) { return atom(Atom::dir_param(i)); }
    static Expr spectral() { return atom(Atom::spectral()); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Grlex-leading coefficient; zero for the zero expression.
    Rational leading_coefficient() const;

    std::string to_string() const;

    friend bool operator==(const Expr&, const Expr&) = default;

    friend Expr add(const Expr& a, const Expr& b);
    friend Expr neg(const Expr& a);
    friend Expr mul(const Expr& a, const Expr& b);
    friend Expr scale(const Expr& a, const Rational& q);
    friend Expr diff(const Expr& e, int var);

private:
    TermMap terms_;
    void insert_term(const Monomial& m, const Rational& c);
};

Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr mul(const Expr& a, const Expr& b);
Expr scale(const Expr& a, const Rational& q);
Expr pow_int(const Expr& a, int k);

/// Partial derivative with respect to chart variable x_var. Linear, Leibniz;
/// direction parameters and the spectral variable are constants.
Expr diff(const Expr& e, int var);

bool is_zero(const Expr& e);

/// Substitution map from atoms to expressions, applied simultaneously.
///
/// Binding a function atom covers every higher derivative of the same
/// function that occurs: the replacement is obtained by differentiating the
/// bound expression. A derivative atom with no derivable binding raises
/// SubstitutionError.
class Bindings {
public:
    Bindings& set(const Atom& a, Expr value);
    Bindings& set_zero_dir_params(int from, int to);
    /// Resolved replacement for `a`, or nullopt when `a` stays untouched.
    std::optional<Expr> resolve(const Atom& a) const;
    bool empty() const { return map_.empty(); }

private:
    std::map<Atom, Expr> map_;
};

Expr substitute(const Expr& e, const Bindings& bindings);

/// Evaluate at a point assigning a value to every atom occurring in e.
double eval_numeric(const Expr& e, const std::map<Atom, double>& point);

std::string to_string(const Expr& e);

/// Sorted unique atoms occurring in e.
std::vector<Atom> atoms_of(const Expr& e);

/// Group terms by their sub-monomial in atoms of the given kind.
/// Every returned value is free of `kind` atoms.
std::map<Monomial, Expr, MonomialOrder> collect_by_kind(const Expr& e, AtomKind kind);

/// True when every monomial has the exact given degree in `kind` atoms
/// (vacuously true for the zero expression).
bool is_homogeneous_in(const Expr& e, AtomKind kind, int degree);

/// a == q*b for some nonzero rational q (zero expressions are proportional
/// only to each other).
bool proportional(const Expr& a, const Expr& b);

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }

}  // namespace szabolab
