#include "szabolab/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace szabolab {

// ---------------------------------------------------------------------------
// Atom

Atom Atom::chart_var(int index) {
    if (index < 1) throw Error("chart variable index must be positive");
    Atom a;
    a.kind_ = AtomKind::ChartVar;
    a.index_ = index;
    return a;
}

Atom Atom::dir_param(int index) {
    if (index < 1) throw Error("direction parameter index must be positive");
    Atom a;
    a.kind_ = AtomKind::DirParam;
    a.index_ = index;
    return a;
}

Atom Atom::spectral() {
    Atom a;
    a.kind_ = AtomKind::Spectral;
    return a;
}

Atom Atom::func(std::string name, std::vector<int> args) {
    if (name.empty()) throw Error("function atom needs a name");
    std::sort(args.begin(), args.end());
    args.erase(std::unique(args.begin(), args.end()), args.end());
    if (args.empty() || args.front() < 1) throw Error("function atom needs chart-variable arguments");
    Atom a;
    a.kind_ = AtomKind::Func;
    a.name_ = std::move(name);
    a.args_ = std::move(args);
    return a;
}

bool Atom::depends_on(int var) const {
    switch (kind_) {
        case AtomKind::ChartVar: return index_ == var;
        case AtomKind::Func: return std::binary_search(args_.begin(), args_.end(), var);
        default: return false;
    }
}

Atom Atom::differentiated(int var) const {
    if (kind_ != AtomKind::Func || !depends_on(var))
        throw Error("cannot differentiate atom " + to_string() + " by x" + std::to_string(var));
    Atom a = *this;
    a.deriv_.insert(std::upper_bound(a.deriv_.begin(), a.deriv_.end(), var), var);
    return a;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_); c != 0) return c;
    if (auto c = a.name_ <=> b.name_; c != 0) return c;
    if (auto c = a.deriv_.size() <=> b.deriv_.size(); c != 0) return c;
    if (auto c = a.deriv_ <=> b.deriv_; c != 0) return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    return a.args_ <=> b.args_;
}

std::string Atom::to_string() const {
    switch (kind_) {
        case AtomKind::ChartVar: return "x" + std::to_string(index_);
        case AtomKind::DirParam: return "a" + std::to_string(index_);
        case AtomKind::Spectral: return "lam";
        case AtomKind::Func: break;
    }
    std::string s;
    if (!deriv_.empty()) {
        for (int v : deriv_) s += "d" + std::to_string(v);
        s += "(" + name_ + ")";
        return s;
    }
    s = name_ + "(";
    for (size_t i = 0; i < args_.size(); ++i) {
        if (i) s += ",";
        s += "x" + std::to_string(args_[i]);
    }
    s += ")";
    return s;
}

// ---------------------------------------------------------------------------
// Monomial

int Monomial::degree() const {
    int d = 0;
    for (const auto& [a, e] : factors) d += e;
    return d;
}

int Monomial::degree_in(AtomKind kind) const {
    int d = 0;
    for (const auto& [a, e] : factors)
        if (a.kind() == kind) d += e;
    return d;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    out.factors.reserve(factors.size() + other.factors.size());
    size_t i = 0, j = 0;
    while (i < factors.size() && j < other.factors.size()) {
        auto c = factors[i].first <=> other.factors[j].first;
        if (c < 0) {
            out.factors.push_back(factors[i++]);
        } else if (c > 0) {
            out.factors.push_back(other.factors[j++]);
        } else {
            out.factors.emplace_back(factors[i].first, factors[i].second + other.factors[j].second);
            ++i;
            ++j;
        }
    }
    for (; i < factors.size(); ++i) out.factors.push_back(factors[i]);
    for (; j < other.factors.size(); ++j) out.factors.push_back(other.factors[j]);
    return out;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    size_t n = std::min(a.factors.size(), b.factors.size());
    for (size_t t = 0; t < n; ++t) {
        if (a.factors[t].first != b.factors[t].first)
            return a.factors[t].first < b.factors[t].first ? 1 : -1;
        if (a.factors[t].second != b.factors[t].second)
            return a.factors[t].second > b.factors[t].second ? 1 : -1;
    }
    if (a.factors.size() != b.factors.size())
        return a.factors.size() < b.factors.size() ? -1 : 1;
    return 0;
}

std::string Monomial::to_string() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "*";
        s += factors[i].first.to_string();
        if (factors[i].second != 1) s += "^" + std::to_string(factors[i].second);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Expr construction and arithmetic

void Expr::insert_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Expr Expr::constant(long long n) { return constant(Rational(n)); }

Expr Expr::constant(const Rational& q) {
    Expr e;
    if (q != 0) e.terms_.emplace(Monomial{}, q);
    return e;
}

Expr Expr::atom(const Atom& a) {
    Expr e;
    Monomial m;
    m.factors.emplace_back(a, 1);
    e.terms_.emplace(std::move(m), Rational(1));
    return e;
}

Expr Expr::term(Monomial m, Rational c) {
    Expr e;
    if (c != 0) e.terms_.emplace(std::move(m), std::move(c));
    return e;
}

Rational Expr::leading_coefficient() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
}

Expr add(const Expr& a, const Expr& b) {
    Expr out = a;
    for (const auto& [m, c] : b.terms_) out.insert_term(m, c);
    return out;
}

Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }

Expr neg(const Expr& a) {
    Expr out = a;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Expr scale(const Expr& a, const Rational& q) {
    if (q == 0) return Expr{};
    Expr out = a;
    for (auto& [m, c] : out.terms_) c *= q;
    return out;
}

Expr mul(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr{};
    // The graded-lex order is compatible with monomial multiplication, so a
    // single-term factor preserves the term order and the result map can be
    // built directly in order.
    if (a.terms().size() == 1 || b.terms().size() == 1) {
        const auto& [ms, cs] = *(a.terms().size() == 1 ? a : b).terms().begin();
        const Expr& poly = a.terms().size() == 1 ? b : a;
        Expr out;
        for (const auto& [m, c] : poly.terms())
            out.terms_.emplace_hint(out.terms_.end(), ms.times(m), cs * c);
        return out;
    }
    Expr out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            out.insert_term(ma.times(mb), ca * cb);
        }
    }
    return out;
}

Expr pow_int(const Expr& a, int k) {
    if (k < 0) throw Error("pow_int requires a nonnegative exponent");
    Expr out = Expr::constant(1);
    for (int i = 0; i < k; ++i) out = mul(out, a);
    return out;
}

bool is_zero(const Expr& e) { return e.is_zero(); }

// ---------------------------------------------------------------------------
// Differentiation

Expr diff(const Expr& e, int var) {
    if (var < 1) throw Error("diff needs a chart-variable index");
    Expr out;
    for (const auto& [m, c] : e.terms()) {
        // Leibniz over the factors of each monomial.
        for (size_t t = 0; t < m.factors.size(); ++t) {
            const auto& [a, exp] = m.factors[t];
            if (!a.depends_on(var)) continue;
            Monomial rest;
            rest.factors.reserve(m.factors.size());
            for (size_t u = 0; u < m.factors.size(); ++u) {
                if (u == t) {
                    if (exp > 1) rest.factors.emplace_back(a, exp - 1);
                } else {
                    rest.factors.push_back(m.factors[u]);
                }
            }
            if (a.kind() == AtomKind::ChartVar) {
                out.insert_term(rest, c * exp);
            } else {
                Monomial da;
                da.factors.emplace_back(a.differentiated(var), 1);
                out.insert_term(rest.times(da), c * exp);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

Bindings& Bindings::set(const Atom& a, Expr value) {
    map_[a] = std::move(value);
    return *this;
}

Bindings& Bindings::set_zero_dir_params(int from, int to) {
    for (int i = from; i <= to; ++i) set(Atom::dir_param(i), Expr{});
    return *this;
}

namespace {

// Multiset difference b - a where a ⊆ b; nullopt when a is not contained.
std::optional<std::vector<int>> multiset_difference(const std::vector<int>& sub,
                                                    const std::vector<int>& super) {
    std::vector<int> out;
    size_t i = 0;
    for (size_t j = 0; j < super.size(); ++j) {
        if (i < sub.size() && sub[i] == super[j]) {
            ++i;
        } else {
            out.push_back(super[j]);
        }
    }
    if (i != sub.size()) return std::nullopt;
    return out;
}

}  // namespace

std::optional<Expr> Bindings::resolve(const Atom& a) const {
    auto it = map_.find(a);
    if (it != map_.end()) return it->second;
    if (a.kind() != AtomKind::Func) return std::nullopt;
    // Look for a binding of the same function at a lower derivative order and
    // differentiate it up to the requested multiset.
    const Expr* best = nullptr;
    std::vector<int> best_missing;
    bool any_same_function = false;
    for (const auto& [key, value] : map_) {
        if (key.kind() != AtomKind::Func) continue;
        if (key.func_name() != a.func_name() || key.func_args() != a.func_args()) continue;
        any_same_function = true;
        auto missing = multiset_difference(key.deriv(), a.deriv());
        if (!missing) continue;
        if (!best || missing->size() < best_missing.size()) {
            best = &value;
            best_missing = *missing;
        }
    }
    if (!best) {
        if (any_same_function)
            throw SubstitutionError("no binding derivable for " + a.to_string());
        return std::nullopt;
    }
    Expr value = *best;
    for (int v : best_missing) value = diff(value, v);
    return value;
}

Expr substitute(const Expr& e, const Bindings& bindings) {
    if (bindings.empty()) return e;
    std::map<Atom, std::optional<Expr>> cache;
    Expr out;
    for (const auto& [m, c] : e.terms()) {
        Expr term = Expr::constant(c);
        for (const auto& [a, exp] : m.factors) {
            auto it = cache.find(a);
            if (it == cache.end()) it = cache.emplace(a, bindings.resolve(a)).first;
            if (it->second) {
                term = mul(term, pow_int(*it->second, exp));
            } else {
                term = mul(term, pow_int(Expr::atom(a), exp));
            }
        }
        out = add(out, term);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric evaluation and printing

double eval_numeric(const Expr& e, const std::map<Atom, double>& point) {
    double sum = 0.0;
    for (const auto& [m, c] : e.terms()) {
        double term = c.convert_to<double>();
        for (const auto& [a, exp] : m.factors) {
            auto it = point.find(a);
            if (it == point.end()) throw EvalError("unbound atom " + a.to_string());
            for (int k = 0; k < exp; ++k) term *= it->second;
        }
        sum += term;
    }
    return sum;
}

namespace {

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1)
        os << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

}  // namespace

std::string Expr::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational abs = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) s += "-";
            first = false;
        } else {
            s += c < 0 ? " - " : " + ";
        }
        std::string mono = m.to_string();
        if (mono.empty()) {
            s += rational_to_string(abs);
        } else if (abs == 1) {
            s += mono;
        } else {
            s += rational_to_string(abs) + "*" + mono;
        }
    }
    return s;
}

std::string to_string(const Expr& e) { return e.to_string(); }

std::vector<Atom> atoms_of(const Expr& e) {
    std::vector<Atom> out;
    for (const auto& [m, c] : e.terms()) {
        for (const auto& [a, exp] : m.factors) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<Monomial, Expr, MonomialOrder> collect_by_kind(const Expr& e, AtomKind kind) {
    std::map<Monomial, Expr, MonomialOrder> out;
    for (const auto& [m, c] : e.terms()) {
        Monomial key, rest;
        for (const auto& f : m.factors) {
            (f.first.kind() == kind ? key : rest).factors.push_back(f);
        }
        Expr piece = Expr::term(rest, c);
        auto it = out.find(key);
        if (it == out.end()) {
            out.emplace(key, piece);
        } else {
            it->second = add(it->second, piece);
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

bool is_homogeneous_in(const Expr& e, AtomKind kind, int degree) {
    for (const auto& [m, c] : e.terms()) {
        if (m.degree_in(kind) != degree) return false;
    }
    return true;
}

bool proportional(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.terms().size() != b.terms().size()) return false;
    // candidate ratio from the leading terms, then verify globally
    const Rational ratio = a.leading_coefficient() / b.leading_coefficient();
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second != ratio * ib->second) return false;
    }
    return true;
}

}  // namespace szabolab
