#include "szabolab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace szabolab {

namespace {

struct Token {
    enum Kind { Number, Ident, Punct, End } kind = End;
    std::string text;
    long long number = 0;
    int col = 0;
};

class LineLexer {
public:
    LineLexer(const std::string& line, int line_no) : line_(line), line_no_(line_no) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    bool at_end() const { return tok_.kind == Token::End; }
    [[noreturn]] void fail(const std::string& msg, int col) const {
        throw ParseError(msg, line_no_, col);
    }
    [[noreturn]] void fail_here(const std::string& msg) const { fail(msg, tok_.col); }
    int line_no() const { return line_no_; }

private:
    void advance() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.col = static_cast<int>(pos_) + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            tok_.kind = Token::End;
            return;
        }
        char c = line_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_])))
                ++pos_;
            tok_.kind = Token::Number;
            tok_.text = line_.substr(start, pos_ - start);
            try {
                tok_.number = std::stoll(tok_.text);
            } catch (const std::exception&) {
                fail("integer literal out of range", tok_.col);
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < line_.size() &&
                   (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_' ||
                    line_[pos_] == '-')) {
                // '-' continues an identifier only in family tags like family-1
                if (line_[pos_] == '-' &&
                    !(pos_ + 1 < line_.size() &&
                      std::isalnum(static_cast<unsigned char>(line_[pos_ + 1]))))
                    break;
                if (line_[pos_] == '-' && line_.compare(start, 6, "family") != 0) break;
                ++pos_;
            }
            tok_.kind = Token::Ident;
            tok_.text = line_.substr(start, pos_ - start);
            return;
        }
        tok_.kind = Token::Punct;
        tok_.text = std::string(1, c);
        ++pos_;
    }

    const std::string& line_;
    int line_no_;
    size_t pos_ = 0;
    Token tok_;
};

class ExprParser {
public:
    ExprParser(LineLexer& lex, const ConnectionSpec& spec) : lex_(lex), spec_(spec) {}

    Expr parse() {
        Expr e = parse_sum();
        return e;
    }

private:
    Expr parse_sum() {
        Expr e = parse_term();
        while (!lex_.at_end() && lex_.peek().kind == Token::Punct &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            std::string op = lex_.take().text;
            Expr rhs = parse_term();
            e = op == "+" ? e + rhs : e - rhs;
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (!lex_.at_end() && lex_.peek().kind == Token::Punct && lex_.peek().text == "*") {
            lex_.take();
            e = e * parse_factor();
        }
        return e;
    }

    Expr parse_factor() {
        if (lex_.peek().kind == Token::Punct && lex_.peek().text == "-") {
            lex_.take();
            return neg(parse_factor());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (!lex_.at_end() && lex_.peek().kind == Token::Punct && lex_.peek().text == "^") {
            lex_.take();
            if (lex_.peek().kind != Token::Number)
                lex_.fail_here("expected integer exponent after '^'");
            Token e = lex_.take();
            if (e.number < 0) lex_.fail("exponent must be nonnegative", e.col);
            return pow_int(base, static_cast<int>(e.number));
        }
        return base;
    }

    Expr parse_primary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) {
            Token num = lex_.take();
            if (!lex_.at_end() && lex_.peek().kind == Token::Punct && lex_.peek().text == "/") {
                lex_.take();
                if (lex_.peek().kind != Token::Number)
                    lex_.fail_here("expected integer denominator");
                Token den = lex_.take();
                if (den.number == 0) lex_.fail("zero denominator", den.col);
                return Expr::constant(Rational(num.number) / den.number);
            }
            return Expr::constant(num.number);
        }
        if (t.kind == Token::Ident) {
            Token name = lex_.take();
            // function application
            if (!lex_.at_end() && lex_.peek().kind == Token::Punct && lex_.peek().text == "(") {
                auto decl = std::find_if(spec_.functions.begin(), spec_.functions.end(),
                                         [&](const FunctionDecl& f) { return f.name == name.text; });
                if (decl == spec_.functions.end())
                    lex_.fail("unknown function '" + name.text + "'", name.col);
                lex_.take();  // (
                if (lex_.peek().kind != Token::Ident)
                    lex_.fail_here("expected variable inside function application");
                Token arg = lex_.take();
                int var = variable_index(arg);
                if (var != decl->arg)
                    lex_.fail("function '" + name.text + "' is declared with argument x" +
                                  std::to_string(decl->arg),
                              arg.col);
                expect_punct(")");
                return Expr::atom(Atom::func(name.text, {var}));
            }
            return Expr::chart_var(variable_index(name));
        }
        if (t.kind == Token::Punct && t.text == "(") {
            lex_.take();
            Expr e = parse_sum();
            expect_punct(")");
            return e;
        }
        lex_.fail_here("expected a number, variable, function application, or '('");
    }

    int variable_index(const Token& name) {
        for (size_t v = 0; v < spec_.variables.size(); ++v)
            if (spec_.variables[v] == name.text) return static_cast<int>(v) + 1;
        lex_.fail("unknown variable '" + name.text + "'", name.col);
    }

    void expect_punct(const std::string& p) {
        if (lex_.peek().kind != Token::Punct || lex_.peek().text != p)
            lex_.fail_here("expected '" + p + "'");
        lex_.take();
    }

    LineLexer& lex_;
    const ConnectionSpec& spec_;
};

int expect_index(LineLexer& lex, int dim) {
    if (lex.peek().kind != Token::Number) lex.fail_here("expected index");
    Token t = lex.take();
    if (t.number < 1 || t.number > dim)
        lex.fail("index out of range 1.." + std::to_string(dim), t.col);
    return static_cast<int>(t.number);
}

void expect_punct(LineLexer& lex, const std::string& p) {
    if (lex.peek().kind != Token::Punct || lex.peek().text != p)
        lex.fail_here("expected '" + p + "'");
    lex.take();
}

void expect_line_end(LineLexer& lex) {
    if (!lex.at_end()) lex.fail_here("unexpected trailing input");
}

}  // namespace

ConnectionSpec parse_connection_file(const std::string& text) {
    ConnectionSpec spec;
    bool saw_dim = false;
    bool saw_vars = false;

    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        LineLexer lex(line, line_no);
        if (lex.at_end()) continue;
        if (lex.peek().kind != Token::Ident) lex.fail_here("expected a statement keyword");
        Token keyword = lex.take();

        if (keyword.text == "dim") {
            if (saw_dim) lex.fail("duplicate dim statement", keyword.col);
            if (lex.peek().kind != Token::Number) lex.fail_here("expected dimension");
            Token d = lex.take();
            if (d.number < 1) lex.fail("dimension must be positive", d.col);
            spec.dim = static_cast<int>(d.number);
            saw_dim = true;
            if (!saw_vars) {
                spec.variables.clear();
                for (int v = 1; v <= spec.dim; ++v) spec.variables.push_back("x" + std::to_string(v));
            }
            expect_line_end(lex);
            continue;
        }
        if (!saw_dim) lex.fail("dim must come first", keyword.col);

        if (keyword.text == "vars") {
            saw_vars = true;
            std::vector<std::string> names;
            while (!lex.at_end()) {
                if (lex.peek().kind != Token::Ident) lex.fail_here("expected variable name");
                names.push_back(lex.take().text);
            }
            if (static_cast<int>(names.size()) != spec.dim)
                lex.fail("expected " + std::to_string(spec.dim) + " variable names", keyword.col);
            for (int v = 0; v < spec.dim; ++v) {
                if (names[v] != "x" + std::to_string(v + 1))
                    throw ParseError("variable names are fixed to x1..x" + std::to_string(spec.dim),
                                     line_no, keyword.col);
            }
            spec.variables = std::move(names);
            continue;
        }
        if (keyword.text == "func") {
            if (lex.peek().kind != Token::Ident) lex.fail_here("expected function name");
            Token name = lex.take();
            for (const auto& v : spec.variables)
                if (v == name.text) lex.fail("function name collides with a variable", name.col);
            for (const auto& f : spec.functions)
                if (f.name == name.text) lex.fail("duplicate function '" + name.text + "'", name.col);
            expect_punct(lex, "(");
            if (lex.peek().kind != Token::Ident) lex.fail_here("expected argument variable");
            Token argTok = lex.take();
            int arg = 0;
            for (size_t v = 0; v < spec.variables.size(); ++v)
                if (spec.variables[v] == argTok.text) arg = static_cast<int>(v) + 1;
            if (arg == 0) lex.fail("unknown variable '" + argTok.text + "'", argTok.col);
            expect_punct(lex, ")");
            expect_line_end(lex);
            spec.functions.push_back({name.text, arg});
            continue;
        }
        if (keyword.text == "family") {
            if (lex.peek().kind != Token::Ident) lex.fail_here("expected family tag");
            Token tag = lex.take();
            if (tag.text == "family-1")
                spec.declared_family = FamilyTag::family1;
            else if (tag.text == "family-2")
                spec.declared_family = FamilyTag::family2;
            else if (tag.text == "generic")
                spec.declared_family = FamilyTag::generic;
            else
                lex.fail("expected family-1, family-2, or generic", tag.col);
            expect_line_end(lex);
            continue;
        }
        if (keyword.text == "torsion_free") {
            if (lex.peek().kind != Token::Ident) lex.fail_here("expected true or false");
            Token v = lex.take();
            if (v.text == "true")
                spec.torsion_free_declared = true;
            else if (v.text == "false")
                spec.torsion_free_declared = false;
            else
                lex.fail("expected true or false", v.col);
            expect_line_end(lex);
            continue;
        }
        if (keyword.text == "G") {
            expect_punct(lex, "[");
            int i = expect_index(lex, spec.dim);
            expect_punct(lex, ",");
            int j = expect_index(lex, spec.dim);
            expect_punct(lex, ",");
            int k = expect_index(lex, spec.dim);
            expect_punct(lex, "]");
            expect_punct(lex, "=");
            ExprParser parser(lex, spec);
            Expr value = parser.parse();
            expect_line_end(lex);
            for (const auto& entry : spec.christoffels)
                if (entry.i == i && entry.j == j && entry.k == k)
                    throw ParseError("duplicate entry G[" + std::to_string(i) + "," +
                                         std::to_string(j) + "," + std::to_string(k) + "]",
                                     line_no, keyword.col);
            spec.christoffels.push_back({i, j, k, std::move(value)});
            continue;
        }
        lex.fail("unknown statement '" + keyword.text + "'", keyword.col);
    }

    if (!saw_dim) throw ParseError("missing dim statement", line_no == 0 ? 1 : line_no, 1);
    std::sort(spec.christoffels.begin(), spec.christoffels.end(),
              [](const ChristoffelEntry& a, const ChristoffelEntry& b) {
                  return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
              });
    return spec;
}

Connection ConnectionSpec::to_connection() const {
    const int n = dim;
    std::vector<Expr> gamma(static_cast<size_t>(n) * n * n);
    auto slot = [&](int i, int j, int k) -> Expr& {
        return gamma[((static_cast<size_t>(i - 1) * n) + (j - 1)) * n + (k - 1)];
    };
    std::vector<bool> assigned(gamma.size(), false);
    auto assigned_at = [&](int i, int j, int k) -> std::vector<bool>::reference {
        return assigned[((static_cast<size_t>(i - 1) * n) + (j - 1)) * n + (k - 1)];
    };
    for (const auto& e : christoffels) {
        slot(e.i, e.j, e.k) = e.value;
        assigned_at(e.i, e.j, e.k) = true;
    }
    if (torsion_free_declared) {
        for (const auto& e : christoffels) {
            if (e.i == e.j) continue;
            if (assigned_at(e.j, e.i, e.k)) {
                if (!(slot(e.j, e.i, e.k) == e.value))
                    throw ParseError("inconsistent symmetric entries G[" + std::to_string(e.i) +
                                         "," + std::to_string(e.j) + "," + std::to_string(e.k) +
                                         "] and G[" + std::to_string(e.j) + "," +
                                         std::to_string(e.i) + "," + std::to_string(e.k) + "]",
                                     0, 0);
            } else {
                slot(e.j, e.i, e.k) = e.value;
            }
        }
    }
    FamilyTag tag = declared_family.value_or(FamilyTag::generic);
    return Connection(Chart{n, variables}, std::move(gamma), tag);
}

std::string print_connection_spec(const ConnectionSpec& spec) {
    std::ostringstream out;
    out << "dim " << spec.dim << "\n";
    out << "vars";
    for (const auto& v : spec.variables) out << " " << v;
    out << "\n";
    for (const auto& f : spec.functions) out << "func " << f.name << "(x" << f.arg << ")\n";
    if (spec.declared_family) out << "family " << to_string(*spec.declared_family) << "\n";
    out << "torsion_free " << (spec.torsion_free_declared ? "true" : "false") << "\n";
    for (const auto& e : spec.christoffels) {
        out << "G[" << e.i << "," << e.j << "," << e.k << "] = " << e.value.to_string() << "\n";
    }
    return out.str();
}

Expr parse_expression_text(const std::string& text, const ConnectionSpec& context) {
    LineLexer lex(text, 1);
    ExprParser parser(lex, context);
    Expr e = parser.parse();
    expect_line_end(lex);
    return e;
}

}  // namespace szabolab
