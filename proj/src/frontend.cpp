#include "pjcalc/frontend.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace pj::frontend {

// --- Canonical printer ---------------------------------------------------

namespace {

void append_monomial_vars(std::ostream& out, const ChartPtr& chart, const Scalar::Expo& e) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        out << " " << chart->variables()[i];
        if (e[i] != 1) out << "^" << e[i];
    }
}

std::string rational_abs(const Rational& r) {
    return (r < 0 ? Rational(-r) : r).str();
}

} // namespace

std::string print_canonical(const Scalar& s) {
    if (s.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending exponent order, so "q - p" prints as "1 q - 1 p"
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
        const auto& e = it->first;
        const auto& c = it->second;
        bool neg = c < 0;
        if (first) out << (neg ? "-" : "");
        else out << (neg ? " - " : " + ");
        first = false;
        out << rational_abs(c);
        append_monomial_vars(out, s.chart(), e);
    }
    return out.str();
}

namespace {

template <Variance V>
std::string print_tensor(const Tensor<V>& t) {
    constexpr bool is_form = (V == Variance::Co);
    if (t.degree() == 0) return print_canonical(t.to_scalar());
    if (t.is_zero()) {
        std::string z = "0 : deg " + std::to_string(t.degree());
        if (is_form) z += " form";
        return z;
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, coeff] : t.terms()) {
        std::ostringstream body;
        bool neg = false;
        if (coeff.is_monomial()) {
            const auto& [e, c] = *coeff.terms().begin();
            neg = c < 0;
            body << rational_abs(c);
            append_monomial_vars(body, t.chart(), e);
        } else {
            body << "(" << print_canonical(coeff) << ")";
        }
        for (std::size_t i = 0; i < key.size(); ++i) {
            body << (i == 0 ? " " : "^") << (is_form ? "d" : "@")
                 << t.chart()->variables()[static_cast<std::size_t>(key[i])];
        }
        if (first) out << (neg ? "-" : "");
        else out << (neg ? " - " : " + ");
        first = false;
        out << body.str();
    }
    return out.str();
}

} // namespace

std::string print_canonical(const Multivector& t) { return print_tensor(t); }
std::string print_canonical(const DiffForm& t) { return print_tensor(t); }

std::string print_canonical(const FirstOrderOp& d) {
    std::string second = d.degree() == 0 ? "_" : print_canonical(d.d1);
    return "(" + print_canonical(d.d0) + ", " + second + ")";
}

std::string print_canonical(const FormPair& p) {
    std::string second = p.degree() == 0 ? "_" : print_canonical(p.a1);
    return "(" + print_canonical(p.a0) + ", " + second + ")";
}

std::string print_canonical(const Value& v) {
    return std::visit([](const auto& x) { return print_canonical(x); }, v);
}

// --- Lexer ----------------------------------------------------------------

namespace {

enum class Tok {
    Ident, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen,
    Comma, Equals, Semi, Colon, Underscore, At, Newline, End
};

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> toks;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t) { toks.push_back({k, std::move(t), {line, col}}); };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (c == '\n') {
            push(Tok::Newline, "\n");
            ++i; ++line; col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; continue; }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(Tok::Ident, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push(Tok::Int, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '^': k = Tok::Caret; break;
            case '/': k = Tok::Slash; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ',': k = Tok::Comma; break;
            case '=': k = Tok::Equals; break;
            case ';': k = Tok::Semi; break;
            case ':': k = Tok::Colon; break;
            case '_': k = Tok::Underscore; break;
            case '@': k = Tok::At; break;
            default:
                throw parse_error(std::string("lexical error: unexpected character '") + c + "'",
                                  {line, col});
        }
        push(k, std::string(1, c));
        ++i; ++col;
    }
    toks.push_back({Tok::End, "", {line, col}});
    return toks;
}

const std::set<std::string>& command_keywords() {
    static const std::set<std::string> k = {
        "snbracket", "sjbracket", "d", "d1", "lie", "wedge", "pair", "degree",
        "decompose", "J", "JN", "poissonize", "psi", "psiN", "check",
        "invert", "contact", "hamiltonian", "eval"};
    return k;
}

// --- Parser ----------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program parse() {
        Program prog;
        skip_separators();
        while (!at(Tok::End)) {
            prog.statements.push_back(statement());
            end_of_statement();
        }
        return prog;
    }

    ExprPtr parse_single_expression() {
        skip_separators();
        ExprPtr e = expr();
        skip_separators();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    const Token& peek(int ahead = 0) const {
        std::size_t i = pos_ + static_cast<std::size_t>(ahead);
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k, int ahead = 0) const { return peek(ahead).kind == k; }
    bool at_ident(const char* s, int ahead = 0) const {
        return at(Tok::Ident, ahead) && peek(ahead).text == s;
    }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    const Token& expect(Tok k, const char* what) {
        if (!at(k)) throw parse_error(std::string("syntax error: expected ") + what +
                                      ", got '" + peek().text + "'", peek().pos);
        return advance();
    }
    void skip_separators() {
        while (at(Tok::Newline) || at(Tok::Semi)) advance();
    }
    void end_of_statement() {
        if (at(Tok::End)) return;
        if (!at(Tok::Newline) && !at(Tok::Semi))
            throw parse_error("syntax error: expected end of statement, got '" + peek().text + "'",
                              peek().pos);
        skip_separators();
    }

    Statement statement() {
        SourcePos pos = peek().pos;
        if (at_ident("chart")) return chart_decl();
        if (at(Tok::Ident) && command_keywords().count(peek().text)) {
            Statement st = command_statement();
            st.pos = pos;
            return st;
        }
        // assignment: IDENT '='
        if (at(Tok::Ident) && at(Tok::Equals, 1)) {
            std::string target = advance().text;
            advance(); // '='
            Statement st;
            if (at(Tok::Ident) && command_keywords().count(peek().text)) {
                st = command_statement();
            } else {
                st.kind = Statement::Kind::Assign;
                st.value = expr();
            }
            st.target = target;
            st.pos = pos;
            return st;
        }
        throw parse_error("syntax error: expected statement, got '" + peek().text + "'", pos);
    }

    Statement chart_decl() {
        Statement st;
        st.kind = Statement::Kind::ChartDecl;
        st.pos = peek().pos;
        advance(); // chart
        st.chart_name = expect(Tok::Ident, "chart name").text;
        expect(Tok::LParen, "'('");
        st.chart_vars.push_back(expect(Tok::Ident, "variable name").text);
        while (at(Tok::Comma)) {
            advance();
            st.chart_vars.push_back(expect(Tok::Ident, "variable name").text);
        }
        expect(Tok::RParen, "')'");
        if (at_ident("homog")) {
            advance();
            st.homog_var = expect(Tok::Ident, "homogeneity variable").text;
        }
        return st;
    }

    Statement command_statement() {
        Statement st;
        st.kind = Statement::Kind::Command;
        std::string name = advance().text;
        if (name == "invert") {
            expect(Tok::Minus, "'-symplectic'");
            if (!at_ident("symplectic"))
                throw parse_error("syntax error: unknown command 'invert-" + peek().text + "'",
                                  peek().pos);
            advance();
            name = "invert-symplectic";
        } else if (name == "contact") {
            expect(Tok::Minus, "'-reduce'");
            if (!at_ident("reduce"))
                throw parse_error("syntax error: unknown command 'contact-" + peek().text + "'",
                                  peek().pos);
            advance();
            name = "contact-reduce";
        } else if (name == "check") {
            const Token& sub = expect(Tok::Ident, "check kind (poisson|jacobi|nambu|contact)");
            if (sub.text != "poisson" && sub.text != "jacobi" && sub.text != "nambu" &&
                sub.text != "contact")
                throw parse_error("syntax error: unknown check kind '" + sub.text + "'", sub.pos);
            name = "check " + sub.text;
        }
        st.command = name;
        if (name == "eval") {
            st.args.push_back(expr());
            while (at(Tok::Comma)) {
                advance();
                std::string var = expect(Tok::Ident, "variable name").text;
                expect(Tok::Equals, "'='");
                st.point_args.emplace_back(var, rational_literal());
            }
            return st;
        }
        if (!at(Tok::Newline) && !at(Tok::Semi) && !at(Tok::End)) {
            st.args.push_back(expr());
            while (at(Tok::Comma)) {
                advance();
                st.args.push_back(expr());
            }
        }
        return st;
    }

    Rational rational_literal() {
        bool neg = false;
        if (at(Tok::Minus)) { advance(); neg = true; }
        Integer num(expect(Tok::Int, "number").text);
        Integer den(1);
        if (at(Tok::Slash)) {
            advance();
            den = Integer(expect(Tok::Int, "denominator").text);
        }
        Rational r(num, den);
        return neg ? Rational(-r) : r;
    }

    // expr := wedge_chain { (+|-) wedge_chain }
    ExprPtr expr() {
        ExprPtr a = wedge_chain();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool plus = at(Tok::Plus);
            SourcePos pos = advance().pos;
            ExprPtr b = wedge_chain();
            auto n = std::make_shared<Expr>();
            n->kind = plus ? Expr::Kind::Add : Expr::Kind::Sub;
            n->pos = pos;
            n->a = a;
            n->b = b;
            a = n;
        }
        return a;
    }

    ExprPtr wedge_chain() {
        ExprPtr a = product();
        while (at(Tok::Caret)) {
            SourcePos pos = advance().pos;
            ExprPtr b = product();
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::Wedge;
            n->pos = pos;
            n->a = a;
            n->b = b;
            a = n;
        }
        return a;
    }

    bool starts_primary() const {
        return at(Tok::Ident) || at(Tok::Int) || at(Tok::At) || at(Tok::LParen) ||
               at(Tok::Underscore);
    }

    ExprPtr product() {
        ExprPtr a = unary();
        while (at(Tok::Star) || starts_primary()) {
            SourcePos pos = peek().pos;
            if (at(Tok::Star)) advance();
            ExprPtr b = unary();
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::Mul;
            n->pos = pos;
            n->a = a;
            n->b = b;
            a = n;
        }
        return a;
    }

    ExprPtr unary() {
        if (at(Tok::Minus)) {
            SourcePos pos = advance().pos;
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::Neg;
            n->pos = pos;
            n->a = unary();
            return n;
        }
        return primary();
    }

    ExprPtr primary() {
        SourcePos pos = peek().pos;
        if (at(Tok::Underscore)) {
            advance();
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::Absent;
            n->pos = pos;
            return n;
        }
        if (at(Tok::At)) {
            advance();
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::BasisVec;
            n->pos = pos;
            n->name = expect(Tok::Ident, "variable after '@'").text;
            return n;
        }
        if (at(Tok::Int)) {
            std::string text = advance().text;
            // typed zero literal: 0 : deg K [form]
            if (text == "0" && at(Tok::Colon)) {
                advance();
                if (!at_ident("deg"))
                    throw parse_error("syntax error: expected 'deg' after ':'", peek().pos);
                advance();
                bool neg = false;
                if (at(Tok::Minus)) { advance(); neg = true; }
                int deg = std::stoi(expect(Tok::Int, "degree").text);
                auto n = std::make_shared<Expr>();
                n->kind = Expr::Kind::ZeroLit;
                n->pos = pos;
                n->int_arg = neg ? -deg : deg;
                if (at_ident("form")) { advance(); n->form_marker = true; }
                return n;
            }
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::Number;
            n->pos = pos;
            Integer num(text);
            Integer den(1);
            if (at(Tok::Slash)) {
                advance();
                den = Integer(expect(Tok::Int, "denominator").text);
            }
            n->number = Rational(num, den);
            return maybe_power(n);
        }
        if (at(Tok::Ident)) {
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::Name;
            n->pos = pos;
            n->name = advance().text;
            return maybe_power(n);
        }
        if (at(Tok::LParen)) {
            advance();
            ExprPtr a = expr();
            if (at(Tok::Comma)) {
                advance();
                ExprPtr b;
                if (at(Tok::Underscore)) {
                    advance();
                    auto abs = std::make_shared<Expr>();
                    abs->kind = Expr::Kind::Absent;
                    abs->pos = pos;
                    b = abs;
                } else {
                    b = expr();
                }
                expect(Tok::RParen, "')'");
                auto n = std::make_shared<Expr>();
                n->kind = Expr::Kind::Pair;
                n->pos = pos;
                n->a = a;
                n->b = b;
                return n;
            }
            expect(Tok::RParen, "')'");
            return a;
        }
        throw parse_error("syntax error: expected expression, got '" + peek().text + "'", pos);
    }

    // Laurent power: scalar atom followed by '^' and a (possibly negative)
    // integer. A '^' followed by anything else stays a wedge.
    ExprPtr maybe_power(ExprPtr base) {
        if (!at(Tok::Caret)) return base;
        int exponent;
        if (at(Tok::Int, 1)) {
            advance();
            exponent = std::stoi(advance().text);
        } else if (at(Tok::Minus, 1) && at(Tok::Int, 2)) {
            advance(); advance();
            exponent = -std::stoi(advance().text);
        } else {
            return base;
        }
        auto n = std::make_shared<Expr>();
        n->kind = Expr::Kind::Power;
        n->pos = base->pos;
        n->a = base;
        n->int_arg = exponent;
        return n;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Program parse_program(const std::string& text) { return Parser(lex(text)).parse(); }

// --- Evaluation -------------------------------------------------------------

namespace {

Scalar as_scalar(const Value& v, SourcePos pos) {
    if (const Scalar* s = std::get_if<Scalar>(&v)) return *s;
    if (const Multivector* m = std::get_if<Multivector>(&v); m && m->degree() == 0)
        return m->to_scalar();
    if (const DiffForm* f = std::get_if<DiffForm>(&v); f && f->degree() == 0)
        return f->to_scalar();
    throw parse_error("type error: expected a scalar", pos);
}

Multivector as_mv(const Value& v, SourcePos pos) {
    if (const Multivector* m = std::get_if<Multivector>(&v)) return *m;
    if (const Scalar* s = std::get_if<Scalar>(&v)) return Multivector::from_scalar(*s);
    throw parse_error("type error: expected a multivector", pos);
}

DiffForm as_form(const Value& v, SourcePos pos) {
    if (const DiffForm* f = std::get_if<DiffForm>(&v)) return *f;
    if (const Scalar* s = std::get_if<Scalar>(&v)) return DiffForm::from_scalar(*s);
    throw parse_error("type error: expected a differential form", pos);
}

FirstOrderOp as_op(const Value& v, SourcePos pos) {
    if (const FirstOrderOp* d = std::get_if<FirstOrderOp>(&v)) return *d;
    if (const Multivector* m = std::get_if<Multivector>(&v)) return FirstOrderOp::embed(*m);
    if (const Scalar* s = std::get_if<Scalar>(&v)) return FirstOrderOp::from_scalar(*s);
    throw parse_error("type error: expected a first-order operator", pos);
}

FormPair as_pair(const Value& v, SourcePos pos) {
    if (const FormPair* p = std::get_if<FormPair>(&v)) return *p;
    if (const DiffForm* f = std::get_if<DiffForm>(&v)) return FormPair::embed(*f);
    if (const Scalar* s = std::get_if<Scalar>(&v)) return FormPair::from_scalar(*s);
    throw parse_error("type error: expected a form pair", pos);
}

Value normalize(Value v) {
    if (const Multivector* m = std::get_if<Multivector>(&v); m && m->degree() == 0)
        return m->to_scalar();
    if (const DiffForm* f = std::get_if<DiffForm>(&v); f && f->degree() == 0)
        return f->to_scalar();
    return v;
}

} // namespace

const HomogeneousSetup& Session::setup() {
    if (!chart_) throw error("no chart declared");
    if (!setup_) setup_ = HomogeneousSetup::product(chart_);
    return *setup_;
}

void Session::bind(const std::string& name, Value v, SourcePos pos) {
    if (bindings_.count(name))
        throw parse_error("name '" + name + "' already bound in this session", pos);
    if (chart_ && chart_->contains(name))
        throw parse_error("name '" + name + "' shadows a chart variable", pos);
    if (chart_ && name.size() > 1 && name[0] == 'd' && chart_->contains(name.substr(1)))
        throw parse_error("name '" + name + "' is reserved for the covector d" + name.substr(1),
                          pos);
    if (command_keywords().count(name))
        throw parse_error("name '" + name + "' is a reserved command", pos);
    bindings_.emplace(name, std::move(v));
}

Value Session::eval(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number:
            if (!chart_) throw parse_error("no chart declared", e.pos);
            return Scalar::constant(chart_, e.number);
        case Expr::Kind::Name: {
            auto it = bindings_.find(e.name);
            if (it != bindings_.end()) return it->second;
            if (!chart_) throw parse_error("no chart declared", e.pos);
            if (chart_->contains(e.name)) return Scalar::variable(chart_, e.name);
            if (e.name.size() > 1 && e.name[0] == 'd' && chart_->contains(e.name.substr(1)))
                return DiffForm::basis(chart_, e.name.substr(1));
            throw parse_error("undefined name '" + e.name + "'", e.pos);
        }
        case Expr::Kind::BasisVec:
            if (!chart_) throw parse_error("no chart declared", e.pos);
            if (!chart_->contains(e.name))
                throw parse_error("unknown variable '@" + e.name + "'", e.pos);
            return Multivector::basis(chart_, e.name);
        case Expr::Kind::ZeroLit: {
            if (!chart_) throw parse_error("no chart declared", e.pos);
            if (e.int_arg == 0) return Scalar::zero(chart_);
            if (e.form_marker) return DiffForm::zero(chart_, e.int_arg);
            return Multivector::zero(chart_, e.int_arg);
        }
        case Expr::Kind::Absent:
            throw parse_error("'_' is only meaningful as the second component of a pair", e.pos);
        case Expr::Kind::Neg:
            return normalize(std::visit([](const auto& x) -> Value { return -x; }, eval(*e.a)));
        case Expr::Kind::Add:
        case Expr::Kind::Sub: {
            Value a = eval(*e.a);
            Value b = eval(*e.b);
            bool add = e.kind == Expr::Kind::Add;
            if (a.index() != b.index()) {
                // allow scalar +- degree-0 typed values via coercion
                if (std::holds_alternative<Scalar>(a) || std::holds_alternative<Scalar>(b)) {
                    if (std::holds_alternative<Multivector>(a) || std::holds_alternative<Multivector>(b)) {
                        Multivector ma = as_mv(a, e.pos), mb = as_mv(b, e.pos);
                        return normalize(add ? ma + mb : ma - mb);
                    }
                    if (std::holds_alternative<DiffForm>(a) || std::holds_alternative<DiffForm>(b)) {
                        DiffForm fa = as_form(a, e.pos), fb = as_form(b, e.pos);
                        return normalize(add ? fa + fb : fa - fb);
                    }
                }
                throw parse_error("type error: cannot add values of different kinds", e.pos);
            }
            return normalize(std::visit(
                [&](const auto& x) -> Value {
                    using T = std::decay_t<decltype(x)>;
                    const T& y = std::get<T>(b);
                    return add ? x + y : x - y;
                },
                a));
        }
        case Expr::Kind::Mul: {
            Value a = eval(*e.a);
            Value b = eval(*e.b);
            if (std::holds_alternative<Scalar>(a) && std::holds_alternative<Scalar>(b))
                return std::get<Scalar>(a) * std::get<Scalar>(b);
            if (std::holds_alternative<Scalar>(a))
                return normalize(std::visit(
                    [&](const auto& x) -> Value { return x * std::get<Scalar>(a); }, b));
            if (std::holds_alternative<Scalar>(b))
                return normalize(std::visit(
                    [&](const auto& x) -> Value { return x * std::get<Scalar>(b); }, a));
            throw parse_error("type error: '*' needs a scalar factor (use '^' for wedge)", e.pos);
        }
        case Expr::Kind::Wedge: {
            Value a = eval(*e.a);
            Value b = eval(*e.b);
            if (std::holds_alternative<FirstOrderOp>(a) || std::holds_alternative<FirstOrderOp>(b))
                return op_wedge(as_op(a, e.pos), as_op(b, e.pos));
            if (std::holds_alternative<FormPair>(a) || std::holds_alternative<FormPair>(b))
                return pair_wedge(as_pair(a, e.pos), as_pair(b, e.pos));
            if (std::holds_alternative<DiffForm>(a) || std::holds_alternative<DiffForm>(b))
                return normalize(wedge(as_form(a, e.pos), as_form(b, e.pos)));
            if (std::holds_alternative<Multivector>(a) || std::holds_alternative<Multivector>(b))
                return normalize(wedge(as_mv(a, e.pos), as_mv(b, e.pos)));
            return std::get<Scalar>(a) * std::get<Scalar>(b);
        }
        case Expr::Kind::Power: {
            Value a = eval(*e.a);
            return as_scalar(a, e.pos).pow(e.int_arg);
        }
        case Expr::Kind::Pair: {
            Value a = eval(*e.a);
            bool absent = e.b->kind == Expr::Kind::Absent;
            std::optional<Value> b;
            if (!absent) b = eval(*e.b);
            bool formish = std::holds_alternative<DiffForm>(a) ||
                           (b && std::holds_alternative<DiffForm>(*b));
            if (formish) {
                DiffForm a0 = as_form(a, e.pos);
                DiffForm a1 = b ? as_form(*b, e.pos) : DiffForm::zero(a0.chart(), a0.degree() - 1);
                if (a1.degree() != a0.degree() - 1 && a1.is_zero())
                    a1 = DiffForm::zero(a0.chart(), a0.degree() - 1);
                return FormPair(std::move(a0), std::move(a1));
            }
            Multivector d0 = as_mv(a, e.pos);
            Multivector d1 = b ? as_mv(*b, e.pos) : Multivector::zero(d0.chart(), d0.degree() - 1);
            if (d1.degree() != d0.degree() - 1 && d1.is_zero())
                d1 = Multivector::zero(d0.chart(), d0.degree() - 1);
            return FirstOrderOp(std::move(d0), std::move(d1));
        }
    }
    throw error("internal: unhandled expression kind");
}

Value Session::eval_expression(const std::string& text) {
    ExprPtr e = Parser(lex(text)).parse_single_expression();
    return eval(*e);
}

namespace {

std::string degree_text(const DegreeResult& dr) {
    switch (dr.kind) {
        case DegreeResult::Kind::ZeroTensor: return "zero tensor";
        case DegreeResult::Kind::Homogeneous: return "degree = " + to_string(dr.degree);
        case DegreeResult::Kind::NotHomogeneous: return "not homogeneous";
    }
    return "";
}

} // namespace

StatementResult Session::run_command(const Statement& st) {
    auto arg = [&](std::size_t i) -> Value {
        if (i >= st.args.size())
            throw parse_error("command '" + st.command + "': missing argument", st.pos);
        return eval(*st.args[i]);
    };
    auto want_args = [&](std::size_t n) {
        if (st.args.size() != n)
            throw parse_error("command '" + st.command + "' expects " + std::to_string(n) +
                              " argument(s)", st.pos);
    };
    const std::string& c = st.command;
    std::optional<Value> bound;
    StatementResult res;

    if (c == "snbracket") {
        want_args(2);
        Value r = normalize(sn_bracket(as_mv(arg(0), st.pos), as_mv(arg(1), st.pos)));
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "sjbracket") {
        want_args(2);
        Value r = sj_bracket(as_op(arg(0), st.pos), as_op(arg(1), st.pos));
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "d") {
        want_args(1);
        Value a = arg(0);
        Value r = std::holds_alternative<Scalar>(a)
                      ? Value(differential(std::get<Scalar>(a)))
                      : Value(exterior_derivative(as_form(a, st.pos)));
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "d1") {
        want_args(1);
        Value r = jacobi_differential(as_pair(arg(0), st.pos));
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "lie") {
        want_args(2);
        Multivector x = as_mv(arg(0), st.pos);
        Value t = arg(1);
        Value r = std::visit(
            [&](const auto& v) -> Value {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Scalar> || std::is_same_v<T, Multivector> ||
                              std::is_same_v<T, DiffForm>)
                    return normalize(lie_derivative(x, v));
                else
                    throw parse_error("lie: second argument must be a tensor", st.pos);
            },
            t);
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "wedge") {
        want_args(2);
        Value a = arg(0), b = arg(1);
        auto product_of = [&]() -> Value {
            if (std::holds_alternative<FirstOrderOp>(a) || std::holds_alternative<FirstOrderOp>(b))
                return op_wedge(as_op(a, st.pos), as_op(b, st.pos));
            if (std::holds_alternative<FormPair>(a) || std::holds_alternative<FormPair>(b))
                return pair_wedge(as_pair(a, st.pos), as_pair(b, st.pos));
            if (std::holds_alternative<DiffForm>(a) || std::holds_alternative<DiffForm>(b))
                return normalize(wedge(as_form(a, st.pos), as_form(b, st.pos)));
            return normalize(wedge(as_mv(a, st.pos), as_mv(b, st.pos)));
        };
        Value r = product_of();
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "pair") {
        want_args(2);
        Value r = pairing(as_mv(arg(0), st.pos), as_form(arg(1), st.pos));
        res.output = print_canonical(std::get<Scalar>(r));
        bound = r;
    } else if (c == "degree") {
        if (st.args.size() != 1 && st.args.size() != 2)
            throw parse_error("degree expects 1 or 2 arguments", st.pos);
        Multivector delta = st.args.size() == 2 ? as_mv(arg(1), st.pos) : setup().delta;
        Value t = arg(0);
        DegreeResult dr = std::visit(
            [&](const auto& v) -> DegreeResult {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, FormPair>)
                    throw parse_error("degree: unsupported operand", st.pos);
                else
                    return homogeneity_degree(v, delta);
            },
            t);
        res.output = degree_text(dr);
    } else if (c == "decompose") {
        want_args(1);
        DeltaDecomposition dec = decompose_along_delta(as_mv(arg(0), st.pos), setup());
        Value r = FirstOrderOp(dec.p0, dec.p1);
        res.output = "(" + print_canonical(dec.p0) + ", " + print_canonical(dec.p1) + ")";
        bound = r;
    } else if (c == "J" || c == "JN") {
        want_args(1);
        ReducedOp r = c == "J" ? reduce_J(as_mv(arg(0), st.pos), setup())
                               : reduce_JN(as_mv(arg(0), st.pos), setup());
        res.output = print_canonical(r.op);
        if (!r.homogeneous) res.output += "  [homogeneity violated]";
        bound = Value(r.op);
    } else if (c == "poissonize") {
        want_args(1);
        Value r = poissonize(as_op(arg(0), st.pos), setup());
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "psi" || c == "psiN") {
        want_args(1);
        ReducedPair r = c == "psi" ? psi(as_form(arg(0), st.pos), setup())
                                   : psi_N(as_form(arg(0), st.pos), setup());
        res.output = print_canonical(r.pair);
        if (!r.homogeneous) res.output += "  [homogeneity violated]";
        bound = Value(r.pair);
    } else if (c == "check poisson") {
        want_args(1);
        PoissonCheck pc = is_poisson(as_mv(arg(0), st.pos));
        if (pc.ok) res.output = "pass";
        else {
            res.output = "fail: [[L,L]] = " + print_canonical(pc.obstruction);
            res.status = 1;
        }
    } else if (c == "check jacobi") {
        want_args(1);
        JacobiCheck jc = is_jacobi(as_op(arg(0), st.pos));
        if (jc.ok) res.output = "pass";
        else {
            res.output = "fail: [[D,D]]1 = " + print_canonical(jc.obstruction);
            res.status = 1;
        }
    } else if (c == "check nambu") {
        want_args(1);
        Value v = arg(0);
        NambuReport nr = std::holds_alternative<FirstOrderOp>(v)
                             ? nambu_check(std::get<FirstOrderOp>(v))
                             : nambu_check(as_mv(v, st.pos));
        if (nr.ok) res.output = "pass";
        else {
            res.output = "fail: " + nr.witness;
            res.status = 1;
        }
    } else if (c == "check contact") {
        want_args(1);
        DiffForm omega = as_form(arg(0), st.pos);
        try {
            ContactData cd = contact_reduce(omega, setup());
            res.output = "pass: eta = " + print_canonical(cd.eta);
        } catch (const error& err) {
            res.output = std::string("fail: ") + err.what();
            res.status = 1;
        }
    } else if (c == "invert-symplectic") {
        want_args(1);
        Value r = invert_symplectic(as_form(arg(0), st.pos));
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "contact-reduce") {
        want_args(1);
        ContactData cd = contact_reduce(as_form(arg(0), st.pos), setup());
        res.output = "eta = " + print_canonical(cd.eta) + "\nd_eta = " + print_canonical(cd.d_eta) +
                     "\nreeb = " + print_canonical(cd.reeb);
        bound = Value(cd.eta);
    } else if (c == "hamiltonian") {
        want_args(2);
        Value r = normalize(hamiltonian_poisson(as_mv(arg(0), st.pos), as_scalar(arg(1), st.pos)));
        res.output = print_canonical(r);
        bound = r;
    } else if (c == "eval") {
        want_args(1);
        Point pt;
        for (const auto& [name, val] : st.point_args) pt.assignment[name] = val;
        Value v = arg(0);
        Value r = std::visit(
            [&](const auto& x) -> Value {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Scalar>)
                    return Scalar::constant(x.chart(), x.evaluate(pt));
                else if constexpr (std::is_same_v<T, Multivector> || std::is_same_v<T, DiffForm>)
                    return normalize(eval_at_point(x, pt));
                else
                    throw parse_error("eval: unsupported operand", st.pos);
            },
            v);
        res.output = print_canonical(r);
        bound = r;
    } else {
        throw parse_error("unknown command '" + c + "'", st.pos);
    }

    if (!st.target.empty()) {
        if (!bound)
            throw parse_error("result of '" + c + "' cannot be bound to a name", st.pos);
        bind(st.target, std::move(*bound), st.pos);
    }
    return res;
}

StatementResult Session::execute(const Statement& st) {
    switch (st.kind) {
        case Statement::Kind::ChartDecl: {
            if (chart_) throw parse_error("chart already declared in this session", st.pos);
            std::optional<std::string> homog;
            if (!st.homog_var.empty()) homog = st.homog_var;
            chart_ = make_chart(st.chart_vars, homog);
            return {};
        }
        case Statement::Kind::Assign: {
            bind(st.target, eval(*st.value), st.pos);
            return {};
        }
        case Statement::Kind::Command:
            return run_command(st);
    }
    throw error("internal: unhandled statement kind");
}

RunResult run_program(const std::string& text, bool check_mode) {
    std::ostringstream out;
    int worst = 0;
    try {
        Program prog = parse_program(text);
        Session session;
        for (const auto& st : prog.statements) {
            try {
                StatementResult r = session.execute(st);
                if (!r.output.empty()) out << r.output << "\n";
                if (r.status > worst) worst = r.status;
            } catch (const error& err) {
                out << "error: " << err.what() << "\n";
                return {out.str(), 2};
            }
        }
    } catch (const error& err) {
        out << "error: " << err.what() << "\n";
        return {out.str(), 2};
    }
    if (!check_mode && worst == 1) worst = 0; // run reports, check aggregates
    return {out.str(), worst};
}

} // namespace pj::frontend
