#pragma once

#include "pjcalc/structures.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace pj::frontend {

using Value = std::variant<Scalar, Multivector, DiffForm, FirstOrderOp, FormPair>;

/// Canonical deterministic rendering; parse(print(v)) == v.
std::string print_canonical(const Value& v);
std::string print_canonical(const Scalar& s);
std::string print_canonical(const Multivector& t);
std::string print_canonical(const DiffForm& t);
std::string print_canonical(const FirstOrderOp& d);
std::string print_canonical(const FormPair& p);

struct SourcePos {
    int line = 0;
    int column = 0;
};

class parse_error : public error {
public:
    parse_error(const std::string& what, SourcePos pos)
        : error(what + " (line " + std::to_string(pos.line) + ", column " +
                std::to_string(pos.column) + ")"),
          pos(pos) {}
    SourcePos pos;
};

// --- AST ---------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Number,    // rational literal
        Name,      // binding, chart variable, or d-prefixed covector
        BasisVec,  // @x
        ZeroLit,   // 0 : deg k [form]
        Absent,    // _, the missing component of a degree-0 pair
        Neg, Add, Sub, Mul, Wedge, Power, Pair,
    };
    Kind kind;
    SourcePos pos;
    Rational number;         // Number
    std::string name;        // Name / BasisVec
    int int_arg = 0;         // Power exponent, ZeroLit degree
    bool form_marker = false; // ZeroLit
    ExprPtr a, b;
};

struct Statement {
    enum class Kind { ChartDecl, Assign, Command };
    Kind kind;
    SourcePos pos;
    // ChartDecl
    std::string chart_name;
    std::vector<std::string> chart_vars;
    std::string homog_var; // empty if none
    // Assign
    std::string target; // also used when a command result is bound
    // Command
    std::string command;   // e.g. "snbracket", "check poisson", "eval"
    std::vector<ExprPtr> args;
    std::vector<std::pair<std::string, Rational>> point_args; // eval
    ExprPtr value; // Assign from plain expression
};

struct Program {
    std::vector<Statement> statements;
};

Program parse_program(const std::string& text);

// --- Session -----------------------------------------------------------

struct StatementResult {
    std::string output; // possibly multi-line, no trailing newline
    int status = 0;     // 0 pass / 1 check failed / 2 error
};

class Session {
public:
    StatementResult execute(const Statement& st);

    const ChartPtr& chart() const { return chart_; }
    const std::map<std::string, Value>& bindings() const { return bindings_; }

    /// Parses a single expression against the current session (test hook and
    /// the round-trip direction of the printer).
    Value eval_expression(const std::string& text);

private:
    Value eval(const Expr& e);
    StatementResult run_command(const Statement& st);
    const HomogeneousSetup& setup();
    void bind(const std::string& name, Value v, SourcePos pos);

    ChartPtr chart_;
    std::optional<HomogeneousSetup> setup_;
    std::map<std::string, Value> bindings_;
};

struct RunResult {
    std::string output;
    int exit_code; // run: 0 or 2; check: 0/1/2 aggregated
};

RunResult run_program(const std::string& text, bool check_mode);

} // namespace pj::frontend
