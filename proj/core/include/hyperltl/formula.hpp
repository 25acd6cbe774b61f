#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hyperltl {

enum class Op {
    Exists,
    Forall,
    Atom,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Eventually,
    Globally,
    Until,
    Release,
    WeakUntil,
    TraceEq,  // p ={a,b} q : all positions agree on the listed atoms
    TraceNeq, // p !={a,b} q : negation of the above
};

/// Immutable HyperLTL formula. Copies share structure; equality is structural.
class Formula {
public:
    // Leaves
    static Formula atom(std::string ap, std::string var);
    static Formula truth();
    static Formula falsity();
    static Formula trace_eq(std::string lhs_var, std::vector<std::string> atoms, std::string rhs_var);
    static Formula trace_neq(std::string lhs_var, std::vector<std::string> atoms, std::string rhs_var);

    // Quantifiers
    static Formula exists(std::string var, Formula body);
    static Formula forall(std::string var, Formula body);

    // Connectives
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula iff(Formula lhs, Formula rhs);
    static Formula next(Formula f);
    static Formula eventually(Formula f);
    static Formula globally(Formula f);
    static Formula until(Formula lhs, Formula rhs);
    static Formula release(Formula lhs, Formula rhs);
    static Formula weak_until(Formula lhs, Formula rhs);

    static Formula unary(Op op, Formula f);
    static Formula binary(Op op, Formula lhs, Formula rhs);

    Op op() const noexcept;

    /// Bound variable of a quantifier, or the trace variable of an atom / left side of a trace equality.
    const std::string& var() const;
    /// Right-hand trace variable of a trace (in)equality.
    const std::string& other_var() const;
    /// Proposition name of an atom.
    const std::string& ap() const;
    /// Proposition list of a trace (in)equality.
    const std::vector<std::string>& eq_atoms() const;

    std::size_t num_children() const noexcept;
    const Formula& child(std::size_t i) const;
    const Formula& operand() const { return child(0); }
    const Formula& lhs() const { return child(0); }
    const Formula& rhs() const { return child(1); }
    /// Body of a quantifier.
    const Formula& body() const { return child(0); }

    bool is_quantifier() const noexcept { return op() == Op::Exists || op() == Op::Forall; }
    bool is_literal() const noexcept;

    /// Concrete syntax accepted by parse_formula.
    std::string to_string() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
    /// Structural total order, usable as a set/map key.
    friend bool operator<(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Quantifier {
    enum class Kind { Exists, Forall };
    Kind kind;
    std::string var;

    friend bool operator==(const Quantifier&, const Quantifier&) = default;
};

/// A formula split into its quantifier prefix and quantifier-free body.
struct Prenex {
    std::vector<Quantifier> prefix;
    Formula body;
};

/// Splits the leading quantifiers off; throws UnsupportedFragment when a
/// quantifier appears below a Boolean or temporal operator.
Prenex split_prenex(const Formula& f);
Formula join_prenex(const std::vector<Quantifier>& prefix, const Formula& body);

bool is_quantifier_free(const Formula& f);
std::set<std::string> free_variables(const Formula& f);
/// Proposition names occurring in f (atoms and trace-equality lists).
std::set<std::string> atoms_of(const Formula& f);

/// Parses the concrete syntax
///
///   formula := quant* body
///   quant   := ("forall" | "exists") IDENT "."
///   body    := binary | unary | atomexpr | "(" body ")"
///
/// with precedence (loosest first) <->, ->, |, &, {U,R,W}, {!,X,F,G}.
/// `->` and the temporal binaries associate to the right, the rest to the left.
/// Formulas with a quantifier prefix must be closed; bare bodies may have free variables.
Formula parse_formula(std::string_view text);

/// Rewrites F, G, W, ->, <-> and trace (in)equalities into {atom, !, &, |, X, U, R, true, false}.
Formula desugar(const Formula& f);

/// Negation normal form of desugar(f): negations only on atoms; double negations removed.
Formula to_nnf(const Formula& f);

/// Logical negation with negation pushed through a quantifier prefix.
Formula negate(const Formula& f);

struct FragmentClass {
    enum class Kind { QuantifierFree, Universal, ForallExists, ExistsForall, Unsupported };

    Kind kind = Kind::QuantifierFree;
    /// Width of the leading quantifier block.
    std::size_t leading = 0;
    /// Width of the second block (0 for universal / purely existential).
    std::size_t trailing = 0;
    /// Number of quantifier alternations (only meaningful for Unsupported).
    std::size_t alternations = 0;

    std::string to_string() const;
    friend bool operator==(const FragmentClass&, const FragmentClass&) = default;
};

FragmentClass classify(const Formula& f);

} // namespace hyperltl
