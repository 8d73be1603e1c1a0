#ifndef GRAPHHAUS_FORMULA_HPP
#define GRAPHHAUS_FORMULA_HPP

#include <graphhaus/invariants.hpp>
#include <graphhaus/rational.hpp>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace graphhaus::query
{
    struct Expr;
    using ExprPtr = std::shared_ptr<const Expr>;

    /// Arithmetic over numeric literals and numerical invariant ids.
    struct Expr
    {
        enum class Op
        {
            number,
            invariant,
            add,
            subtract,
            multiply,
            divide
        };

        Op op = Op::number;
        Rational number;
        std::string invariant;
        ExprPtr lhs, rhs;
        /// Byte offset in the source text.
        std::size_t position = 0;
    };

    enum class Comparison
    {
        less,
        less_equal,
        equal,
        not_equal,
        greater_equal,
        greater
    };

    auto to_string(Comparison cmp) -> std::string_view;

    struct Formula;
    using FormulaPtr = std::shared_ptr<const Formula>;

    struct Formula
    {
        enum class Op
        {
            compare,
            all_of,
            any_of,
            negate
        };

        Op op = Op::compare;
        Comparison comparison = Comparison::equal;
        ExprPtr lhs, rhs;
        /// Operands of all_of / any_of (two or more) and negate (one).
        std::vector<FormulaPtr> children;
    };

    enum class Truth
    {
        yes,
        no,
        unknown
    };

    class FormulaAst
    {
    public:
        explicit FormulaAst(FormulaPtr root);

        auto root() const -> const Formula & { return *_root; }

        /// Every invariant id referenced by a leaf.
        auto invariants() const -> const std::set<std::string> & { return _invariants; }

        /// Structural equality; source positions are ignored.
        auto operator==(const FormulaAst & other) const -> bool;

    private:
        FormulaPtr _root;
        std::set<std::string> _invariants;
    };

    /// Parses the formula grammar. Keywords AND, OR and NOT are
    /// case-insensitive. Throws Error(syntax_error) with a byte position,
    /// Error(unknown_invariant) or Error(non_numerical_invariant).
    auto parse_formula(std::string_view text) -> FormulaAst;

    /// Text that parses back to an equal AST.
    auto to_string(const FormulaAst & ast) -> std::string;

    using ValueMap = std::map<std::string, invariants::InvariantValue, std::less<>>;

    /// Exact rational evaluation. Unknown when any referenced invariant is
    /// not computed, or when any division by zero occurs.
    auto eval_formula(const FormulaAst & ast, const ValueMap & values) -> Truth;
}

#endif
