#include <graphhaus/formula.hpp>
#include <graphhaus/error.hpp>

#include <cctype>
#include <optional>

namespace graphhaus::query
{
    namespace
    {
        struct Token
        {
            enum class Kind
            {
                number,
                identifier,
                kw_and,
                kw_or,
                kw_not,
                open,
                close,
                plus,
                minus,
                star,
                slash,
                comparison,
                end
            };

            Kind kind = Kind::end;
            std::string text;
            std::size_t position = 0;
            Comparison comparison = Comparison::equal;
        };

        auto upper(std::string_view s) -> std::string
        {
            std::string out(s);
            for (auto & c : out)
                c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            return out;
        }

        auto tokenize(std::string_view text) -> std::vector<Token>
        {
            using K = Token::Kind;
            std::vector<Token> tokens;
            std::size_t i = 0;
            auto is_ident_start = [] (char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
            auto is_ident = [] (char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
            auto is_digit = [] (char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };

            while (i < text.size()) {
                char c = text[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    ++i;
                    continue;
                }
                Token t;
                t.position = i;
                if (is_digit(c)) {
                    std::size_t j = i;
                    while (j < text.size() && is_digit(text[j]))
                        ++j;
                    if (j < text.size() && text[j] == '.') {
                        ++j;
                        if (j >= text.size() || ! is_digit(text[j]))
                            throw Error(ErrorCode::syntax_error, "expected digits after decimal point", j);
                        while (j < text.size() && is_digit(text[j]))
                            ++j;
                    }
                    t.kind = K::number;
                    t.text = std::string(text.substr(i, j - i));
                    i = j;
                }
                else if (is_ident_start(c)) {
                    std::size_t j = i;
                    while (j < text.size() && is_ident(text[j]))
                        ++j;
                    t.text = std::string(text.substr(i, j - i));
                    auto word = upper(t.text);
                    t.kind = word == "AND" ? K::kw_and : word == "OR" ? K::kw_or : word == "NOT" ? K::kw_not : K::identifier;
                    i = j;
                }
                else {
                    auto two = text.substr(i, 2);
                    t.kind = K::comparison;
                    if (two == "<=")
                        t.comparison = Comparison::less_equal;
                    else if (two == ">=")
                        t.comparison = Comparison::greater_equal;
                    else if (two == "!=")
                        t.comparison = Comparison::not_equal;
                    else if (c == '<')
                        t.comparison = Comparison::less;
                    else if (c == '>')
                        t.comparison = Comparison::greater;
                    else if (c == '=')
                        t.comparison = Comparison::equal;
                    else {
                        switch (c) {
                            case '(': t.kind = K::open; break;
                            case ')': t.kind = K::close; break;
                            case '+': t.kind = K::plus; break;
                            case '-': t.kind = K::minus; break;
                            case '*': t.kind = K::star; break;
                            case '/': t.kind = K::slash; break;
                            default:
                                throw Error(ErrorCode::syntax_error, std::string("unexpected character '") + c + "'", i);
                        }
                    }
                    std::size_t width = (t.kind == K::comparison && two.size() == 2
                            && (two == "<=" || two == ">=" || two == "!=")) ? 2 : 1;
                    t.text = std::string(text.substr(i, width));
                    i += width;
                }
                tokens.push_back(std::move(t));
            }
            Token end;
            end.kind = K::end;
            end.position = text.size();
            tokens.push_back(end);
            return tokens;
        }

        class Parser
        {
        public:
            explicit Parser(std::vector<Token> tokens) : _tokens(std::move(tokens)) {}

            auto parse() -> FormulaPtr
            {
                auto f = parse_or();
                if (peek().kind != Token::Kind::end)
                    fail("unexpected '" + peek().text + "'");
                return f;
            }

        private:
            using K = Token::Kind;

            auto peek() const -> const Token & { return _tokens[_pos]; }
            auto advance() -> const Token & { return _tokens[_pos++]; }

            [[noreturn]] auto fail(const std::string & message) const -> void
            {
                throw Error(ErrorCode::syntax_error, message, peek().position);
            }

            auto describe() const -> std::string
            {
                return peek().kind == K::end ? "end of input" : "'" + peek().text + "'";
            }

            auto parse_or() -> FormulaPtr
            {
                std::vector<FormulaPtr> children{parse_and()};
                while (peek().kind == K::kw_or) {
                    advance();
                    children.push_back(parse_and());
                }
                return join(Formula::Op::any_of, std::move(children));
            }

            auto parse_and() -> FormulaPtr
            {
                std::vector<FormulaPtr> children{parse_not()};
                while (peek().kind == K::kw_and) {
                    advance();
                    children.push_back(parse_not());
                }
                return join(Formula::Op::all_of, std::move(children));
            }

            static auto join(Formula::Op op, std::vector<FormulaPtr> children) -> FormulaPtr
            {
                if (children.size() == 1)
                    return children.front();
                auto f = std::make_shared<Formula>();
                f->op = op;
                f->children = std::move(children);
                return f;
            }

            auto parse_not() -> FormulaPtr
            {
                if (peek().kind != K::kw_not)
                    return parse_atom();
                advance();
                auto f = std::make_shared<Formula>();
                f->op = Formula::Op::negate;
                f->children.push_back(parse_atom());
                return f;
            }

            auto parse_atom() -> FormulaPtr
            {
                if (peek().kind != K::open)
                    return parse_comparison();

                // "(" starts either a parenthesised formula or an arithmetic
                // operand of a comparison; the two parses never both succeed
                std::size_t start = _pos;
                std::optional<Error> first;
                try {
                    return parse_comparison();
                }
                catch (const Error & e) {
                    if (e.code() != ErrorCode::syntax_error)
                        throw;
                    first = e;
                }
                _pos = start;
                try {
                    advance();
                    auto f = parse_or();
                    if (peek().kind != K::close)
                        fail("expected ')' but found " + describe());
                    advance();
                    return f;
                }
                catch (const Error & e) {
                    if (e.code() == ErrorCode::syntax_error && first->position().value_or(0) > e.position().value_or(0))
                        throw *first;
                    throw;
                }
            }

            auto parse_comparison() -> FormulaPtr
            {
                auto lhs = parse_expr();
                if (peek().kind != K::comparison)
                    fail("expected comparison operator but found " + describe());
                auto cmp = advance().comparison;
                auto rhs = parse_expr();
                auto f = std::make_shared<Formula>();
                f->op = Formula::Op::compare;
                f->comparison = cmp;
                f->lhs = std::move(lhs);
                f->rhs = std::move(rhs);
                return f;
            }

            static auto binary(Expr::Op op, ExprPtr lhs, ExprPtr rhs, std::size_t position) -> ExprPtr
            {
                auto e = std::make_shared<Expr>();
                e->op = op;
                e->lhs = std::move(lhs);
                e->rhs = std::move(rhs);
                e->position = position;
                return e;
            }

            auto parse_expr() -> ExprPtr
            {
                auto lhs = parse_term();
                while (peek().kind == K::plus || peek().kind == K::minus) {
                    auto position = peek().position;
                    auto op = advance().kind == K::plus ? Expr::Op::add : Expr::Op::subtract;
                    lhs = binary(op, lhs, parse_term(), position);
                }
                return lhs;
            }

            auto parse_term() -> ExprPtr
            {
                auto lhs = parse_factor();
                while (peek().kind == K::star || peek().kind == K::slash) {
                    auto position = peek().position;
                    auto op = advance().kind == K::star ? Expr::Op::multiply : Expr::Op::divide;
                    lhs = binary(op, lhs, parse_factor(), position);
                }
                return lhs;
            }

            auto parse_factor() -> ExprPtr
            {
                const auto & t = peek();
                auto e = std::make_shared<Expr>();
                e->position = t.position;
                switch (t.kind) {
                    case K::number:
                        e->op = Expr::Op::number;
                        e->number = parse_rational(t.text);
                        advance();
                        return e;
                    case K::identifier:
                        e->op = Expr::Op::invariant;
                        e->invariant = t.text;
                        advance();
                        return e;
                    case K::open: {
                        advance();
                        auto inner = parse_expr();
                        if (peek().kind != K::close)
                            fail("expected ')' but found " + describe());
                        advance();
                        return inner;
                    }
                    default:
                        fail("expected number, invariant or '(' but found " + describe());
                }
            }

            std::vector<Token> _tokens;
            std::size_t _pos = 0;
        };

        auto collect_invariants(const Expr & e, std::set<std::string> & out) -> void
        {
            if (e.op == Expr::Op::invariant)
                out.insert(e.invariant);
            if (e.lhs)
                collect_invariants(*e.lhs, out);
            if (e.rhs)
                collect_invariants(*e.rhs, out);
        }

        auto collect_invariants(const Formula & f, std::set<std::string> & out) -> void
        {
            if (f.lhs)
                collect_invariants(*f.lhs, out);
            if (f.rhs)
                collect_invariants(*f.rhs, out);
            for (const auto & c : f.children)
                collect_invariants(*c, out);
        }

        auto validate(const Expr & e) -> void
        {
            if (e.op == Expr::Op::invariant) {
                const invariants::InvariantDescriptor * d = nullptr;
                try {
                    d = &invariants::descriptor(e.invariant);
                }
                catch (const Error & err) {
                    throw Error(err.code(), err.what(), e.position);
                }
                if (! d->numerical())
                    throw Error(ErrorCode::non_numerical_invariant,
                            "invariant '" + e.invariant + "' is not numerical", e.position);
            }
            if (e.lhs)
                validate(*e.lhs);
            if (e.rhs)
                validate(*e.rhs);
        }

        auto validate(const Formula & f) -> void
        {
            if (f.lhs)
                validate(*f.lhs);
            if (f.rhs)
                validate(*f.rhs);
            for (const auto & c : f.children)
                validate(*c);
        }

        auto equal(const Expr & a, const Expr & b) -> bool
        {
            if (a.op != b.op)
                return false;
            switch (a.op) {
                case Expr::Op::number: return a.number == b.number;
                case Expr::Op::invariant: return a.invariant == b.invariant;
                default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
            }
        }

        auto equal(const Formula & a, const Formula & b) -> bool
        {
            if (a.op != b.op)
                return false;
            if (a.op == Formula::Op::compare)
                return a.comparison == b.comparison && equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
            if (a.children.size() != b.children.size())
                return false;
            for (std::size_t i = 0 ; i < a.children.size() ; ++i)
                if (! equal(*a.children[i], *b.children[i]))
                    return false;
            return true;
        }

        auto is_additive(const Expr & e) -> bool
        {
            return e.op == Expr::Op::add || e.op == Expr::Op::subtract;
        }

        auto is_leaf(const Expr & e) -> bool
        {
            return e.op == Expr::Op::number || e.op == Expr::Op::invariant;
        }

        auto print(const Expr & e) -> std::string
        {
            auto wrap = [] (const Expr & x, bool parens) {
                return parens ? "(" + print(x) + ")" : print(x);
            };
            switch (e.op) {
                case Expr::Op::number: return to_decimal_string(e.number);
                case Expr::Op::invariant: return e.invariant;
                case Expr::Op::add:
                    return print(*e.lhs) + " + " + wrap(*e.rhs, is_additive(*e.rhs));
                case Expr::Op::subtract:
                    return print(*e.lhs) + " - " + wrap(*e.rhs, is_additive(*e.rhs));
                case Expr::Op::multiply:
                    return wrap(*e.lhs, is_additive(*e.lhs)) + " * " + wrap(*e.rhs, ! is_leaf(*e.rhs));
                case Expr::Op::divide:
                    return wrap(*e.lhs, is_additive(*e.lhs)) + " / " + wrap(*e.rhs, ! is_leaf(*e.rhs));
            }
            return {};
        }

        auto print(const Formula & f) -> std::string
        {
            switch (f.op) {
                case Formula::Op::compare:
                    return print(*f.lhs) + " " + std::string(to_string(f.comparison)) + " " + print(*f.rhs);
                case Formula::Op::negate: {
                    const auto & child = *f.children.front();
                    if (child.op == Formula::Op::compare)
                        return "NOT " + print(child);
                    return "NOT (" + print(child) + ")";
                }
                case Formula::Op::all_of:
                case Formula::Op::any_of: {
                    std::string out;
                    const char * keyword = f.op == Formula::Op::all_of ? " AND " : " OR ";
                    for (std::size_t i = 0 ; i < f.children.size() ; ++i) {
                        const auto & child = *f.children[i];
                        // an AND inside an OR binds tighter and needs no parentheses
                        bool bare = child.op == Formula::Op::compare || child.op == Formula::Op::negate
                            || (f.op == Formula::Op::any_of && child.op == Formula::Op::all_of);
                        if (i > 0)
                            out += keyword;
                        out += bare ? print(child) : "(" + print(child) + ")";
                    }
                    return out;
                }
            }
            return {};
        }

        struct DivisionByZero
        {
        };

        auto evaluate(const Expr & e, const ValueMap & values) -> Rational
        {
            switch (e.op) {
                case Expr::Op::number: return e.number;
                case Expr::Op::invariant: return values.find(e.invariant)->second.as_number();
                case Expr::Op::add: return evaluate(*e.lhs, values) + evaluate(*e.rhs, values);
                case Expr::Op::subtract: return evaluate(*e.lhs, values) - evaluate(*e.rhs, values);
                case Expr::Op::multiply: return evaluate(*e.lhs, values) * evaluate(*e.rhs, values);
                case Expr::Op::divide: {
                    auto denominator = evaluate(*e.rhs, values);
                    if (denominator == 0)
                        throw DivisionByZero{};
                    return evaluate(*e.lhs, values) / denominator;
                }
            }
            return 0;
        }

        auto evaluate(const Formula & f, const ValueMap & values) -> bool
        {
            switch (f.op) {
                case Formula::Op::compare: {
                    auto a = evaluate(*f.lhs, values);
                    auto b = evaluate(*f.rhs, values);
                    switch (f.comparison) {
                        case Comparison::less: return a < b;
                        case Comparison::less_equal: return a <= b;
                        case Comparison::equal: return a == b;
                        case Comparison::not_equal: return a != b;
                        case Comparison::greater_equal: return a >= b;
                        case Comparison::greater: return a > b;
                    }
                    return false;
                }
                case Formula::Op::negate:
                    return ! evaluate(*f.children.front(), values);
                case Formula::Op::all_of: {
                    // no short-circuit: a division by zero anywhere makes the whole formula unknown
                    bool result = true;
                    for (const auto & c : f.children)
                        result = evaluate(*c, values) && result;
                    return result;
                }
                case Formula::Op::any_of: {
                    bool result = false;
                    for (const auto & c : f.children)
                        result = evaluate(*c, values) || result;
                    return result;
                }
            }
            return false;
        }
    }

    auto to_string(Comparison cmp) -> std::string_view
    {
        switch (cmp) {
            case Comparison::less: return "<";
            case Comparison::less_equal: return "<=";
            case Comparison::equal: return "=";
            case Comparison::not_equal: return "!=";
            case Comparison::greater_equal: return ">=";
            case Comparison::greater: return ">";
        }
        return "=";
    }

    FormulaAst::FormulaAst(FormulaPtr root) : _root(std::move(root))
    {
        collect_invariants(*_root, _invariants);
    }

    auto FormulaAst::operator==(const FormulaAst & other) const -> bool
    {
        return equal(*_root, *other._root);
    }

    auto parse_formula(std::string_view text) -> FormulaAst
    {
        auto root = Parser(tokenize(text)).parse();
        validate(*root);
        return FormulaAst(std::move(root));
    }

    auto to_string(const FormulaAst & ast) -> std::string
    {
        return print(ast.root());
    }

    auto eval_formula(const FormulaAst & ast, const ValueMap & values) -> Truth
    {
        for (const auto & id : ast.invariants()) {
            auto it = values.find(id);
            if (it == values.end() || ! it->second.is_computed() || it->second.is_boolean())
                return Truth::unknown;
        }
        try {
            return evaluate(ast.root(), values) ? Truth::yes : Truth::no;
        }
        catch (const DivisionByZero &) {
            return Truth::unknown;
        }
    }
}
