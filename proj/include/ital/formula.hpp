#pragma once

// Abstract syntax, concrete syntax and normalization of interactive temporal
// assumption formulas.
//
// Concrete syntax (loosest to tightest binding):
//
//   formula := iff
//   iff     := imp ( "<->" imp )*
//   imp     := or ( "->" imp )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := ( "!" | "X" | "G" | "F" | "B[" agent "," agent "]"
//              | "A[" agent "," agent "]" ) unary
//            | atom
//   atom    := ident | "Ua" | "Ub" | "D" | "true" | "false" | "(" formula ")"
//   agent   := "a" | "b"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ital
{

enum class agent : std::uint8_t { a, b };

[[nodiscard]] constexpr agent other( agent who ) { return who == agent::a ? agent::b : agent::a; }
[[nodiscard]] constexpr char to_char( agent who ) { return who == agent::a ? 'a' : 'b'; }

enum class op : std::uint8_t
{
    prop,
    sort,        // Ua / Ub
    diag,        // D
    truth,
    falsity,
    negation,
    conjunction,
    disjunction,
    implication,
    equivalence,
    next,
    always,
    sometime,
    believe,
    assume,
};

[[nodiscard]] constexpr bool is_atom( op kind )
{
    return kind == op::prop || kind == op::sort || kind == op::diag || kind == op::truth || kind == op::falsity;
}

[[nodiscard]] constexpr bool is_unary( op kind )
{
    return kind == op::negation || kind == op::next || kind == op::always || kind == op::sometime
           || kind == op::believe || kind == op::assume;
}

[[nodiscard]] constexpr bool is_binary( op kind ) { return !is_atom( kind ) && !is_unary( kind ); }

// Words that can never name a proposition. The first five are atoms with
// fixed meaning, the last three are the temporal prefix operators.
inline constexpr std::string_view reserved_words[] = { "Ua", "Ub", "D", "true", "false", "X", "G", "F" };

[[nodiscard]] inline bool is_reserved( std::string_view word )
{
    for ( auto r : reserved_words )
        if ( r == word )
            return true;
    return false;
}

[[nodiscard]] inline bool is_identifier( std::string_view word )
{
    auto alpha = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ); };
    auto digit = []( char c ) { return c >= '0' && c <= '9'; };
    if ( word.empty() || !alpha( word.front() ) )
        return false;
    for ( char c : word )
        if ( !alpha( c ) && !digit( c ) && c != '_' )
            return false;
    return true;
}

[[nodiscard]] inline bool is_proposition_name( std::string_view word )
{
    return is_identifier( word ) && !is_reserved( word );
}

// Immutable formula tree with shared subterms. Copies are cheap.
class formula
{
    struct node
    {
        op kind;
        std::string name;
        agent first = agent::a;
        agent second = agent::a;
        std::shared_ptr< const node > lhs;
        std::shared_ptr< const node > rhs;
    };

    std::shared_ptr< const node > _node;

    explicit formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}

    static formula make( op kind, std::string name = {}, agent first = agent::a, agent second = agent::a,
                         const formula* lhs = nullptr, const formula* rhs = nullptr )
    {
        return formula{ std::make_shared< const node >(
                node{ kind, std::move( name ), first, second, lhs ? lhs->_node : nullptr,
                      rhs ? rhs->_node : nullptr } ) };
    }

public:
    // The default formula is the diagonal atom; it only exists so that
    // formulas can live in containers.
    formula() : formula{ diag() } {}

    static formula prop( std::string name )
    {
        if ( !is_proposition_name( name ) )
            throw std::invalid_argument( "invalid proposition name '" + name + "'" );
        return make( op::prop, std::move( name ) );
    }
    static formula sort( agent who ) { return make( op::sort, {}, who ); }
    static formula diag()
    {
        static const formula d = make( op::diag );
        return d;
    }
    static formula truth() { return make( op::truth ); }
    static formula falsity() { return make( op::falsity ); }

    static formula negation( const formula& f ) { return make( op::negation, {}, {}, {}, &f ); }
    static formula next( const formula& f ) { return make( op::next, {}, {}, {}, &f ); }
    static formula always( const formula& f ) { return make( op::always, {}, {}, {}, &f ); }
    static formula sometime( const formula& f ) { return make( op::sometime, {}, {}, {}, &f ); }
    static formula believe( agent i, agent j, const formula& f ) { return make( op::believe, {}, i, j, &f ); }
    static formula assume( agent i, agent j, const formula& f ) { return make( op::assume, {}, i, j, &f ); }

    static formula conjunction( const formula& l, const formula& r ) { return make( op::conjunction, {}, {}, {}, &l, &r ); }
    static formula disjunction( const formula& l, const formula& r ) { return make( op::disjunction, {}, {}, {}, &l, &r ); }
    static formula implication( const formula& l, const formula& r ) { return make( op::implication, {}, {}, {}, &l, &r ); }
    static formula equivalence( const formula& l, const formula& r ) { return make( op::equivalence, {}, {}, {}, &l, &r ); }

    static formula unary( op kind, const formula& f, agent i = agent::a, agent j = agent::a )
    {
        if ( !is_unary( kind ) )
            throw std::invalid_argument( "not a unary operator" );
        return make( kind, {}, i, j, &f );
    }
    static formula binary( op kind, const formula& l, const formula& r )
    {
        if ( !is_binary( kind ) )
            throw std::invalid_argument( "not a binary operator" );
        return make( kind, {}, {}, {}, &l, &r );
    }

    [[nodiscard]] op kind() const { return _node->kind; }
    [[nodiscard]] const std::string& name() const { return _node->name; }

    // Sort of a sort atom.
    [[nodiscard]] agent sort_agent() const { return _node->first; }
    // Agent indices of B[i,j] / A[i,j].
    [[nodiscard]] agent believer() const { return _node->first; }
    [[nodiscard]] agent subject() const { return _node->second; }

    [[nodiscard]] formula child() const { return formula{ _node->lhs }; }
    [[nodiscard]] formula left() const { return formula{ _node->lhs }; }
    [[nodiscard]] formula right() const { return formula{ _node->rhs }; }

    // Stable identity of the shared node, usable as a cache key while some
    // formula referencing the node is alive.
    [[nodiscard]] const void* id() const { return _node.get(); }

    [[nodiscard]] std::size_t size() const
    {
        if ( is_atom( kind() ) )
            return 1;
        if ( is_unary( kind() ) )
            return 1 + child().size();
        return 1 + left().size() + right().size();
    }

    [[nodiscard]] std::size_t height() const
    {
        if ( is_atom( kind() ) )
            return 0;
        if ( is_unary( kind() ) )
            return 1 + child().height();
        return 1 + std::max( left().height(), right().height() );
    }

    friend bool operator==( const formula& l, const formula& r )
    {
        if ( l._node == r._node )
            return true;
        if ( l.kind() != r.kind() )
            return false;
        switch ( l.kind() )
        {
        case op::prop:
            return l.name() == r.name();
        case op::sort:
            return l.sort_agent() == r.sort_agent();
        case op::believe:
        case op::assume:
            return l.believer() == r.believer() && l.subject() == r.subject() && l.child() == r.child();
        default:
            break;
        }
        if ( is_atom( l.kind() ) )
            return true;
        if ( is_unary( l.kind() ) )
            return l.child() == r.child();
        return l.left() == r.left() && l.right() == r.right();
    }
};

// ---------------------------------------------------------------------------
// Rendering

namespace detail
{

// Binding strength; higher binds tighter.
[[nodiscard]] constexpr int precedence( op kind )
{
    switch ( kind )
    {
    case op::equivalence: return 1;
    case op::implication: return 2;
    case op::disjunction: return 3;
    case op::conjunction: return 4;
    default: break;
    }
    return is_unary( kind ) ? 5 : 6;
}

inline std::string operator_prefix( const formula& f )
{
    switch ( f.kind() )
    {
    case op::negation: return "!";
    case op::next: return "X ";
    case op::always: return "G ";
    case op::sometime: return "F ";
    case op::believe:
    case op::assume:
        return std::string{ f.kind() == op::believe ? 'B' : 'A' } + '[' + to_char( f.believer() ) + ','
               + to_char( f.subject() ) + "] ";
    default: break;
    }
    return {};
}

inline std::string_view infix( op kind )
{
    switch ( kind )
    {
    case op::conjunction: return " & ";
    case op::disjunction: return " | ";
    case op::implication: return " -> ";
    case op::equivalence: return " <-> ";
    default: break;
    }
    return {};
}

inline void render_into( std::string& out, const formula& f );

inline void render_wrapped( std::string& out, const formula& f, bool parens )
{
    if ( parens )
        out += '(';
    render_into( out, f );
    if ( parens )
        out += ')';
}

inline void render_into( std::string& out, const formula& f )
{
    const auto kind = f.kind();
    switch ( kind )
    {
    case op::prop: out += f.name(); return;
    case op::sort: out += f.sort_agent() == agent::a ? "Ua" : "Ub"; return;
    case op::diag: out += 'D'; return;
    case op::truth: out += "true"; return;
    case op::falsity: out += "false"; return;
    default: break;
    }

    if ( is_unary( kind ) )
    {
        out += operator_prefix( f );
        render_wrapped( out, f.child(), precedence( f.child().kind() ) < precedence( kind ) );
        return;
    }

    const int p = precedence( kind );
    const int pl = precedence( f.left().kind() );
    const int pr = precedence( f.right().kind() );
    // -> associates to the right, every other binary operator to the left.
    const bool right_assoc = kind == op::implication;
    render_wrapped( out, f.left(), right_assoc ? pl <= p : pl < p );
    out += infix( kind );
    render_wrapped( out, f.right(), right_assoc ? pr < p : pr <= p );
}

} // namespace detail

// Minimal-parenthesis rendering; parse( render( f ) ) == f.
[[nodiscard]] inline std::string render( const formula& f )
{
    std::string out;
    detail::render_into( out, f );
    return out;
}

// Constructor-style dump of the tree, e.g. Always(Not(Prop("p"))).
[[nodiscard]] inline std::string debug_string( const formula& f )
{
    auto agents = [ & ] { return std::string{ to_char( f.believer() ) } + ',' + to_char( f.subject() ) + ','; };
    switch ( f.kind() )
    {
    case op::prop: return "Prop(\"" + f.name() + "\")";
    case op::sort: return std::string{ "SortAtom(" } + to_char( f.sort_agent() ) + ')';
    case op::diag: return "DiagAtom";
    case op::truth: return "Truth";
    case op::falsity: return "Falsity";
    case op::negation: return "Not(" + debug_string( f.child() ) + ')';
    case op::next: return "Next(" + debug_string( f.child() ) + ')';
    case op::always: return "Always(" + debug_string( f.child() ) + ')';
    case op::sometime: return "Sometime(" + debug_string( f.child() ) + ')';
    case op::believe: return "Believe(" + agents() + debug_string( f.child() ) + ')';
    case op::assume: return "Assume(" + agents() + debug_string( f.child() ) + ')';
    case op::conjunction: return "And(" + debug_string( f.left() ) + ',' + debug_string( f.right() ) + ')';
    case op::disjunction: return "Or(" + debug_string( f.left() ) + ',' + debug_string( f.right() ) + ')';
    case op::implication: return "Implies(" + debug_string( f.left() ) + ',' + debug_string( f.right() ) + ')';
    case op::equivalence: return "Iff(" + debug_string( f.left() ) + ',' + debug_string( f.right() ) + ')';
    }
    return {};
}

// ---------------------------------------------------------------------------
// Parsing

class parse_error : public std::runtime_error
{
    std::size_t _line;
    std::size_t _column;
    std::vector< std::string > _expected;

public:
    parse_error( const std::string& message, std::size_t line, std::size_t column, std::vector< std::string > expected )
        : std::runtime_error{ std::to_string( line ) + ':' + std::to_string( column ) + ": " + message },
          _line{ line }, _column{ column }, _expected{ std::move( expected ) }
    {}

    // 1-based position of the offending token.
    [[nodiscard]] std::size_t line() const { return _line; }
    [[nodiscard]] std::size_t column() const { return _column; }
    [[nodiscard]] const std::vector< std::string >& expected() const { return _expected; }
};

namespace detail
{

enum class token_kind
{
    end,
    ident,
    atom,     // Ua Ub D true false
    bang,
    temporal, // X G F
    epistemic,
    land,
    lor,
    arrow,
    dblarrow,
    lparen,
    rparen,
    rbracket_error,
};

struct token
{
    token_kind kind = token_kind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
    agent first = agent::a;  // epistemic only
    agent second = agent::a; // epistemic only
};

class lexer
{
    std::string_view _text;
    std::size_t _pos = 0;
    std::size_t _line = 1;
    std::size_t _column = 1;

    [[nodiscard]] char peek( std::size_t ahead = 0 ) const
    {
        return _pos + ahead < _text.size() ? _text[ _pos + ahead ] : '\0';
    }

    void advance()
    {
        if ( _text[ _pos ] == '\n' )
        {
            ++_line;
            _column = 1;
        }
        else
            ++_column;
        ++_pos;
    }

    void skip_space()
    {
        while ( _pos < _text.size() && ( peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r' ) )
            advance();
    }

    [[noreturn]] void fail( const std::string& message, std::vector< std::string > expected ) const
    {
        throw parse_error( message, _line, _column, std::move( expected ) );
    }

    std::string read_word()
    {
        std::size_t begin = _pos;
        while ( _pos < _text.size() )
        {
            char c = peek();
            if ( ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) || c == '_' )
                advance();
            else
                break;
        }
        return std::string{ _text.substr( begin, _pos - begin ) };
    }

    agent read_agent()
    {
        skip_space();
        const std::size_t line = _line;
        const std::size_t column = _column;
        std::string word = read_word();
        if ( word == "a" )
            return agent::a;
        if ( word == "b" )
            return agent::b;
        if ( word.empty() && _pos < _text.size() )
            word = std::string{ 1, peek() };
        throw parse_error( "bad agent tag '" + word + "'", line, column, { "a", "b" } );
    }

    void expect_char( char c )
    {
        skip_space();
        if ( peek() != c )
            fail( std::string{ "expected '" } + c + "'", { std::string{ c } } );
        advance();
    }

public:
    explicit lexer( std::string_view text ) : _text{ text } {}

    token next()
    {
        skip_space();
        token t;
        t.line = _line;
        t.column = _column;
        if ( _pos >= _text.size() )
            return t;

        char c = peek();
        auto single = [ & ]( token_kind kind, std::size_t len ) {
            t.kind = kind;
            t.text = std::string{ _text.substr( _pos, len ) };
            for ( std::size_t i = 0; i < len; ++i )
                advance();
            return t;
        };

        switch ( c )
        {
        case '!': return single( token_kind::bang, 1 );
        case '&': return single( token_kind::land, 1 );
        case '|': return single( token_kind::lor, 1 );
        case '(': return single( token_kind::lparen, 1 );
        case ')': return single( token_kind::rparen, 1 );
        case '-':
            if ( peek( 1 ) == '>' )
                return single( token_kind::arrow, 2 );
            break;
        case '<':
            if ( peek( 1 ) == '-' && peek( 2 ) == '>' )
                return single( token_kind::dblarrow, 3 );
            break;
        default: break;
        }

        if ( ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) )
        {
            if ( ( c == 'A' || c == 'B' ) && peek( 1 ) == '[' )
            {
                t.kind = token_kind::epistemic;
                t.text = std::string{ c };
                advance();
                advance();
                t.first = read_agent();
                expect_char( ',' );
                t.second = read_agent();
                expect_char( ']' );
                return t;
            }
            t.text = read_word();
            if ( t.text == "X" || t.text == "G" || t.text == "F" )
                t.kind = token_kind::temporal;
            else if ( t.text == "Ua" || t.text == "Ub" || t.text == "D" || t.text == "true" || t.text == "false" )
                t.kind = token_kind::atom;
            else
                t.kind = token_kind::ident;
            return t;
        }

        fail( std::string{ "unexpected character '" } + c + "'", {} );
    }
};

class parser
{
    lexer _lexer;
    token _current;
    std::size_t _depth = 0; // open parentheses

    void advance() { _current = _lexer.next(); }

    [[noreturn]] void unexpected( std::vector< std::string > expected ) const
    {
        std::string what = _current.kind == token_kind::end ? "end of input" : "'" + _current.text + "'";
        throw parse_error( "unexpected " + what, _current.line, _current.column, std::move( expected ) );
    }

    static std::vector< std::string > unary_starts()
    {
        return { "!", "X", "G", "F", "B[", "A[", "(", "Ua", "Ub", "D", "true", "false", "identifier" };
    }

    formula parse_iff()
    {
        formula lhs = parse_imp();
        while ( _current.kind == token_kind::dblarrow )
        {
            advance();
            lhs = formula::equivalence( lhs, parse_imp() );
        }
        return lhs;
    }

    formula parse_imp()
    {
        formula lhs = parse_or();
        if ( _current.kind == token_kind::arrow )
        {
            advance();
            return formula::implication( lhs, parse_imp() );
        }
        return lhs;
    }

    formula parse_or()
    {
        formula lhs = parse_and();
        while ( _current.kind == token_kind::lor )
        {
            advance();
            lhs = formula::disjunction( lhs, parse_and() );
        }
        return lhs;
    }

    formula parse_and()
    {
        formula lhs = parse_unary();
        while ( _current.kind == token_kind::land )
        {
            advance();
            lhs = formula::conjunction( lhs, parse_unary() );
        }
        return lhs;
    }

    static bool starts_unary( token_kind kind )
    {
        return kind == token_kind::bang || kind == token_kind::temporal || kind == token_kind::epistemic
               || kind == token_kind::atom || kind == token_kind::ident || kind == token_kind::lparen;
    }

    formula parse_unary()
    {
        token t = _current;
        switch ( t.kind )
        {
        case token_kind::bang:
            advance();
            return formula::negation( parse_unary() );
        case token_kind::temporal: {
            advance();
            if ( !starts_unary( _current.kind ) )
                throw parse_error( "reserved word '" + t.text + "' used as proposition", t.line, t.column,
                                   unary_starts() );
            formula body = parse_unary();
            if ( t.text == "X" )
                return formula::next( body );
            if ( t.text == "G" )
                return formula::always( body );
            return formula::sometime( body );
        }
        case token_kind::epistemic: {
            advance();
            formula body = parse_unary();
            return t.text == "B" ? formula::believe( t.first, t.second, body )
                                 : formula::assume( t.first, t.second, body );
        }
        default:
            return parse_atom();
        }
    }

    formula parse_atom()
    {
        token t = _current;
        switch ( t.kind )
        {
        case token_kind::ident:
            advance();
            return formula::prop( t.text );
        case token_kind::atom:
            advance();
            if ( t.text == "Ua" )
                return formula::sort( agent::a );
            if ( t.text == "Ub" )
                return formula::sort( agent::b );
            if ( t.text == "D" )
                return formula::diag();
            return t.text == "true" ? formula::truth() : formula::falsity();
        case token_kind::lparen: {
            advance();
            ++_depth;
            formula inner = parse_iff();
            if ( _current.kind != token_kind::rparen )
            {
                if ( _current.kind == token_kind::end )
                    throw parse_error( "unbalanced parenthesis: missing ')'", _current.line, _current.column,
                                       { ")" } );
                unexpected( { ")", "&", "|", "->", "<->" } );
            }
            --_depth;
            advance();
            return inner;
        }
        default:
            unexpected( unary_starts() );
        }
    }

public:
    explicit parser( std::string_view text ) : _lexer{ text } { advance(); }

    formula parse()
    {
        formula f = parse_iff();
        if ( _current.kind == token_kind::rparen )
            throw parse_error( "unbalanced parenthesis: unmatched ')'", _current.line, _current.column,
                               { "&", "|", "->", "<->", "end of input" } );
        if ( _current.kind != token_kind::end )
            unexpected( { "&", "|", "->", "<->", "end of input" } );
        return f;
    }
};

} // namespace detail

[[nodiscard]] inline formula parse( std::string_view text ) { return detail::parser{ text }.parse(); }

// ---------------------------------------------------------------------------
// Core fragment

// Core formulas only use atoms p, Ua, Ub, D and the operators
// !, &, X, G, B[i,j], A[i,j].
[[nodiscard]] inline bool is_core( const formula& f )
{
    switch ( f.kind() )
    {
    case op::prop:
    case op::sort:
    case op::diag:
        return true;
    case op::negation:
    case op::next:
    case op::always:
    case op::believe:
    case op::assume:
        return is_core( f.child() );
    case op::conjunction:
        return is_core( f.left() ) && is_core( f.right() );
    default:
        return false;
    }
}

class core_formula
{
    formula _f;

public:
    explicit core_formula( formula f ) : _f{ std::move( f ) }
    {
        if ( !is_core( _f ) )
            throw std::invalid_argument( "not a core formula: " + render( _f ) );
    }

    [[nodiscard]] const formula& get() const { return _f; }
    [[nodiscard]] const formula* operator->() const { return &_f; }

    friend bool operator==( const core_formula& l, const core_formula& r ) { return l._f == r._f; }
};

namespace detail
{

inline formula core_tautology()
{
    static const formula t = formula::negation(
            formula::conjunction( formula::diag(), formula::negation( formula::diag() ) ) );
    return t;
}

inline formula desugar_tree( const formula& f )
{
    using F = formula;
    switch ( f.kind() )
    {
    case op::prop:
    case op::sort:
    case op::diag:
        return f;
    case op::truth:
        return core_tautology();
    case op::falsity:
        return F::negation( core_tautology() );
    case op::negation:
        return F::negation( desugar_tree( f.child() ) );
    case op::next:
        return F::next( desugar_tree( f.child() ) );
    case op::always:
        return F::always( desugar_tree( f.child() ) );
    case op::sometime:
        return F::negation( F::always( F::negation( desugar_tree( f.child() ) ) ) );
    case op::believe:
        return F::believe( f.believer(), f.subject(), desugar_tree( f.child() ) );
    case op::assume:
        return F::assume( f.believer(), f.subject(), desugar_tree( f.child() ) );
    case op::conjunction:
        return F::conjunction( desugar_tree( f.left() ), desugar_tree( f.right() ) );
    case op::disjunction:
        return F::negation( F::conjunction( F::negation( desugar_tree( f.left() ) ),
                                            F::negation( desugar_tree( f.right() ) ) ) );
    case op::implication:
        return F::negation( F::conjunction( desugar_tree( f.left() ), F::negation( desugar_tree( f.right() ) ) ) );
    case op::equivalence: {
        formula l = desugar_tree( f.left() );
        formula r = desugar_tree( f.right() );
        return F::conjunction( F::negation( F::conjunction( l, F::negation( r ) ) ),
                               F::negation( F::conjunction( r, F::negation( l ) ) ) );
    }
    }
    return f;
}

} // namespace detail

// Rewrites derived connectives into the core fragment:
//   F x -> !G !x,  x | y -> !(!x & !y),  x -> y -> !(x & !y),
//   x <-> y -> (x -> y) & (y -> x),  true -> !(D & !D),  false -> !true.
[[nodiscard]] inline core_formula desugar( const formula& f ) { return core_formula{ detail::desugar_tree( f ) }; }

} // namespace ital
