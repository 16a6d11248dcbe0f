#pragma once

// Satisfaction of core formulas at (time, world) points of a lasso model.
//
// B[i,j] f holds at (n,w) iff w is an i-world and every P_n-successor z of w
// that is a j-world satisfies f at (n,z). A[i,j] f replaces "every ... satisfies"
// by "exactly the P_n-successors of w among the j-worlds satisfy f".

#include "formula.hpp"
#include "model.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ital
{

// Recursive evaluator. Results are memoized per (subformula, time, world)
// for the lifetime of the evaluator; one evaluator per thread.
class evaluator
{
    const temporal_model* _model;
    std::vector< formula > _roots; // keeps memo keys alive
    std::unordered_map< const void*, std::vector< std::int8_t > > _memo;

    std::int8_t& slot( const formula& f, std::size_t t, world_index w )
    {
        auto& cells = _memo[ f.id() ];
        if ( cells.empty() )
            cells.assign( _model->horizon() * _model->world_count(), -1 );
        return cells[ t * _model->world_count() + w ];
    }

    bool at( std::size_t t, world_index w, const formula& f )
    {
        const temporal_model& m = *_model;
        switch ( f.kind() )
        {
        case op::prop: return ( m.prop_mask( f.name(), t ) & bit( w ) ) != 0;
        case op::sort: return m.sort_of( w ) == f.sort_agent();
        case op::diag: {
            for ( world_index z = 0; z < m.world_count(); ++z )
                if ( m.slice( t ).related( w, z ) && m.slice( t ).related( z, w ) )
                    return false;
            return true;
        }
        case op::negation: return !at( t, w, f.child() );
        case op::conjunction: return at( t, w, f.left() ) && at( t, w, f.right() );
        default: break;
        }

        auto& cached = slot( f, t, w );
        if ( cached >= 0 )
            return cached != 0;

        bool result = true;
        switch ( f.kind() )
        {
        case op::next:
            result = at( m.next_time( t ), w, f.child() );
            break;
        case op::always: {
            auto [ first, last ] = m.future_closure( t );
            for ( std::size_t u = first; u < last && result; ++u )
                result = at( u, w, f.child() );
            break;
        }
        case op::believe:
        case op::assume: {
            const bool assume = f.kind() == op::assume;
            result = m.sort_of( w ) == f.believer();
            for ( world_index z = 0; z < m.world_count() && result; ++z )
            {
                const bool possible = m.slice( t ).related( w, z ) && m.sort_of( z ) == f.subject();
                if ( assume )
                    result = possible == at( t, z, f.child() );
                else if ( possible )
                    result = at( t, z, f.child() );
            }
            break;
        }
        default:
            throw std::logic_error( "evaluator received a non-core formula" );
        }
        cached = result ? 1 : 0;
        return result;
    }

public:
    explicit evaluator( const temporal_model& m ) : _model{ &m } {}

    [[nodiscard]] const temporal_model& model() const { return *_model; }

    // n is any natural number; it is folded onto the lasso first.
    bool holds( std::uint64_t n, world_index w, const core_formula& f )
    {
        if ( w >= _model->world_count() )
            throw std::out_of_range( "world index out of range" );
        if ( _roots.empty() || _roots.back().id() != f->id() )
            _roots.push_back( f.get() );
        return at( _model->canon_time( n ), w, f.get() );
    }

    // Worlds satisfying f at time n.
    world_mask truth_set( std::uint64_t n, const core_formula& f )
    {
        world_mask out = 0;
        for ( world_index w = 0; w < _model->world_count(); ++w )
            if ( holds( n, w, f ) )
                out |= bit( w );
        return out;
    }
};

[[nodiscard]] inline bool eval( const temporal_model& m, std::uint64_t n, world_index w, const core_formula& f )
{
    return evaluator{ m }.holds( n, w, f );
}

[[nodiscard]] inline bool eval( const temporal_model& m, std::uint64_t n, const std::string& world, const core_formula& f )
{
    return evaluator{ m }.holds( n, m.index( world ), f );
}

[[nodiscard]] inline bool eval( const temporal_model& m, std::uint64_t n, const std::string& world, const formula& f )
{
    return eval( m, n, world, desugar( f ) );
}

// ---------------------------------------------------------------------------
// Set-level queries on a single time slice.

// Opposite-sort worlds x considers possible at time n.
[[nodiscard]] inline world_mask assumed_mask( const temporal_model& m, std::uint64_t n, world_index x )
{
    return m.successors( m.canon_time( n ), x ) & m.sort_mask( other( m.sort_of( x ) ) );
}

[[nodiscard]] inline std::set< std::string > assumed_set( const temporal_model& m, std::uint64_t n, const std::string& x )
{
    return m.names_of( assumed_mask( m, n, m.index( x ) ) );
}

namespace detail
{

inline world_mask opposite_subset( const temporal_model& m, world_index x, const std::set< std::string >& ys )
{
    world_mask out = 0;
    for ( const auto& y : ys )
    {
        world_index w = m.index( y );
        if ( m.sort_of( w ) == m.sort_of( x ) )
            throw std::invalid_argument( "world '" + y + "' has the same sort as '" + m.name( x ) + "'" );
        out |= bit( w );
    }
    return out;
}

} // namespace detail

// x believes Y iff everything x considers possible lies in Y.
[[nodiscard]] inline bool believes( const temporal_model& m, std::uint64_t n, const std::string& x,
                                    const std::set< std::string >& ys )
{
    world_index w = m.index( x );
    world_mask y = detail::opposite_subset( m, w, ys );
    return ( assumed_mask( m, n, w ) & ~y ) == 0;
}

// x assumes Y iff x considers possible exactly Y.
[[nodiscard]] inline bool assumes( const temporal_model& m, std::uint64_t n, const std::string& x,
                                   const std::set< std::string >& ys )
{
    world_index w = m.index( x );
    return assumed_mask( m, n, w ) == detail::opposite_subset( m, w, ys );
}

// Worlds w with no z such that P_n(w,z) and P_n(z,w).
[[nodiscard]] inline world_mask diag_mask( const temporal_model& m, std::uint64_t n )
{
    const auto t = m.canon_time( n );
    world_mask out = 0;
    for ( world_index w = 0; w < m.world_count(); ++w )
    {
        bool mutual = false;
        world_mask succ = m.successors( t, w );
        for ( world_index z = 0; z < m.world_count() && !mutual; ++z )
            mutual = ( succ & bit( z ) ) && m.slice( t ).related( z, w );
        if ( !mutual )
            out |= bit( w );
    }
    return out;
}

[[nodiscard]] inline std::set< std::string > diag_slice( const temporal_model& m, std::uint64_t n )
{
    return m.names_of( diag_mask( m, n ) );
}

// Truth set of B[i,j] f at time n, given the truth set of f at time n.
[[nodiscard]] inline world_mask believe_mask( const temporal_model& m, std::uint64_t n, agent i, agent j, world_mask truth )
{
    const auto t = m.canon_time( n );
    world_mask out = 0;
    for ( world_index w = 0; w < m.world_count(); ++w )
        if ( m.sort_of( w ) == i && ( m.successors( t, w ) & m.sort_mask( j ) & ~truth ) == 0 )
            out |= bit( w );
    return out;
}

// Truth set of A[i,j] f at time n, given the truth set of f at time n.
[[nodiscard]] inline world_mask assume_mask( const temporal_model& m, std::uint64_t n, agent i, agent j, world_mask truth )
{
    const auto t = m.canon_time( n );
    world_mask out = 0;
    for ( world_index w = 0; w < m.world_count(); ++w )
        if ( m.sort_of( w ) == i && ( m.successors( t, w ) & m.sort_mask( j ) ) == truth )
            out |= bit( w );
    return out;
}

} // namespace ital
