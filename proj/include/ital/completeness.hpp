#pragma once

// Definable sets and completeness of static belief models.
//
// The language is the modal fragment over atoms Ua, Ub, D and operators
// !, &, B[i,j], A[i,j]; depth is the nesting height of a formula (atoms have
// depth 0). A model is complete for this language at depth k when every
// nonempty b-set definable at depth <= k is assumed by some a-world, and
// every nonempty definable a-set is assumed by some b-world.

#include "detail/parallel.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace ital
{

inline constexpr std::size_t max_definability_depth = 4;

inline constexpr std::string_view definability_language =
        "modal fragment: atoms Ua, Ub, D; operators !, &, B[i,j], A[i,j]; no temporal operators or propositions";

struct definable_set
{
    world_mask members = 0; // restricted to the family's sort
    formula definition;
    std::size_t size = 0; // AST nodes of definition
    std::string text;     // render( definition )
};

struct definable_family
{
    agent sort = agent::a;
    std::vector< definable_set > sets; // ordered by ( size, text )
};

namespace detail
{

inline bool simpler( std::size_t size, const std::string& text, const definable_set& than )
{
    return std::tie( size, text ) < std::tie( than.size, than.text );
}

// Truth set over all worlds -> simplest formula found with that truth set.
inline std::map< world_mask, definable_set > definable_closure( const temporal_model& m, std::size_t depth )
{
    std::map< world_mask, definable_set > best;

    auto offer = [ & ]( world_mask mask, std::size_t size, auto&& build ) {
        auto it = best.find( mask );
        if ( it != best.end() && size > it->second.size )
            return;
        formula f = build();
        std::string text = render( f );
        if ( it == best.end() )
            best.emplace( mask, definable_set{ mask, std::move( f ), size, std::move( text ) } );
        else if ( simpler( size, text, it->second ) )
            it->second = definable_set{ mask, std::move( f ), size, std::move( text ) };
    };

    offer( m.sort_mask( agent::a ), 1, [] { return formula::sort( agent::a ); } );
    offer( m.sort_mask( agent::b ), 1, [] { return formula::sort( agent::b ); } );
    offer( diag_mask( m, 0 ), 1, [] { return formula::diag(); } );

    const world_mask all = m.all_mask();
    constexpr agent agents[] = { agent::a, agent::b };
    for ( std::size_t level = 1; level <= depth; ++level )
    {
        std::vector< definable_set > known;
        for ( const auto& [ _, e ] : best )
            known.push_back( e );
        for ( const auto& e : known )
        {
            offer( all & ~e.members, e.size + 1, [ & ] { return formula::negation( e.definition ); } );
            for ( agent i : agents )
                for ( agent j : agents )
                {
                    offer( believe_mask( m, 0, i, j, e.members ), e.size + 1,
                           [ & ] { return formula::believe( i, j, e.definition ); } );
                    offer( assume_mask( m, 0, i, j, e.members ), e.size + 1,
                           [ & ] { return formula::assume( i, j, e.definition ); } );
                }
            for ( const auto& g : known )
                offer( e.members & g.members, e.size + g.size + 1,
                       [ & ] { return formula::conjunction( e.definition, g.definition ); } );
        }
    }
    return best;
}

inline void require_static( const temporal_model& m )
{
    if ( !m.is_static() )
        throw std::invalid_argument( "definable sets are computed on static models (prefix_len 0, loop_len 1)" );
}

inline void require_depth( std::size_t depth )
{
    if ( depth > max_definability_depth )
        throw std::invalid_argument( "definability depth " + std::to_string( depth ) + " exceeds the maximum of "
                                     + std::to_string( max_definability_depth ) );
}

inline definable_family project( const temporal_model& m, const std::map< world_mask, definable_set >& closure, agent sort )
{
    std::map< world_mask, definable_set > by_set;
    const world_mask keep = m.sort_mask( sort );
    for ( const auto& [ mask, e ] : closure )
    {
        const world_mask restricted = mask & keep;
        auto it = by_set.find( restricted );
        if ( it == by_set.end() )
            by_set.emplace( restricted, definable_set{ restricted, e.definition, e.size, e.text } );
        else if ( simpler( e.size, e.text, it->second ) )
            it->second = definable_set{ restricted, e.definition, e.size, e.text };
    }
    definable_family out{ sort, {} };
    for ( auto& [ _, e ] : by_set )
        out.sets.push_back( std::move( e ) );
    std::sort( out.sets.begin(), out.sets.end(),
               []( const definable_set& l, const definable_set& r ) { return simpler( l.size, l.text, r ); } );
    return out;
}

} // namespace detail

[[nodiscard]] inline definable_family definable_sets( const temporal_model& m, std::size_t depth, agent sort )
{
    detail::require_static( m );
    detail::require_depth( depth );
    return detail::project( m, detail::definable_closure( m, depth ), sort );
}

struct completeness_witness
{
    agent sort = agent::a; // sort of the unassumed set
    world_mask members = 0;
    std::set< std::string > worlds;
    formula definition;
    std::string text;
};

struct completeness_report
{
    std::size_t depth = 0;
    bool complete = true;
    std::optional< completeness_witness > witness;
};

// Witness: the unassumed nonempty definable set with the smallest
// definition (size, then text); b-sets before a-sets on a tie.
[[nodiscard]] inline completeness_report is_complete( const temporal_model& m, std::size_t depth )
{
    detail::require_static( m );
    detail::require_depth( depth );
    const auto closure = detail::definable_closure( m, depth );

    completeness_report report{ depth, true, std::nullopt };
    std::optional< definable_set > chosen;
    for ( agent sort : { agent::b, agent::a } )
    {
        std::set< world_mask > assumed;
        for ( world_index w = 0; w < m.world_count(); ++w )
            if ( m.sort_of( w ) != sort )
                assumed.insert( assumed_mask( m, 0, w ) );

        const auto family = detail::project( m, closure, sort );
        for ( const auto& s : family.sets )
        {
            if ( s.members == 0 || assumed.count( s.members ) )
                continue;
            if ( !chosen || detail::simpler( s.size, s.text, *chosen ) )
            {
                chosen = s;
                report.complete = false;
                report.witness = completeness_witness{ sort, s.members, m.names_of( s.members ), s.definition, s.text };
            }
            break; // family is sorted, the first failure is its simplest
        }
    }
    return report;
}

struct bk_sweep_report
{
    enum_spec spec;
    std::size_t depth = 0;
    std::uint64_t models_total = 0;
    std::uint64_t models_incomplete = 0;
    std::vector< std::uint64_t > complete_indices;
    std::vector< model_description > complete_models;
};

[[nodiscard]] inline bk_sweep_report bk_sweep( const enum_spec& spec, std::size_t depth,
                                               unsigned jobs = detail::default_jobs() )
{
    if ( spec.prefix_len != 0 || spec.loop_len != 1 )
        throw std::invalid_argument( "the completeness sweep needs a static spec (prefix=0, loop=1)" );
    if ( !spec.strict_proper )
        throw std::invalid_argument( "the completeness sweep needs strict properness" );
    detail::require_depth( depth );

    model_enumerator models{ spec };
    require_sweepable( models );
    std::vector< char > complete( models.count(), 0 );
    detail::parallel_for( models.count(), jobs, [ & ]( std::uint64_t k ) {
        complete[ k ] = is_complete( models.model_at( k ), depth ).complete ? 1 : 0;
    } );

    bk_sweep_report out{ spec, depth, models.count(), 0, {}, {} };
    for ( std::uint64_t k = 0; k < complete.size(); ++k )
    {
        if ( complete[ k ] )
        {
            out.complete_indices.push_back( k );
            out.complete_models.push_back( models.model_at( k ).describe() );
        }
        else
            ++out.models_incomplete;
    }
    return out;
}

} // namespace ital
