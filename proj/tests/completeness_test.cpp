#include <ital/completeness.hpp>

#include "support/models.hpp"

#include <gtest/gtest.h>

using namespace ital;

namespace
{

using names = std::set< std::string >;

std::vector< names > sets_of( const temporal_model& m, const definable_family& fam )
{
    std::vector< names > out;
    for ( const auto& s : fam.sets )
        out.push_back( m.names_of( s.members ) );
    return out;
}

bool contains( const std::vector< names >& sets, const names& s )
{
    return std::find( sets.begin(), sets.end(), s ) != sets.end();
}

// Every set equals the truth set of its definition at time 0, restricted to
// the family's sort.
void expect_reverifies( const temporal_model& m, const definable_family& fam )
{
    for ( const auto& s : fam.sets )
    {
        world_mask truth = 0;
        for ( world_index w = 0; w < m.world_count(); ++w )
            if ( m.sort_of( w ) == fam.sort && eval( m, 0, w, desugar( s.definition ) ) )
                truth |= bit( w );
        EXPECT_EQ( truth, s.members ) << s.text;
        EXPECT_EQ( s.text, render( s.definition ) );
        EXPECT_EQ( s.size, s.definition.size() );
    }
}

void expect_witness_reverifies( const temporal_model& m, const completeness_report& r )
{
    ASSERT_FALSE( r.complete );
    ASSERT_TRUE( r.witness );
    const auto& w = *r.witness;
    EXPECT_FALSE( w.worlds.empty() );
    EXPECT_EQ( m.names_of( w.members ), w.worlds );
    EXPECT_LE( w.definition.height(), r.depth + 1 );
    for ( world_index z = 0; z < m.world_count(); ++z )
    {
        const bool in_sort = m.sort_of( z ) == w.sort;
        EXPECT_EQ( in_sort && eval( m, 0, z, desugar( w.definition ) ), w.worlds.count( m.name( z ) ) == 1 );
        if ( !in_sort )
        {
            EXPECT_FALSE( assumes( m, 0, m.name( z ), w.worlds ) );
        }
    }
}

TEST( Definable, M0DepthOneSortB )
{
    const auto m = test::m0();
    const auto fam = definable_sets( m, 1, agent::b );
    const auto sets = sets_of( m, fam );
    EXPECT_TRUE( contains( sets, {} ) );
    EXPECT_TRUE( contains( sets, { "y1", "y2" } ) );
    expect_reverifies( m, fam );
}

TEST( Definable, DepthZeroIsAtomsOnly )
{
    auto models = enumerate_models( { 2, 2, 0, 1, true, false } );
    while ( auto m = models.next() )
        for ( agent sort : { agent::a, agent::b } )
        {
            const auto fam = definable_sets( *m, 0, sort );
            EXPECT_TRUE( contains( sets_of( *m, fam ), m->names_of( m->sort_mask( sort ) ) ) );
            for ( const auto& s : fam.sets )
                EXPECT_EQ( s.size, 1u );
        }
}

TEST( Definable, M0SymmetryHidesSingletons )
{
    const auto m = test::m0();
    const auto sets = sets_of( m, definable_sets( m, 3, agent::b ) );
    EXPECT_TRUE( contains( sets, { "y1", "y2" } ) );
    EXPECT_FALSE( contains( sets, { "y1" } ) );
    EXPECT_FALSE( contains( sets, { "y2" } ) );
}

TEST( Definable, MonotoneInDepthAndReverifies )
{
    auto models = enumerate_models( { 2, 2, 0, 1, true, false } );
    for ( std::uint64_t k = 0; k < models.count(); k += 5 )
    {
        const auto m = models.model_at( k );
        for ( agent sort : { agent::a, agent::b } )
        {
            std::vector< names > previous;
            for ( std::size_t depth = 0; depth <= 3; ++depth )
            {
                const auto fam = definable_sets( m, depth, sort );
                expect_reverifies( m, fam );
                const auto sets = sets_of( m, fam );
                for ( const auto& s : previous )
                    EXPECT_TRUE( contains( sets, s ) );
                previous = sets;
            }
        }
    }
}

TEST( Definable, RejectsDynamicModelsAndDeepRequests )
{
    EXPECT_THROW( (void) definable_sets( test::m1(), 1, agent::a ), std::invalid_argument );
    EXPECT_THROW( (void) definable_sets( test::m0(), max_definability_depth + 1, agent::a ), std::invalid_argument );
    EXPECT_THROW( (void) is_complete( test::m1(), 1 ), std::invalid_argument );
}

TEST( Complete, M0IsIncomplete )
{
    const auto m = test::m0();
    const auto r = is_complete( m, 3 );
    expect_witness_reverifies( m, r );
    EXPECT_EQ( r.witness->sort, agent::b );
    EXPECT_EQ( r.witness->worlds, ( names{ "y1", "y2" } ) );
    // D and Ub both define the b-sort here; the shorter text wins the tie.
    EXPECT_EQ( r.witness->text, "D" );
}

TEST( Complete, M2IsIncomplete )
{
    const auto m = test::m2();
    expect_witness_reverifies( m, is_complete( m, 3 ) );
}

TEST( Complete, DegenerateOneByOne )
{
    model_description d;
    d.worlds_a = { "x" };
    d.worlds_b = { "y" };
    d.strict_proper = false;
    d.slices = { { { { "x", "y" } }, { { "y", "x" } } } };
    const auto m = validate( d );
    EXPECT_TRUE( is_complete( m, 1 ).complete );
    EXPECT_FALSE( is_complete( m, 1 ).witness );
}

TEST( Complete, WitnessIsSimplestFailure )
{
    auto models = enumerate_models( { 2, 2, 0, 1, true, false } );
    while ( auto m = models.next() )
    {
        const auto r = is_complete( *m, 2 );
        if ( r.complete )
            continue;
        expect_witness_reverifies( *m, r );
        // No unassumed nonempty definable set has a strictly simpler definition.
        for ( agent sort : { agent::b, agent::a } )
            for ( const auto& s : definable_sets( *m, 2, sort ).sets )
            {
                if ( s.members == 0 )
                    continue;
                bool assumed = false;
                for ( world_index z = 0; z < m->world_count(); ++z )
                    if ( m->sort_of( z ) != sort && assumed_mask( *m, 0, z ) == s.members )
                        assumed = true;
                if ( !assumed )
                {
                    const auto witness_size = r.witness->definition.size();
                    EXPECT_FALSE( std::tie( s.size, s.text ) < std::tie( witness_size, r.witness->text ) )
                            << s.text << " vs " << r.witness->text;
                }
            }
    }
}

TEST( BkSweep, TwoByTwoDepthThree )
{
    const auto r = bk_sweep( { 2, 2, 0, 1, true, false }, 3, 1 );
    EXPECT_EQ( r.models_total, 64u );
    EXPECT_EQ( r.models_incomplete, 64u );
    EXPECT_TRUE( r.complete_models.empty() );
}

TEST( BkSweep, DepthZeroIsReportedNotRejected )
{
    const auto r = bk_sweep( { 2, 2, 0, 1, true, false }, 0, 1 );
    EXPECT_EQ( r.models_total, 64u );
    EXPECT_EQ( r.models_incomplete + r.complete_models.size(), 64u );
    EXPECT_EQ( r.complete_indices.size(), r.complete_models.size() );
}

TEST( BkSweep, Deterministic )
{
    const auto one = bk_sweep( { 2, 2, 0, 1, true, false }, 1, 1 );
    const auto two = bk_sweep( { 2, 2, 0, 1, true, false }, 1, 3 );
    EXPECT_EQ( one.models_incomplete, two.models_incomplete );
    EXPECT_EQ( one.complete_indices, two.complete_indices );
}

TEST( BkSweep, RejectsNonStaticOrNonStrict )
{
    EXPECT_THROW( (void) bk_sweep( { 2, 2, 0, 2, true, false }, 1 ), std::invalid_argument );
    EXPECT_THROW( (void) bk_sweep( { 2, 2, 0, 1, false, false }, 1 ), std::invalid_argument );
}

TEST( BkSweep, ThreeByThreeDepthTwo )
{
    const auto r = bk_sweep( { 3, 3, 0, 1, true, false }, 2 );
    EXPECT_EQ( r.models_total, 342u * 342u );
    EXPECT_EQ( r.models_incomplete, r.models_total );
}

} // namespace
