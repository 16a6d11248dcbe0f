#include <ital/semantics.hpp>

#include "support/generators.hpp"
#include "support/labeling_oracle.hpp"
#include "support/models.hpp"

#include <gtest/gtest.h>

using namespace ital;

namespace
{

bool ev( const temporal_model& m, std::uint64_t n, const std::string& w, const std::string& text )
{
    return eval( m, n, w, parse( text ) );
}

using names = std::set< std::string >;

TEST( Eval, DiagonalOnM0 ) { EXPECT_TRUE( ev( test::m0(), 0, "x1", "D" ) ); }

TEST( Eval, Contradiction )
{
    test::rng gen{ 3 };
    const auto m = test::random_small_model( gen );
    for ( const auto& w : m.names() )
        EXPECT_FALSE( ev( m, 5, w, "G B[a,b] p & !G B[a,b] p" ) );
}

TEST( Eval, AlwaysAndSometimeOnM1 )
{
    const auto m = test::m1();
    EXPECT_FALSE( ev( m, 0, "x1", "G D" ) );
    EXPECT_TRUE( ev( m, 0, "x1", "F D" ) );
    EXPECT_TRUE( ev( m, 0, "x1", "D" ) );
    EXPECT_FALSE( ev( m, 1, "x1", "D" ) );
    EXPECT_FALSE( ev( m, 3, "x1", "D" ) );
    EXPECT_TRUE( ev( m, 0, "x1", "X !D" ) );
}

TEST( Eval, BelieveSortAtomOnM0 )
{
    const auto m = test::m0();
    EXPECT_TRUE( ev( m, 0, "x1", "B[a,b] Ub" ) );
    EXPECT_FALSE( ev( m, 0, "y1", "B[a,b] Ub" ) );
    EXPECT_TRUE( ev( m, 0, "y1", "B[b,a] Ua" ) );
}

TEST( Eval, AssumeIsExactSet )
{
    const auto m = test::m2();
    // x1 considers every b-world possible.
    EXPECT_TRUE( ev( m, 0, "x1", "A[a,b] Ub" ) );
    EXPECT_FALSE( ev( m, 0, "x2", "A[a,b] Ub" ) );
    EXPECT_TRUE( ev( m, 0, "x1", "B[a,b] Ub" ) );
    // Worlds of the believer's own sort must falsify the assumed formula.
    EXPECT_FALSE( ev( m, 0, "x1", "A[a,b] true" ) );
}

TEST( Eval, VacuityOnSameSortOperators )
{
    test::rng gen{ 5 };
    for ( int k = 0; k < 50; ++k )
    {
        const auto m = test::random_small_model( gen );
        const auto f = test::random_formula( gen, 3, true );
        for ( agent i : { agent::a, agent::b } )
            for ( std::size_t t = 0; t < m.horizon(); ++t )
                for ( world_index w = 0; w < m.world_count(); ++w )
                {
                    const auto core_b = core_formula{ formula::believe( i, i, f ) };
                    const auto core_a = core_formula{ formula::assume( i, i, f ) };
                    const bool own = m.sort_of( w ) == i;
                    EXPECT_EQ( eval( m, t, w, core_b ), own );
                    // No world relates to its own sort, so the biconditional
                    // demands that f fail everywhere, not only on U^i.
                    bool none = true;
                    for ( world_index z = 0; z < m.world_count(); ++z )
                        if ( eval( m, t, z, core_formula{ f } ) )
                            none = false;
                    EXPECT_EQ( eval( m, t, w, core_a ), own && none );
                }
    }
}

TEST( Eval, UnknownWorldAndProposition )
{
    const auto m = test::m0();
    EXPECT_THROW( (void) ev( m, 0, "z9", "D" ), unknown_world );
    EXPECT_FALSE( ev( m, 0, "x1", "nobody" ) );
}

TEST( Sets, AssumedSet )
{
    const auto m = test::m0();
    EXPECT_EQ( assumed_set( m, 0, "x1" ), ( names{ "y1" } ) );
    EXPECT_EQ( assumed_set( m, 0, "y2" ), ( names{ "x1" } ) );
    EXPECT_THROW( (void) assumed_set( m, 0, "nope" ), unknown_world );
    auto all = enumerate_models( { 2, 2, 0, 1, true, false } );
    while ( auto mm = all.next() )
        for ( const auto& w : mm->names() )
            EXPECT_FALSE( assumed_set( *mm, 0, w ).empty() );
}

TEST( Sets, BelievesAndAssumes )
{
    const auto m = test::m0();
    EXPECT_TRUE( believes( m, 0, "x1", { "y1", "y2" } ) );
    EXPECT_FALSE( assumes( m, 0, "x1", { "y1", "y2" } ) );
    EXPECT_TRUE( believes( m, 0, "x1", { "y1" } ) );
    EXPECT_TRUE( assumes( m, 0, "x1", { "y1" } ) );
    EXPECT_FALSE( believes( m, 0, "x1", {} ) );
    EXPECT_THROW( (void) believes( m, 0, "x1", { "x2" } ), std::invalid_argument );
    EXPECT_THROW( (void) assumes( m, 0, "x1", { "zz" } ), unknown_world );
}

TEST( Sets, DiagSlice )
{
    EXPECT_EQ( diag_slice( test::m0(), 0 ), ( names{ "x1", "x2", "y1", "y2" } ) );
    EXPECT_EQ( diag_slice( test::m1(), 1 ).count( "x1" ), 0u );

    auto d = test::m0_description();
    d.slices = { { { { "x1", "y1" }, { "x2", "y1" } }, { { "y1", "x1" }, { "y2", "x1" } } } };
    EXPECT_EQ( diag_slice( validate( d ), 0 ).count( "x1" ), 0u );

    test::rng gen{ 9 };
    for ( int k = 0; k < 30; ++k )
    {
        const auto m = test::random_small_model( gen );
        for ( std::size_t t = 0; t < m.horizon(); ++t )
        {
            const auto ds = diag_slice( m, t );
            for ( const auto& w : m.names() )
                EXPECT_EQ( ds.count( w ) == 1, ev( m, t, w, "D" ) );
        }
    }
}

TEST( Sets, MaskHelpersAgreeWithEvaluator )
{
    test::rng gen{ 13 };
    for ( int k = 0; k < 100; ++k )
    {
        const auto m = test::random_small_model( gen );
        const auto f = desugar( test::random_formula( gen, 3 ) );
        evaluator e{ m };
        for ( std::size_t t = 0; t < m.horizon(); ++t )
        {
            const world_mask truth = e.truth_set( t, f );
            for ( agent i : { agent::a, agent::b } )
                for ( agent j : { agent::a, agent::b } )
                {
                    EXPECT_EQ( believe_mask( m, t, i, j, truth ), e.truth_set( t, core_formula{ formula::believe( i, j, f.get() ) } ) );
                    EXPECT_EQ( assume_mask( m, t, i, j, truth ), e.truth_set( t, core_formula{ formula::assume( i, j, f.get() ) } ) );
                }
        }
    }
}

// Properties over random models and formulas.
class SemanticsProperties : public ::testing::Test
{
protected:
    test::rng gen{ 2024 };
};

TEST_F( SemanticsProperties, LoopInvarianceDualityUnfoldingAssumption )
{
    for ( int k = 0; k < 300; ++k )
    {
        const auto m = test::random_small_model( gen );
        const auto f = test::random_formula( gen, 4 );
        const auto w = m.name( static_cast< world_index >( gen() % m.world_count() ) );
        const std::uint64_t n = m.prefix_len() + gen() % 9;
        const auto i = test::random_agent( gen );
        const auto j = test::random_agent( gen );
        using F = formula;
        EXPECT_EQ( eval( m, n, w, f ), eval( m, n + m.loop_len(), w, f ) );
        EXPECT_EQ( eval( m, n, w, F::sometime( f ) ), !eval( m, n, w, F::always( F::negation( f ) ) ) );
        EXPECT_EQ( eval( m, n, w, F::always( f ) ), eval( m, n, w, f ) && eval( m, n + 1, w, F::always( f ) ) );
        if ( eval( m, n, w, F::assume( i, j, f ) ) )
        {
            EXPECT_TRUE( eval( m, n, w, F::believe( i, j, f ) ) );
        }
        if ( eval( m, n, w, F::believe( i, j, f ) ) || eval( m, n, w, F::assume( i, j, f ) ) )
        {
            EXPECT_EQ( m.sort_of( m.index( w ) ), i );
        }
    }
}

TEST_F( SemanticsProperties, DesugaringPreservesTruth )
{
    for ( int k = 0; k < 200; ++k )
    {
        const auto m = test::random_small_model( gen );
        const auto f = test::random_formula( gen, 4 );
        test::labeling_oracle oracle{ m };
        const auto core = desugar( f );
        const auto labels = oracle.label( core.get() );
        // Evaluate the sugared formula with its direct reading.
        std::function< bool( std::size_t, std::size_t, const formula& ) > direct =
                [ & ]( std::size_t t, std::size_t w, const formula& g ) -> bool {
            switch ( g.kind() )
            {
            case op::truth: return true;
            case op::falsity: return false;
            case op::disjunction: return direct( t, w, g.left() ) || direct( t, w, g.right() );
            case op::implication: return !direct( t, w, g.left() ) || direct( t, w, g.right() );
            case op::equivalence: return direct( t, w, g.left() ) == direct( t, w, g.right() );
            case op::sometime: {
                auto [ first, last ] = m.future_closure( t );
                for ( auto u = first; u < last; ++u )
                    if ( direct( u, w, g.child() ) )
                        return true;
                return false;
            }
            case op::negation: return !direct( t, w, g.child() );
            case op::conjunction: return direct( t, w, g.left() ) && direct( t, w, g.right() );
            default:
                if ( is_core( g ) )
                    return eval( m, t, static_cast< world_index >( w ), core_formula{ g } );
                // Operators over sugared children: fall back to desugaring the child only.
                return eval( m, t, static_cast< world_index >( w ), desugar( g ) );
            }
        };
        for ( std::size_t t = 0; t < m.horizon(); ++t )
            for ( std::size_t w = 0; w < m.world_count(); ++w )
            {
                ASSERT_EQ( eval( m, t, static_cast< world_index >( w ), core ), labels[ t ][ w ] ) << render( f );
                ASSERT_EQ( direct( t, w, f ), labels[ t ][ w ] ) << render( f );
            }
    }
}

TEST( OracleEquivalence, ExhaustiveSmallFormulasOnAllStatic2x2 )
{
    auto models = enumerate_models( { 2, 2, 0, 1, true, false } );
    std::vector< temporal_model > ms;
    std::vector< test::labeling_oracle > oracles;
    while ( auto m = models.next() )
    {
        oracles.emplace_back( *m );
        ms.push_back( std::move( *m ) );
    }
    std::uint64_t checked = 0;
    for ( std::size_t size = 1; size <= 3; ++size )
        test::for_each_core_formula( size, [ & ]( const formula& f ) {
            const core_formula core{ f };
            for ( std::size_t k = 0; k < ms.size(); ++k )
            {
                const auto labels = oracles[ k ].label( f );
                evaluator e{ ms[ k ] };
                for ( world_index w = 0; w < ms[ k ].world_count(); ++w )
                    if ( e.holds( 0, w, core ) != labels[ 0 ][ w ] )
                    {
                        ADD_FAILURE() << render( f ) << " on model " << k;
                        return false;
                    }
            }
            ++checked;
            return true;
        } );
    EXPECT_EQ( checked, test::core_formula_count( 1 ) + test::core_formula_count( 2 ) + test::core_formula_count( 3 ) );
}

} // namespace
