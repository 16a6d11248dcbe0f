#pragma once

// Command-line front end. Exit status: 0 success, 1 property violated or
// formula refuted, 2 usage or input error.

#include <ital/ital.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ital::cli
{

enum exit_status : int { ok = 0, refuted = 1, usage = 2 };

// M0 from the documentation: two worlds per sort, each state considering
// exactly one state of the other sort possible, no mutual pair.
inline constexpr const char* demo_model_json = R"({
  "worlds_a": ["x1", "x2"],
  "worlds_b": ["y1", "y2"],
  "prefix_len": 0,
  "loop_len": 1,
  "slices": [ { "rel_ab": [["x1","y1"], ["x2","y2"]], "rel_ba": [["y1","x2"], ["y2","x1"]] } ]
})";

namespace detail
{

inline std::string set_text( const std::set< std::string >& s )
{
    std::string out = "{";
    for ( const auto& w : s )
        out += ( out.size() > 1 ? ", " : "" ) + w;
    return out + "}";
}

inline void print_parse_error( std::ostream& err, const parse_error& e )
{
    const std::string what = e.what();
    err << "parse error at line " << e.line() << ", column " << e.column() << ": "
        << what.substr( what.find( ": " ) + 2 );
    if ( !e.expected().empty() )
    {
        err << "\n  expected one of:";
        for ( const auto& x : e.expected() )
            err << ' ' << x;
    }
    err << '\n';
}

inline int bk_demo( std::ostream& out )
{
    const auto m = parse_model( demo_model_json );
    const formula config = parse( "B[a,b] A[b,a] D" );
    const auto yes = desugar( formula::conjunction( config, formula::diag() ) );
    const auto no = desugar( formula::conjunction( config, formula::negation( formula::diag() ) ) );

    out << "Configuration: Ann believes that Bob assumes that Ann believes that Bob's assumption is wrong.\n";
    out << "  configuration: " << render( config ) << '\n';
    out << "  question: Does Ann believe that Bob's assumption is wrong?  (D)\n\n";

    out << "bundled model: worlds_a " << detail::set_text( { m.names().begin(), m.names().begin() + 2 } )
        << ", worlds_b " << detail::set_text( { m.names().begin() + 2, m.names().end() } ) << ", static\n";
    for ( world_index w = 0; w < m.world_count(); ++w )
        out << "  " << m.name( w ) << " assumes " << detail::set_text( assumed_set( m, 0, m.name( w ) ) ) << '\n';
    out << "  D holds at " << detail::set_text( diag_slice( m, 0 ) ) << "\n\n";

    evaluator ev{ m };
    const auto config_core = desugar( config );
    for ( world_index x = 0; x < m.size_a(); ++x )
        out << "  Ann-state " << m.name( x ) << ": configuration " << ( ev.holds( 0, x, config_core ) ? "true" : "false" )
            << ", D " << ( ev.holds( 0, x, desugar( formula::diag() ) ) ? "true" : "false" ) << '\n';
    out << '\n';

    const auto yes_w = satisfiable( m, yes );
    const auto no_w = satisfiable( m, no );
    out << "branch \"yes\": " << render( formula::conjunction( config, formula::diag() ) ) << "  -> "
        << ( yes_w ? "satisfied at " + yes_w->world : "unsatisfiable" ) << '\n';
    out << "  Ann's state would be in the set Bob assumes, so Bob considers it possible and the assumption is correct.\n";
    out << "branch \"no\":  " << render( formula::conjunction( config, formula::negation( formula::diag() ) ) ) << "  -> "
        << ( no_w ? "satisfied at " + no_w->world : "unsatisfiable" ) << '\n';
    out << "  some Bob-state pointing back at Ann assumes the D-states, so Ann's state is a D-state after all.\n\n";

    model_enumerator all{ enum_spec{ 2, 2, 0, 1, true, false } };
    std::uint64_t representing = 0;
    for ( std::uint64_t k = 0; k < all.count(); ++k )
        if ( satisfiable( all.model_at( k ), config_core ) )
            ++representing;
    out << "configuration satisfiable in " << representing << " of " << all.count()
        << " strict 2x2 static models: neither answer is consistent.\n";

    const auto report = is_complete( m, 3 );
    out << "bundled model at depth 3: " << ( report.complete ? "complete" : "incomplete" );
    if ( report.witness )
        out << "; the " << to_char( report.witness->sort ) << "-set " << detail::set_text( report.witness->worlds )
            << " defined by " << report.witness->text << " is assumed by no "
            << to_char( other( report.witness->sort ) ) << "-state";
    out << '\n';
    return ( yes_w || no_w || representing ) ? exit_status::refuted : exit_status::ok;
}

} // namespace detail

inline int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err )
{
    CLI::App app{ "Model checker for interactive temporal assumption logic", "ital" };
    app.fallthrough();
    app.require_subcommand( 1 );

    bool as_json = false;
    unsigned jobs = ital::detail::default_jobs();
    app.add_flag( "--json", as_json, "Machine-readable output" );
    app.add_option( "--jobs", jobs, "Worker threads for sweeps" )->check( CLI::PositiveNumber );

    std::string text;
    std::string model_path;
    std::uint64_t time = 0;
    std::string world;

    auto* parse_cmd = app.add_subcommand( "parse", "Parse a formula and print its tree and rendering" );
    parse_cmd->add_option( "formula", text )->required();

    auto* eval_cmd = app.add_subcommand( "eval", "Evaluate a formula at one point" );
    eval_cmd->add_option( "--model", model_path )->required();
    eval_cmd->add_option( "--time", time )->required();
    eval_cmd->add_option( "--world", world )->required();
    eval_cmd->add_option( "formula", text )->required();

    bool want_valid = false;
    bool want_sat = false;
    auto* check_cmd = app.add_subcommand( "check", "Check validity or satisfiability on a model" );
    check_cmd->add_option( "--model", model_path )->required();
    auto* valid_flag = check_cmd->add_flag( "--valid", want_valid );
    auto* sat_flag = check_cmd->add_flag( "--sat", want_sat );
    valid_flag->excludes( sat_flag );
    check_cmd->add_option( "formula", text )->required();

    std::string enum_text;
    bool unguarded = false;
    auto* theorems_cmd = app.add_subcommand( "theorems", "Check both paradox theorems on a model or a model sweep" );
    auto* theorems_enum = theorems_cmd->add_option( "--enum", enum_text, "e.g. a=2,b=2,prefix=0,loop=2,strict" );
    auto* theorems_model = theorems_cmd->add_option( "--model", model_path );
    theorems_enum->excludes( theorems_model );
    theorems_cmd->add_flag( "--unguarded", unguarded, "Also check theorem 2 without the Ua conjunct" );

    std::size_t depth = 3;
    auto* complete_cmd = app.add_subcommand( "complete", "Completeness of a static model, or a completeness sweep" );
    auto* complete_model = complete_cmd->add_option( "--model", model_path );
    auto* complete_enum = complete_cmd->add_option( "--enum", enum_text );
    complete_model->excludes( complete_enum );
    complete_cmd->add_option( "--depth", depth )->check( CLI::Range( std::size_t{ 0 }, max_definability_depth ) );

    auto* demo_cmd = app.add_subcommand( "bk-demo", "Walk through the two-person configuration on a bundled model" );

    std::size_t finite_n = 0;
    std::string periodic_shape;
    auto* yablo_cmd = app.add_subcommand( "yablo", "Consistency of truth assignments to the Yablo scheme" );
    auto* finite_opt = yablo_cmd->add_option( "--finite", finite_n );
    auto* periodic_opt = yablo_cmd->add_option( "--periodic", periodic_shape, "PREFIX,LOOP" );
    finite_opt->excludes( periodic_opt );

    std::vector< std::string > reversed{ args.rbegin(), args.rend() };
    try
    {
        app.parse( reversed );
    }
    catch ( const CLI::CallForHelp& e )
    {
        out << app.help();
        return exit_status::ok;
    }
    catch ( const CLI::ParseError& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_status::usage;
    }

    try
    {
        if ( parse_cmd->parsed() )
        {
            const formula f = parse( text );
            if ( as_json )
                out << json{ { "ast", debug_string( f ) },
                             { "rendered", render( f ) },
                             { "core", render( desugar( f ).get() ) } }
                                .dump()
                    << '\n';
            else
                out << "ast: " << debug_string( f ) << "\nrendered: " << render( f ) << '\n';
            return exit_status::ok;
        }

        if ( eval_cmd->parsed() )
        {
            const auto m = load_model( model_path );
            const formula f = parse( text );
            const bool value = eval( m, time, world, f );
            if ( as_json )
                out << json{ { "model", model_path }, { "formula", render( f ) }, { "time", time },
                             { "world", world }, { "value", value } }
                                .dump()
                    << '\n';
            else
                out << ( value ? "true" : "false" ) << '\n';
            return exit_status::ok;
        }

        if ( check_cmd->parsed() )
        {
            if ( !want_valid && !want_sat )
            {
                err << "error: check needs --valid or --sat\n";
                return exit_status::usage;
            }
            const auto m = load_model( model_path );
            const formula f = parse( text );
            const auto w = want_valid ? valid( m, f ) : satisfiable( m, f );
            const bool good = want_valid ? !w : w.has_value();
            const std::string verdict = want_valid ? ( good ? "valid" : "refuted" ) : ( good ? "satisfiable" : "unsatisfiable" );
            if ( as_json )
                out << check_report( model_path, render( f ), verdict, w ).dump() << '\n';
            else
                out << verdict << '\n' << to_json( w ).dump() << '\n';
            return good ? exit_status::ok : exit_status::refuted;
        }

        if ( theorems_cmd->parsed() )
        {
            if ( !model_path.empty() )
            {
                const auto m = load_model( model_path );
                const auto r1 = check_theorem1( m );
                const auto r2 = check_theorem2( m );
                std::optional< theorem_report > r3;
                if ( unguarded )
                    r3 = check_theorem2( m, theorem2_form::unguarded );
                if ( as_json )
                {
                    json arr = json::array( { to_json( r1 ), to_json( r2 ) } );
                    if ( r3 )
                        arr.push_back( to_json( *r3 ) );
                    out << arr.dump() << '\n';
                }
                else
                {
                    for ( const auto* r : { &r1, &r2 } )
                        out << r->theorem << ": " << to_string( r->result ) << "  " << r->formula << '\n';
                    if ( r3 )
                        out << r3->theorem << ": " << to_string( r3->result ) << "  " << r3->formula << '\n';
                }
                const bool bad = r1.result == verdict::violation || r2.result == verdict::violation
                                 || ( r3 && r3->result == verdict::violation );
                return bad ? exit_status::refuted : exit_status::ok;
            }
            if ( enum_text.empty() )
            {
                err << "error: theorems needs --enum SPEC or --model FILE\n";
                return exit_status::usage;
            }
            const auto report = sweep_theorems( parse_enum_spec( enum_text ), jobs, unguarded );
            if ( as_json )
                out << to_json( report ).dump() << '\n';
            else
            {
                out << report.models << " models; theorem1: "
                    << ( report.theorem1_violations.empty() ? "holds/vacuous only" : "VIOLATED" ) << "; theorem2: "
                    << ( report.theorem2_violations.empty() ? "holds on all" : "VIOLATED" ) << '\n';
                out << "  theorem1: " << report.theorem1_holds << " holds, " << report.theorem1_vacuous << " vacuous, "
                    << report.theorem1_violations.size() << " violations\n";
                out << "  theorem2: " << report.theorem2_holds << " holds, " << report.theorem2_violations.size()
                    << " violations\n";
                if ( report.theorem2_unguarded_holds )
                    out << "  theorem2 (unguarded): " << *report.theorem2_unguarded_holds << " holds, "
                        << report.theorem2_unguarded_violations.size() << " violations\n";
                for ( const auto* vs : { &report.theorem1_violations, &report.theorem2_violations,
                                         &report.theorem2_unguarded_violations } )
                    for ( const auto& v : *vs )
                        out << "  VIOLATION " << v.report.theorem << " model #" << v.model_index << ": "
                            << to_json( v.report.counterexample ).dump() << '\n';
            }
            return report.ok() ? exit_status::ok : exit_status::refuted;
        }

        if ( complete_cmd->parsed() )
        {
            if ( !model_path.empty() )
            {
                const auto m = load_model( model_path );
                const auto report = is_complete( m, depth );
                if ( as_json )
                    out << to_json( report ).dump() << '\n';
                else
                {
                    out << ( report.complete ? "complete" : "incomplete" ) << " at depth " << depth << '\n';
                    if ( report.witness )
                        out << "  " << to_char( report.witness->sort ) << "-set "
                            << detail::set_text( report.witness->worlds ) << " defined by " << report.witness->text
                            << " is assumed by no " << to_char( other( report.witness->sort ) ) << "-world\n";
                }
                return exit_status::ok;
            }
            if ( enum_text.empty() )
            {
                err << "error: complete needs --model FILE or --enum SPEC\n";
                return exit_status::usage;
            }
            auto spec = parse_enum_spec( enum_text );
            const auto report = bk_sweep( spec, depth, jobs );
            if ( as_json )
                out << to_json( report ).dump() << '\n';
            else
            {
                out << report.models_total << " models; " << report.models_incomplete << " incomplete at depth "
                    << depth << '\n';
                for ( auto k : report.complete_indices )
                    out << "  COMPLETE model #" << k << " (inspect: a complete model here would escape the impossibility)\n";
            }
            return exit_status::ok;
        }

        if ( demo_cmd->parsed() )
            return detail::bk_demo( out );

        if ( yablo_cmd->parsed() )
        {
            if ( finite_opt->count() )
            {
                const auto sols = yablo::finite_yablo( finite_n );
                if ( as_json )
                {
                    json arr = json::array();
                    for ( const auto& a : sols )
                        arr.push_back( to_json( a ) );
                    out << json{ { "n", finite_n }, { "consistent", arr } }.dump() << '\n';
                }
                else
                {
                    out << sols.size() << " consistent assignment(s) for S_1..S_" << finite_n << '\n';
                    for ( const auto& a : sols )
                        out << "  " << yablo::to_string( a ) << '\n';
                }
                return exit_status::ok;
            }
            if ( periodic_opt->count() )
            {
                auto comma = periodic_shape.find( ',' );
                if ( comma == std::string::npos )
                {
                    err << "error: --periodic expects PREFIX,LOOP\n";
                    return exit_status::usage;
                }
                const auto prefix = static_cast< std::size_t >( std::stoul( periodic_shape.substr( 0, comma ) ) );
                const auto loop = static_cast< std::size_t >( std::stoul( periodic_shape.substr( comma + 1 ) ) );
                const auto found = yablo::periodic_yablo( prefix, loop );
                if ( as_json )
                    out << json{ { "prefix_len", prefix }, { "loop_len", loop },
                                 { "consistent", found ? to_json( *found ) : json( nullptr ) } }
                                       .dump()
                        << '\n';
                else
                    out << ( found ? "consistent: " + yablo::to_string( *found ) : std::string{ "no consistent assignment" } )
                        << " (prefix " << prefix << ", loop " << loop << ")\n";
                return found ? exit_status::refuted : exit_status::ok;
            }
            err << "error: yablo needs --finite N or --periodic P,L\n";
            return exit_status::usage;
        }
    }
    catch ( const parse_error& e )
    {
        detail::print_parse_error( err, e );
        return exit_status::usage;
    }
    catch ( const std::exception& e )
    {
        err << "error: " << e.what() << '\n';
        return exit_status::usage;
    }
    return exit_status::usage;
}

} // namespace ital::cli
