#pragma once

// JSON views of checker, completeness and Yablo results.

#include "checker.hpp"
#include "completeness.hpp"
#include "model_io.hpp"
#include "yablo.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace ital
{

using json = nlohmann::ordered_json;

[[nodiscard]] inline json to_json( const std::optional< witness >& w )
{
    if ( !w )
        return nullptr;
    return json{ { "time", w->time },
                 { "world", w->world },
                 { "kind", w->kind == witness_kind::satisfying ? "satisfying" : "refuting" } };
}

// {model, formula, verdict, witness}
[[nodiscard]] inline json check_report( const std::string& model, const std::string& formula, const std::string& verdict,
                                        const std::optional< witness >& w )
{
    return json{ { "model", model }, { "formula", formula }, { "verdict", verdict }, { "witness", to_json( w ) } };
}

[[nodiscard]] inline json to_json( const theorem_report& r )
{
    json j = check_report( r.model, r.formula, to_string( r.result ), r.counterexample );
    j[ "theorem" ] = r.theorem;
    if ( r.theorem == "theorem1" )
        j[ "antecedent" ] = json{ { "formula", theorems::antecedent_text }, { "witness", to_json( r.antecedent ) } };
    return j;
}

[[nodiscard]] inline json to_json( const theorem_sweep_report& r )
{
    auto violations = []( const std::vector< sweep_violation >& vs ) {
        json arr = json::array();
        for ( const auto& v : vs )
        {
            json j = to_json( v.report );
            j[ "model_index" ] = v.model_index;
            arr.push_back( std::move( j ) );
        }
        return arr;
    };
    json j{ { "spec", to_string( r.spec ) },
            { "models", r.models },
            { "theorem1",
              { { "holds", r.theorem1_holds },
                { "vacuous", r.theorem1_vacuous },
                { "violations", violations( r.theorem1_violations ) } } },
            { "theorem2", { { "holds", r.theorem2_holds }, { "violations", violations( r.theorem2_violations ) } } } };
    if ( r.theorem2_unguarded_holds )
        j[ "theorem2_unguarded" ] = { { "holds", *r.theorem2_unguarded_holds },
                                      { "violations", violations( r.theorem2_unguarded_violations ) } };
    j[ "verdict" ] = r.ok() ? "holds" : "VIOLATION";
    return j;
}

[[nodiscard]] inline json to_json( const completeness_report& r )
{
    json j{ { "language", std::string{ definability_language } },
            { "depth", r.depth },
            { "verdict", r.complete ? "complete" : "incomplete" } };
    if ( r.witness )
        j[ "witness" ] = { { "sort", std::string{ to_char( r.witness->sort ) } },
                           { "set", r.witness->worlds },
                           { "formula", r.witness->text } };
    else
        j[ "witness" ] = nullptr;
    return j;
}

[[nodiscard]] inline json to_json( const bk_sweep_report& r )
{
    json models = json::array();
    for ( const auto& d : r.complete_models )
        models.push_back( to_json( d ) );
    return json{ { "spec", to_string( r.spec ) },
                 { "depth", r.depth },
                 { "language", std::string{ definability_language } },
                 { "models_total", r.models_total },
                 { "models_incomplete", r.models_incomplete },
                 { "complete_models", std::move( models ) } };
}

[[nodiscard]] inline json to_json( const yablo::assignment& a )
{
    return json{ { "prefix", a.prefix }, { "loop", a.loop }, { "text", yablo::to_string( a ) } };
}

} // namespace ital
