#pragma once

// JSON model files:
//
//   { "worlds_a": ["x1", ...], "worlds_b": ["y1", ...],
//     "prefix_len": 0, "loop_len": 1,
//     "slices": [ { "rel_ab": [["x1","y1"], ...], "rel_ba": [["y1","x2"], ...] } ],
//     "valuation": { "p": [[0, "x1"], ...] },
//     "strict_proper": true }
//
// Unknown fields are rejected. valuation and strict_proper are optional.

#include "model.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ital
{

class model_format_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

namespace detail
{

using json = nlohmann::ordered_json;

inline void reject_unknown( const json& obj, std::initializer_list< std::string_view > allowed, const std::string& where )
{
    for ( const auto& [ key, _ ] : obj.items() )
    {
        bool ok = false;
        for ( auto a : allowed )
            ok = ok || a == key;
        if ( !ok )
            throw model_format_error( "unknown field '" + key + "' in " + where );
    }
}

inline const json& require( const json& obj, const std::string& key, const std::string& where )
{
    auto it = obj.find( key );
    if ( it == obj.end() )
        throw model_format_error( "missing field '" + key + "' in " + where );
    return *it;
}

inline model_description::pair_list read_pairs( const json& arr, const std::string& where )
{
    if ( !arr.is_array() )
        throw model_format_error( where + " must be an array of pairs" );
    model_description::pair_list out;
    for ( const auto& p : arr )
    {
        if ( !p.is_array() || p.size() != 2 || !p[ 0 ].is_string() || !p[ 1 ].is_string() )
            throw model_format_error( where + " entries must be [world, world] string pairs" );
        out.emplace_back( p[ 0 ].get< std::string >(), p[ 1 ].get< std::string >() );
    }
    return out;
}

inline std::vector< std::string > read_worlds( const json& arr, const std::string& where )
{
    if ( !arr.is_array() )
        throw model_format_error( where + " must be an array of strings" );
    std::vector< std::string > out;
    for ( const auto& w : arr )
    {
        if ( !w.is_string() )
            throw model_format_error( where + " must be an array of strings" );
        out.push_back( w.get< std::string >() );
    }
    return out;
}

inline std::int64_t read_int( const json& v, const std::string& where )
{
    if ( !v.is_number_integer() )
        throw model_format_error( where + " must be an integer" );
    return v.get< std::int64_t >();
}

} // namespace detail

[[nodiscard]] inline model_description parse_model_description( const std::string& text )
{
    using detail::json;
    json doc;
    try
    {
        doc = json::parse( text );
    }
    catch ( const json::parse_error& e )
    {
        throw model_format_error( std::string{ "malformed JSON: " } + e.what() );
    }
    if ( !doc.is_object() )
        throw model_format_error( "model file must contain a JSON object" );
    detail::reject_unknown( doc, { "worlds_a", "worlds_b", "prefix_len", "loop_len", "slices", "valuation", "strict_proper" },
                            "model" );

    model_description d;
    d.worlds_a = detail::read_worlds( detail::require( doc, "worlds_a", "model" ), "worlds_a" );
    d.worlds_b = detail::read_worlds( detail::require( doc, "worlds_b", "model" ), "worlds_b" );
    d.prefix_len = detail::read_int( detail::require( doc, "prefix_len", "model" ), "prefix_len" );
    d.loop_len = detail::read_int( detail::require( doc, "loop_len", "model" ), "loop_len" );

    const auto& slices = detail::require( doc, "slices", "model" );
    if ( !slices.is_array() )
        throw model_format_error( "slices must be an array" );
    for ( std::size_t t = 0; t < slices.size(); ++t )
    {
        const auto& s = slices[ t ];
        const std::string where = "slices[" + std::to_string( t ) + "]";
        if ( !s.is_object() )
            throw model_format_error( where + " must be an object" );
        detail::reject_unknown( s, { "rel_ab", "rel_ba" }, where );
        d.slices.push_back( { detail::read_pairs( detail::require( s, "rel_ab", where ), where + ".rel_ab" ),
                              detail::read_pairs( detail::require( s, "rel_ba", where ), where + ".rel_ba" ) } );
    }

    if ( auto it = doc.find( "valuation" ); it != doc.end() )
    {
        if ( !it->is_object() )
            throw model_format_error( "valuation must be an object" );
        for ( const auto& [ p, points ] : it->items() )
        {
            if ( !points.is_array() )
                throw model_format_error( "valuation of '" + p + "' must be an array" );
            auto& out = d.valuation[ p ];
            for ( const auto& pt : points )
            {
                if ( !pt.is_array() || pt.size() != 2 || !pt[ 0 ].is_number_integer() || !pt[ 1 ].is_string() )
                    throw model_format_error( "valuation of '" + p + "' entries must be [time, world]" );
                out.emplace_back( pt[ 0 ].get< std::int64_t >(), pt[ 1 ].get< std::string >() );
            }
        }
    }
    if ( auto it = doc.find( "strict_proper" ); it != doc.end() )
    {
        if ( !it->is_boolean() )
            throw model_format_error( "strict_proper must be a boolean" );
        d.strict_proper = it->get< bool >();
    }
    return d;
}

[[nodiscard]] inline temporal_model parse_model( const std::string& text )
{
    return validate( parse_model_description( text ) );
}

[[nodiscard]] inline temporal_model load_model( const std::string& path )
{
    std::ifstream in{ path };
    if ( !in )
        throw model_format_error( "cannot read model file '" + path + "'" );
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model( buf.str() );
}

[[nodiscard]] inline nlohmann::ordered_json to_json( const model_description& d )
{
    nlohmann::ordered_json j;
    j[ "worlds_a" ] = d.worlds_a;
    j[ "worlds_b" ] = d.worlds_b;
    j[ "prefix_len" ] = d.prefix_len;
    j[ "loop_len" ] = d.loop_len;
    j[ "slices" ] = nlohmann::ordered_json::array();
    for ( const auto& s : d.slices )
    {
        nlohmann::ordered_json js;
        js[ "rel_ab" ] = nlohmann::ordered_json::array();
        js[ "rel_ba" ] = nlohmann::ordered_json::array();
        for ( const auto& [ x, y ] : s.rel_ab )
            js[ "rel_ab" ].push_back( { x, y } );
        for ( const auto& [ y, x ] : s.rel_ba )
            js[ "rel_ba" ].push_back( { y, x } );
        j[ "slices" ].push_back( std::move( js ) );
    }
    j[ "valuation" ] = nlohmann::ordered_json::object();
    for ( const auto& [ p, points ] : d.valuation )
    {
        auto& arr = j[ "valuation" ][ p ] = nlohmann::ordered_json::array();
        for ( const auto& [ t, w ] : points )
            arr.push_back( { t, w } );
    }
    j[ "strict_proper" ] = d.strict_proper;
    return j;
}

[[nodiscard]] inline nlohmann::ordered_json to_json( const temporal_model& m ) { return to_json( m.describe() ); }

} // namespace ital
