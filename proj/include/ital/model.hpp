#pragma once

// Finite iTAL models. Time is an ultimately periodic lasso: slices
// 0 .. prefix_len-1 happen once, slices prefix_len .. prefix_len+loop_len-1
// repeat forever. Worlds are indexed a-sort first, then b-sort.

#include "formula.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ital
{

using world_index = std::uint32_t;
using world_mask = std::uint64_t;

inline constexpr std::size_t max_worlds = 64;

[[nodiscard]] constexpr world_mask bit( world_index w ) { return world_mask{ 1 } << w; }

// Unvalidated model, as read from a model file.
struct model_description
{
    using pair_list = std::vector< std::pair< std::string, std::string > >;

    struct slice
    {
        pair_list rel_ab;
        pair_list rel_ba;
    };

    std::vector< std::string > worlds_a;
    std::vector< std::string > worlds_b;
    std::int64_t prefix_len = 0;
    std::int64_t loop_len = 1;
    std::vector< slice > slices;
    std::map< std::string, std::vector< std::pair< std::int64_t, std::string > > > valuation;
    bool strict_proper = true;
};

struct violation
{
    std::string invariant; // e.g. "seriality", "properness"
    std::string message;
    std::optional< std::string > world;
    std::optional< std::size_t > time;
};

class model_error : public std::runtime_error
{
    std::vector< violation > _violations;

    static std::string summarize( const std::vector< violation >& vs )
    {
        std::string out = "invalid model:";
        for ( const auto& v : vs )
            out += "\n  " + v.invariant + ": " + v.message;
        return out;
    }

public:
    explicit model_error( std::vector< violation > vs )
        : std::runtime_error{ summarize( vs ) }, _violations{ std::move( vs ) }
    {}

    [[nodiscard]] const std::vector< violation >& violations() const { return _violations; }
};

class unknown_world : public std::out_of_range
{
public:
    explicit unknown_world( const std::string& name ) : std::out_of_range{ "unknown world '" + name + "'" } {}
};

// One time step's belief model. successors[w] holds both directions of the
// possibility relation, so it is the union P^a ∪ P^b restricted to w.
class belief_slice
{
    std::vector< world_mask > _successors;

public:
    belief_slice() = default;
    explicit belief_slice( std::vector< world_mask > successors ) : _successors{ std::move( successors ) } {}

    [[nodiscard]] world_mask successors( world_index w ) const { return _successors[ w ]; }
    [[nodiscard]] bool related( world_index from, world_index to ) const { return ( _successors[ from ] & bit( to ) ) != 0; }

    friend bool operator==( const belief_slice&, const belief_slice& ) = default;
};

class model_enumerator;
class temporal_model;
temporal_model validate( const model_description& raw );

class temporal_model
{
    std::vector< std::string > _names;
    std::size_t _size_a = 0;
    std::unordered_map< std::string, world_index > _index;
    std::size_t _prefix = 0;
    std::size_t _loop = 1;
    std::vector< belief_slice > _slices;
    std::map< std::string, std::vector< world_mask > > _valuation; // one mask per stored time
    bool _strict = true;

    temporal_model() = default;

    void index_names()
    {
        _index.clear();
        for ( world_index w = 0; w < _names.size(); ++w )
            _index.emplace( _names[ w ], w );
    }

    friend class model_enumerator;
    friend temporal_model validate( const model_description& raw );

public:
    [[nodiscard]] std::size_t size_a() const { return _size_a; }
    [[nodiscard]] std::size_t size_b() const { return _names.size() - _size_a; }
    [[nodiscard]] std::size_t world_count() const { return _names.size(); }

    [[nodiscard]] const std::string& name( world_index w ) const { return _names.at( w ); }
    [[nodiscard]] const std::vector< std::string >& names() const { return _names; }

    [[nodiscard]] std::optional< world_index > find( const std::string& name ) const
    {
        auto it = _index.find( name );
        if ( it == _index.end() )
            return std::nullopt;
        return it->second;
    }

    [[nodiscard]] world_index index( const std::string& name ) const
    {
        auto w = find( name );
        if ( !w )
            throw unknown_world( name );
        return *w;
    }

    [[nodiscard]] agent sort_of( world_index w ) const { return w < _size_a ? agent::a : agent::b; }

    [[nodiscard]] world_mask sort_mask( agent who ) const
    {
        world_mask a = _size_a == 64 ? ~world_mask{ 0 } : ( bit( static_cast< world_index >( _size_a ) ) - 1 );
        return who == agent::a ? a : all_mask() & ~a;
    }

    [[nodiscard]] world_mask all_mask() const
    {
        return _names.size() == 64 ? ~world_mask{ 0 } : bit( static_cast< world_index >( _names.size() ) ) - 1;
    }

    [[nodiscard]] std::size_t prefix_len() const { return _prefix; }
    [[nodiscard]] std::size_t loop_len() const { return _loop; }
    // Number of stored (canonical) time indices.
    [[nodiscard]] std::size_t horizon() const { return _prefix + _loop; }
    [[nodiscard]] bool strict_proper() const { return _strict; }
    [[nodiscard]] bool is_static() const { return _prefix == 0 && _loop == 1; }

    [[nodiscard]] std::size_t canon_time( std::uint64_t n ) const
    {
        if ( n < horizon() )
            return static_cast< std::size_t >( n );
        return _prefix + static_cast< std::size_t >( ( n - _prefix ) % _loop );
    }

    // Successor of a canonical time index.
    [[nodiscard]] std::size_t next_time( std::size_t t ) const { return t + 1 < horizon() ? t + 1 : _prefix; }

    // Canonical indices reachable from t: {t .. T-1} in the prefix, the whole
    // loop otherwise.
    [[nodiscard]] std::pair< std::size_t, std::size_t > future_closure( std::size_t t ) const
    {
        return { t < _prefix ? t : _prefix, horizon() };
    }

    [[nodiscard]] const belief_slice& slice( std::size_t t ) const { return _slices.at( t ); }
    [[nodiscard]] const std::vector< belief_slice >& slices() const { return _slices; }

    [[nodiscard]] world_mask successors( std::size_t t, world_index w ) const { return _slices[ t ].successors( w ); }

    // Worlds where p holds at canonical time t; empty for unknown p.
    [[nodiscard]] world_mask prop_mask( const std::string& p, std::size_t t ) const
    {
        auto it = _valuation.find( p );
        return it == _valuation.end() ? 0 : it->second[ t ];
    }

    [[nodiscard]] const std::map< std::string, std::vector< world_mask > >& valuation() const { return _valuation; }

    [[nodiscard]] std::set< std::string > names_of( world_mask m ) const
    {
        std::set< std::string > out;
        for ( world_index w = 0; w < _names.size(); ++w )
            if ( m & bit( w ) )
                out.insert( _names[ w ] );
        return out;
    }

    [[nodiscard]] model_description describe() const
    {
        model_description d;
        d.worlds_a.assign( _names.begin(), _names.begin() + static_cast< std::ptrdiff_t >( _size_a ) );
        d.worlds_b.assign( _names.begin() + static_cast< std::ptrdiff_t >( _size_a ), _names.end() );
        d.prefix_len = static_cast< std::int64_t >( _prefix );
        d.loop_len = static_cast< std::int64_t >( _loop );
        d.strict_proper = _strict;
        for ( const auto& s : _slices )
        {
            model_description::slice out;
            for ( world_index w = 0; w < _names.size(); ++w )
                for ( world_index z = 0; z < _names.size(); ++z )
                    if ( s.related( w, z ) )
                        ( sort_of( w ) == agent::a ? out.rel_ab : out.rel_ba ).emplace_back( _names[ w ], _names[ z ] );
            d.slices.push_back( std::move( out ) );
        }
        for ( const auto& [ p, masks ] : _valuation )
        {
            auto& points = d.valuation[ p ];
            for ( std::size_t t = 0; t < masks.size(); ++t )
                for ( world_index w = 0; w < _names.size(); ++w )
                    if ( masks[ t ] & bit( w ) )
                        points.emplace_back( static_cast< std::int64_t >( t ), _names[ w ] );
        }
        return d;
    }

    // One-line shape summary for reports, e.g. "2x2 prefix=0 loop=1".
    [[nodiscard]] std::string summary() const
    {
        std::ostringstream out;
        out << size_a() << 'x' << size_b() << " prefix=" << _prefix << " loop=" << _loop;
        return out.str();
    }

    friend bool operator==( const temporal_model& l, const temporal_model& r )
    {
        return l._names == r._names && l._size_a == r._size_a && l._prefix == r._prefix && l._loop == r._loop
               && l._slices == r._slices && l._valuation == r._valuation && l._strict == r._strict;
    }
};

// Checks every model invariant and collects all violations; throws
// model_error if there is at least one.
inline temporal_model validate( const model_description& raw )
{
    std::vector< violation > errors;
    auto report = [ & ]( std::string invariant, std::string message, std::optional< std::string > world = {},
                         std::optional< std::size_t > time = {} ) {
        errors.push_back( { std::move( invariant ), std::move( message ), std::move( world ), time } );
    };

    if ( raw.loop_len < 1 )
        report( "loop_len", "loop_len must be at least 1, got " + std::to_string( raw.loop_len ) );
    if ( raw.prefix_len < 0 )
        report( "prefix_len", "prefix_len must be non-negative, got " + std::to_string( raw.prefix_len ) );
    if ( raw.worlds_a.empty() )
        report( "nonempty", "worlds_a is empty" );
    if ( raw.worlds_b.empty() )
        report( "nonempty", "worlds_b is empty" );
    if ( raw.worlds_a.size() + raw.worlds_b.size() > max_worlds )
        report( "size", "at most " + std::to_string( max_worlds ) + " worlds are supported" );
    if ( !errors.empty() )
        throw model_error( std::move( errors ) );

    const auto horizon = static_cast< std::size_t >( raw.prefix_len + raw.loop_len );
    if ( raw.slices.size() != horizon )
        report( "slice_count", "expected " + std::to_string( horizon ) + " slices (prefix_len + loop_len), got "
                                       + std::to_string( raw.slices.size() ) );

    temporal_model m;
    m._size_a = raw.worlds_a.size();
    m._prefix = static_cast< std::size_t >( raw.prefix_len );
    m._loop = static_cast< std::size_t >( raw.loop_len );
    m._strict = raw.strict_proper;
    std::set< std::string > seen_a;
    for ( const auto& w : raw.worlds_a )
        if ( !seen_a.insert( w ).second )
            report( "distinct", "world '" + w + "' listed twice in worlds_a", w );
    std::set< std::string > seen_b;
    for ( const auto& w : raw.worlds_b )
    {
        if ( seen_a.count( w ) )
            report( "disjoint", "world '" + w + "' belongs to both sorts", w );
        if ( !seen_b.insert( w ).second )
            report( "distinct", "world '" + w + "' listed twice in worlds_b", w );
    }
    if ( !errors.empty() )
        throw model_error( std::move( errors ) );

    m._names = raw.worlds_a;
    m._names.insert( m._names.end(), raw.worlds_b.begin(), raw.worlds_b.end() );
    m.index_names();

    for ( std::size_t t = 0; t < raw.slices.size() && t < horizon; ++t )
    {
        std::vector< world_mask > succ( m.world_count(), 0 );
        auto add = [ & ]( const model_description::pair_list& pairs, agent from, const char* rel ) {
            for ( const auto& [ src, dst ] : pairs )
            {
                auto s = m.find( src );
                auto d = m.find( dst );
                if ( !s || !d )
                {
                    report( "unknown_world", std::string{ rel } + " mentions unknown world '" + ( s ? dst : src ) + "'",
                            s ? dst : src, t );
                    continue;
                }
                if ( m.sort_of( *s ) != from || m.sort_of( *d ) != other( from ) )
                {
                    report( "sort", std::string{ rel } + " pair (" + src + ", " + dst + ") crosses the wrong sorts",
                            src, t );
                    continue;
                }
                succ[ *s ] |= bit( *d );
            }
        };
        add( raw.slices[ t ].rel_ab, agent::a, "rel_ab" );
        add( raw.slices[ t ].rel_ba, agent::b, "rel_ba" );

        bool full_ab = true;
        bool full_ba = true;
        for ( world_index w = 0; w < m.world_count(); ++w )
        {
            const agent s = m.sort_of( w );
            if ( succ[ w ] == 0 )
                report( "seriality",
                        "world '" + m.name( w ) + "' has no successor at time " + std::to_string( t ), m.name( w ), t );
            const bool full = succ[ w ] == m.sort_mask( other( s ) );
            ( s == agent::a ? full_ab : full_ba ) &= full;
        }
        if ( raw.strict_proper && full_ab )
            report( "properness", "rel_ab equals the full product worlds_a x worlds_b at time " + std::to_string( t ),
                    std::nullopt, t );
        if ( raw.strict_proper && full_ba )
            report( "properness", "rel_ba equals the full product worlds_b x worlds_a at time " + std::to_string( t ),
                    std::nullopt, t );
        m._slices.emplace_back( std::move( succ ) );
    }

    for ( const auto& [ p, points ] : raw.valuation )
    {
        if ( !is_proposition_name( p ) )
        {
            report( "valuation", is_reserved( p ) ? "valuation assigns reserved atom '" + p + "'"
                                                  : "valuation key '" + p + "' is not an identifier" );
            continue;
        }
        auto& masks = m._valuation[ p ];
        masks.assign( horizon, 0 );
        for ( const auto& [ time, world ] : points )
        {
            auto w = m.find( world );
            if ( !w )
            {
                report( "valuation", "valuation of '" + p + "' mentions unknown world '" + world + "'", world );
                continue;
            }
            if ( time < 0 || static_cast< std::size_t >( time ) >= horizon )
            {
                report( "valuation", "valuation of '" + p + "' uses time " + std::to_string( time )
                                             + " outside the stored range", world );
                continue;
            }
            masks[ static_cast< std::size_t >( time ) ] |= bit( *w );
        }
    }

    if ( !errors.empty() )
        throw model_error( std::move( errors ) );
    return m;
}

// ---------------------------------------------------------------------------
// Enumeration

struct enum_spec
{
    std::size_t size_a = 2;
    std::size_t size_b = 2;
    std::size_t prefix_len = 0;
    std::size_t loop_len = 1;
    bool strict_proper = true;
    bool time_varying = true; // false: every slice is the same relation

    friend bool operator==( const enum_spec&, const enum_spec& ) = default;
};

class infeasible_spec : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// "a=2,b=2,prefix=0,loop=2,strict". Flags: strict / nonstrict,
// varying / constant. Unmentioned fields keep their defaults.
[[nodiscard]] inline enum_spec parse_enum_spec( const std::string& text )
{
    enum_spec spec;
    std::istringstream in{ text };
    std::string item;
    auto number = [ & ]( const std::string& key, const std::string& value ) {
        std::size_t used = 0;
        unsigned long n = 0;
        try
        {
            n = std::stoul( value, &used );
        }
        catch ( const std::exception& )
        {
            used = 0;
        }
        if ( used != value.size() || value.empty() || value.front() == '-' )
            throw std::invalid_argument( "bad value for '" + key + "' in enumeration spec: '" + value + "'" );
        return static_cast< std::size_t >( n );
    };
    while ( std::getline( in, item, ',' ) )
    {
        auto eq = item.find( '=' );
        if ( eq == std::string::npos )
        {
            if ( item == "strict" )
                spec.strict_proper = true;
            else if ( item == "nonstrict" )
                spec.strict_proper = false;
            else if ( item == "varying" )
                spec.time_varying = true;
            else if ( item == "constant" )
                spec.time_varying = false;
            else
                throw std::invalid_argument( "unknown flag '" + item + "' in enumeration spec" );
            continue;
        }
        auto key = item.substr( 0, eq );
        auto value = item.substr( eq + 1 );
        if ( key == "a" )
            spec.size_a = number( key, value );
        else if ( key == "b" )
            spec.size_b = number( key, value );
        else if ( key == "prefix" )
            spec.prefix_len = number( key, value );
        else if ( key == "loop" )
            spec.loop_len = number( key, value );
        else
            throw std::invalid_argument( "unknown key '" + key + "' in enumeration spec" );
    }
    return spec;
}

[[nodiscard]] inline std::string to_string( const enum_spec& spec )
{
    std::ostringstream out;
    out << "a=" << spec.size_a << ",b=" << spec.size_b << ",prefix=" << spec.prefix_len << ",loop=" << spec.loop_len
        << ',' << ( spec.strict_proper ? "strict" : "nonstrict" ) << ',' << ( spec.time_varying ? "varying" : "constant" );
    return out.str();
}

// Every model of a given shape with empty valuation, each exactly once.
// Model k is available directly through model_at( k ); order is
// lexicographic over (rel_ab mask, rel_ba mask) per slice, earliest slice
// most significant.
class model_enumerator
{
public:
    static constexpr std::size_t max_slice_choices = std::size_t{ 1 } << 20;

private:
    enum_spec _spec;
    std::vector< std::vector< world_mask > > _choices; // per slice choice: successor masks
    std::uint64_t _count = 0;
    std::uint64_t _next = 0;
    std::vector< std::string > _names;

    // Row-major bitmasks over from x to (bit i*to + j) with every row nonempty.
    static std::vector< std::uint64_t > serial_relations( std::size_t from, std::size_t to, bool proper )
    {
        std::vector< std::uint64_t > out;
        const std::size_t bits = from * to;
        const std::uint64_t row = ( std::uint64_t{ 1 } << to ) - 1;
        const std::uint64_t full = ( std::uint64_t{ 1 } << bits ) - 1;
        for ( std::uint64_t r = 1; r <= full; ++r )
        {
            bool serial = true;
            for ( std::size_t i = 0; i < from && serial; ++i )
                serial = ( ( r >> ( i * to ) ) & row ) != 0;
            if ( serial && !( proper && r == full ) )
                out.push_back( r );
        }
        return out;
    }

public:
    explicit model_enumerator( const enum_spec& spec ) : _spec{ spec }
    {
        if ( spec.size_a < 1 || spec.size_b < 1 )
            throw infeasible_spec( "enumeration needs at least one world of each sort" );
        if ( spec.loop_len < 1 )
            throw infeasible_spec( "loop_len must be at least 1" );
        if ( spec.size_a * spec.size_b > 20 )
            throw infeasible_spec( "enumeration is limited to relations over at most 20 pairs per direction" );

        auto ab = serial_relations( spec.size_a, spec.size_b, spec.strict_proper );
        auto ba = serial_relations( spec.size_b, spec.size_a, spec.strict_proper );
        if ( ab.empty() || ba.empty() )
            throw infeasible_spec( "no serial" + std::string{ spec.strict_proper ? " proper" : "" } + " relation exists for "
                                   + std::to_string( spec.size_a ) + "x" + std::to_string( spec.size_b )
                                   + " (properness needs a sort with at least 2 worlds)" );

        if ( ab.size() * ba.size() > max_slice_choices )
            throw infeasible_spec( std::to_string( ab.size() * ba.size() ) + " relation pairs per slice for "
                                   + std::to_string( spec.size_a ) + "x" + std::to_string( spec.size_b )
                                   + " exceeds the enumeration limit of " + std::to_string( max_slice_choices ) );

        const std::size_t na = spec.size_a;
        const std::size_t nb = spec.size_b;
        for ( auto rab : ab )
            for ( auto rba : ba )
            {
                std::vector< world_mask > succ( na + nb, 0 );
                for ( std::size_t i = 0; i < na; ++i )
                    for ( std::size_t j = 0; j < nb; ++j )
                        if ( ( rab >> ( i * nb + j ) ) & 1 )
                            succ[ i ] |= bit( static_cast< world_index >( na + j ) );
                for ( std::size_t j = 0; j < nb; ++j )
                    for ( std::size_t i = 0; i < na; ++i )
                        if ( ( rba >> ( j * na + i ) ) & 1 )
                            succ[ na + j ] |= bit( static_cast< world_index >( i ) );
                _choices.push_back( std::move( succ ) );
            }

        const std::size_t slices = spec.prefix_len + spec.loop_len;
        _count = 1;
        const std::size_t free_slices = spec.time_varying ? slices : 1;
        for ( std::size_t s = 0; s < free_slices; ++s )
        {
            if ( _count > std::numeric_limits< std::uint64_t >::max() / _choices.size() )
                throw infeasible_spec( "enumeration space exceeds 2^64 models" );
            _count *= _choices.size();
        }

        for ( std::size_t i = 1; i <= na; ++i )
            _names.push_back( "x" + std::to_string( i ) );
        for ( std::size_t j = 1; j <= nb; ++j )
            _names.push_back( "y" + std::to_string( j ) );
    }

    [[nodiscard]] const enum_spec& spec() const { return _spec; }
    [[nodiscard]] std::uint64_t count() const { return _count; }
    // Distinct relation pairs per slice.
    [[nodiscard]] std::size_t slice_choices() const { return _choices.size(); }

    [[nodiscard]] temporal_model model_at( std::uint64_t k ) const
    {
        if ( k >= _count )
            throw std::out_of_range( "model index out of range" );
        temporal_model m;
        m._names = _names;
        m._size_a = _spec.size_a;
        m._prefix = _spec.prefix_len;
        m._loop = _spec.loop_len;
        m._strict = _spec.strict_proper;
        m.index_names();
        const std::size_t slices = _spec.prefix_len + _spec.loop_len;
        std::vector< std::size_t > picks( slices );
        if ( _spec.time_varying )
        {
            for ( std::size_t s = slices; s-- > 0; )
            {
                picks[ s ] = static_cast< std::size_t >( k % _choices.size() );
                k /= _choices.size();
            }
        }
        else
            picks.assign( slices, static_cast< std::size_t >( k ) );
        for ( auto p : picks )
            m._slices.emplace_back( _choices[ p ] );
        return m;
    }

    [[nodiscard]] std::optional< temporal_model > next()
    {
        if ( _next >= _count )
            return std::nullopt;
        return model_at( _next++ );
    }
};

[[nodiscard]] inline model_enumerator enumerate_models( const enum_spec& spec ) { return model_enumerator{ spec }; }

// Sweeps keep one status byte per model.
inline constexpr std::uint64_t max_sweep_models = std::uint64_t{ 1 } << 26;

inline void require_sweepable( const model_enumerator& models )
{
    if ( models.count() > max_sweep_models )
        throw infeasible_spec( to_string( models.spec() ) + " has " + std::to_string( models.count() )
                               + " models; sweeps are limited to " + std::to_string( max_sweep_models ) );
}

} // namespace ital
