#pragma once

// Truth assignments to the sentence scheme
//   S_i : for every k > i, S_k is untrue.
// A finite truncation to S_1..S_N has exactly one consistent assignment; no
// ultimately periodic assignment to the infinite scheme is consistent.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ital::yablo
{

inline constexpr std::size_t max_finite = 20;
inline constexpr std::size_t max_periodic = 24;

struct assignment
{
    std::vector< bool > prefix;
    std::vector< bool > loop; // empty for a finite sequence

    // Value of S_{i+1} (0-based i).
    [[nodiscard]] bool value( std::uint64_t i ) const
    {
        if ( i < prefix.size() )
            return prefix[ static_cast< std::size_t >( i ) ];
        if ( loop.empty() )
            throw std::out_of_range( "sentence index beyond a finite assignment" );
        return loop[ static_cast< std::size_t >( ( i - prefix.size() ) % loop.size() ) ];
    }

    friend bool operator==( const assignment&, const assignment& ) = default;
};

[[nodiscard]] inline std::string to_string( const assignment& a )
{
    auto bits = []( const std::vector< bool >& v ) {
        std::string s;
        for ( bool b : v )
            s += b ? 'T' : 'F';
        return s;
    };
    return a.loop.empty() ? bits( a.prefix ) : bits( a.prefix ) + "(" + bits( a.loop ) + ")^w";
}

namespace detail
{

// Bit i of `values` is S_{i+1}; later[i] masks the stored positions whose
// sentences occur strictly after S_{i+1}.
inline bool consistent( std::uint32_t values, const std::vector< std::uint32_t >& later )
{
    for ( std::size_t i = 0; i < later.size(); ++i )
    {
        const bool claim = ( values & later[ i ] ) == 0;
        if ( claim != ( ( values >> i ) & 1u ) )
            return false;
    }
    return true;
}

inline std::vector< bool > unpack( std::uint32_t values, std::size_t from, std::size_t count )
{
    std::vector< bool > out( count );
    for ( std::size_t i = 0; i < count; ++i )
        out[ i ] = ( values >> ( from + i ) ) & 1u;
    return out;
}

} // namespace detail

// All consistent assignments to S_1..S_N where "k > i" ranges over existing
// sentences only.
[[nodiscard]] inline std::vector< assignment > finite_yablo( std::size_t n )
{
    if ( n < 1 || n > max_finite )
        throw std::out_of_range( "finite Yablo length must be in [1, " + std::to_string( max_finite ) + "]" );
    std::vector< std::uint32_t > later( n );
    for ( std::size_t i = 0; i < n; ++i )
        later[ i ] = ( ( std::uint32_t{ 1 } << n ) - 1 ) & ~( ( std::uint32_t{ 2 } << i ) - 1 );

    std::vector< assignment > out;
    for ( std::uint32_t v = 0; v < ( std::uint32_t{ 1 } << n ); ++v )
        if ( detail::consistent( v, later ) )
            out.push_back( { detail::unpack( v, 0, n ), {} } );
    return out;
}

// Searches every ultimately periodic assignment of the given shape; returns
// the first consistent one (by bit pattern), or nullopt.
[[nodiscard]] inline std::optional< assignment > periodic_yablo( std::size_t prefix_len, std::size_t loop_len )
{
    if ( loop_len < 1 )
        throw std::out_of_range( "loop length must be at least 1" );
    const std::size_t total = prefix_len + loop_len;
    if ( total > max_periodic )
        throw std::out_of_range( "prefix + loop must not exceed " + std::to_string( max_periodic ) );

    const std::uint32_t all = ( std::uint32_t{ 1 } << total ) - 1;
    const std::uint32_t loop_mask = all & ~( ( std::uint32_t{ 1 } << prefix_len ) - 1 );
    std::vector< std::uint32_t > later( total );
    for ( std::size_t i = 0; i < total; ++i )
    {
        later[ i ] = all & ~( ( std::uint32_t{ 2 } << i ) - 1 );
        // Every loop position recurs after any position inside the loop.
        if ( i >= prefix_len )
            later[ i ] |= loop_mask;
    }

    for ( std::uint32_t v = 0; v <= all; ++v )
        if ( detail::consistent( v, later ) )
            return assignment{ detail::unpack( v, 0, prefix_len ), detail::unpack( v, prefix_len, loop_len ) };
    return std::nullopt;
}

} // namespace ital::yablo
