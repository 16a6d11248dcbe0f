#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ital::detail
{

[[nodiscard]] inline unsigned default_jobs()
{
    return std::max( 1u, std::thread::hardware_concurrency() );
}

// Runs body( k ) for k in [0, count) on `jobs` threads. The body must only
// touch state owned by index k; the first exception is rethrown.
template < typename Body >
void parallel_for( std::uint64_t count, unsigned jobs, Body&& body )
{
    jobs = std::max( 1u, jobs );
    if ( jobs == 1 || count < 2 )
    {
        for ( std::uint64_t k = 0; k < count; ++k )
            body( k );
        return;
    }

    std::atomic< std::uint64_t > next{ 0 };
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [ & ] {
        try
        {
            for ( std::uint64_t k = next++; k < count; k = next++ )
                body( k );
        }
        catch ( ... )
        {
            std::lock_guard lock{ failure_lock };
            if ( !failure )
                failure = std::current_exception();
            next = count;
        }
    };

    std::vector< std::thread > pool;
    for ( unsigned i = 0; i < jobs; ++i )
        pool.emplace_back( worker );
    for ( auto& t : pool )
        t.join();
    if ( failure )
        std::rethrow_exception( failure );
}

} // namespace ital::detail
