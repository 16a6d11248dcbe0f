#pragma once

// Satisfiability and validity on a single model, and instance checks of the
// two temporal paradox theorems:
//
//   (1) if G(A[a,b] Ub) is satisfiable then
//       G(B[a,b] A[b,a] (X G D)) -> G D is valid;
//   (2) !G(B[a,b] A[b,a] (Ua & X G D)) is valid.

#include "detail/parallel.hpp"
#include "formula.hpp"
#include "model.hpp"
#include "semantics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ital
{

enum class witness_kind { satisfying, refuting };

struct witness
{
    std::size_t time = 0; // canonical
    std::string world;
    witness_kind kind = witness_kind::satisfying;

    friend bool operator==( const witness&, const witness& ) = default;
};

namespace detail
{

// First canonical point (time-major, then world order) where f evaluates to
// `wanted`.
inline std::optional< witness > first_point( const temporal_model& m, const core_formula& f, bool wanted )
{
    evaluator ev{ m };
    for ( std::size_t t = 0; t < m.horizon(); ++t )
        for ( world_index w = 0; w < m.world_count(); ++w )
            if ( ev.holds( t, w, f ) == wanted )
                return witness{ t, m.name( w ), wanted ? witness_kind::satisfying : witness_kind::refuting };
    return std::nullopt;
}

} // namespace detail

[[nodiscard]] inline std::optional< witness > satisfiable( const temporal_model& m, const core_formula& f )
{
    return detail::first_point( m, f, true );
}

[[nodiscard]] inline std::optional< witness > satisfiable( const temporal_model& m, const formula& f )
{
    return satisfiable( m, desugar( f ) );
}

// Refuting witness, or nullopt when f holds everywhere.
[[nodiscard]] inline std::optional< witness > valid( const temporal_model& m, const core_formula& f )
{
    return detail::first_point( m, f, false );
}

[[nodiscard]] inline std::optional< witness > valid( const temporal_model& m, const formula& f )
{
    return valid( m, desugar( f ) );
}

// ---------------------------------------------------------------------------

enum class verdict { holds, vacuous, violation };

[[nodiscard]] inline const char* to_string( verdict v )
{
    switch ( v )
    {
    case verdict::holds: return "holds";
    case verdict::vacuous: return "vacuous";
    case verdict::violation: return "VIOLATION";
    }
    return "";
}

struct theorem_report
{
    std::string theorem; // "theorem1" / "theorem2"
    std::string model;   // shape summary
    std::string formula; // checked formula, concrete syntax
    verdict result = verdict::holds;
    std::optional< witness > antecedent;
    std::optional< witness > counterexample;
};

namespace theorems
{

inline const std::string antecedent_text = "G(A[a,b] Ub)";
inline const std::string theorem1_text = "G(B[a,b] A[b,a] (X G D)) -> G D";
inline const std::string theorem2_text = "!G(B[a,b] A[b,a] (Ua & X G D))";
// The form used inside the proof of (2), without the Ua conjunct.
inline const std::string theorem2_unguarded_text = "!G(B[a,b] A[b,a] (X G D))";

inline const core_formula& antecedent()
{
    static const core_formula f = desugar( parse( antecedent_text ) );
    return f;
}
inline const core_formula& theorem1()
{
    static const core_formula f = desugar( parse( theorem1_text ) );
    return f;
}
inline const core_formula& theorem2()
{
    static const core_formula f = desugar( parse( theorem2_text ) );
    return f;
}
inline const core_formula& theorem2_unguarded()
{
    static const core_formula f = desugar( parse( theorem2_unguarded_text ) );
    return f;
}

} // namespace theorems

[[nodiscard]] inline theorem_report check_theorem1( const temporal_model& m )
{
    theorem_report r{ "theorem1", m.summary(), theorems::theorem1_text, verdict::holds, {}, {} };
    r.antecedent = satisfiable( m, theorems::antecedent() );
    if ( !r.antecedent )
    {
        r.result = verdict::vacuous;
        return r;
    }
    r.counterexample = valid( m, theorems::theorem1() );
    if ( r.counterexample )
        r.result = verdict::violation;
    return r;
}

enum class theorem2_form { stated, unguarded };

[[nodiscard]] inline theorem_report check_theorem2( const temporal_model& m, theorem2_form form = theorem2_form::stated )
{
    const bool stated = form == theorem2_form::stated;
    theorem_report r{ stated ? "theorem2" : "theorem2-unguarded", m.summary(),
                      stated ? theorems::theorem2_text : theorems::theorem2_unguarded_text, verdict::holds, {}, {} };
    r.counterexample = valid( m, stated ? theorems::theorem2() : theorems::theorem2_unguarded() );
    if ( r.counterexample )
        r.result = verdict::violation;
    return r;
}

// ---------------------------------------------------------------------------
// Sweeps over enumerated models

struct sweep_violation
{
    std::uint64_t model_index = 0;
    theorem_report report;
};

struct theorem_sweep_report
{
    enum_spec spec;
    std::uint64_t models = 0;
    std::uint64_t theorem1_holds = 0;
    std::uint64_t theorem1_vacuous = 0;
    std::vector< sweep_violation > theorem1_violations;
    std::uint64_t theorem2_holds = 0;
    std::vector< sweep_violation > theorem2_violations;
    // Only populated when the unguarded form is requested.
    std::optional< std::uint64_t > theorem2_unguarded_holds;
    std::vector< sweep_violation > theorem2_unguarded_violations;

    [[nodiscard]] bool ok() const
    {
        return theorem1_violations.empty() && theorem2_violations.empty() && theorem2_unguarded_violations.empty();
    }
};

[[nodiscard]] inline theorem_sweep_report sweep_theorems( const enum_spec& spec, unsigned jobs = detail::default_jobs(),
                                                          bool include_unguarded = false )
{
    model_enumerator models{ spec };
    require_sweepable( models );

    // Per model: verdict of theorem 1 in the low bits, failure flags above.
    enum : std::uint8_t { t1_mask = 3, t2_failed = 4, t2u_failed = 8 };
    std::vector< std::uint8_t > status( models.count(), 0 );
    detail::parallel_for( models.count(), jobs, [ & ]( std::uint64_t k ) {
        const auto m = models.model_at( k );
        auto s = static_cast< std::uint8_t >( check_theorem1( m ).result );
        if ( check_theorem2( m ).result != verdict::holds )
            s |= t2_failed;
        if ( include_unguarded && check_theorem2( m, theorem2_form::unguarded ).result != verdict::holds )
            s |= t2u_failed;
        status[ k ] = s;
    } );

    // Reports are rebuilt only for the failing models.
    theorem_sweep_report out;
    out.spec = spec;
    out.models = models.count();
    if ( include_unguarded )
        out.theorem2_unguarded_holds = 0;
    for ( std::uint64_t k = 0; k < status.size(); ++k )
    {
        const auto s = status[ k ];
        switch ( static_cast< verdict >( s & t1_mask ) )
        {
        case verdict::holds: ++out.theorem1_holds; break;
        case verdict::vacuous: ++out.theorem1_vacuous; break;
        case verdict::violation: out.theorem1_violations.push_back( { k, check_theorem1( models.model_at( k ) ) } ); break;
        }
        if ( s & t2_failed )
            out.theorem2_violations.push_back( { k, check_theorem2( models.model_at( k ) ) } );
        else
            ++out.theorem2_holds;
        if ( include_unguarded )
        {
            if ( s & t2u_failed )
                out.theorem2_unguarded_violations.push_back(
                        { k, check_theorem2( models.model_at( k ), theorem2_form::unguarded ) } );
            else
                ++*out.theorem2_unguarded_holds;
        }
    }
    return out;
}

} // namespace ital
