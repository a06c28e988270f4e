#pragma once

#include "birat3/blowup.hpp"
#include "birat3/depth.hpp"
#include "birat3/links.hpp"
#include "birat3/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace birat3 {

// A chart over V = (xy + u f(z,u) = 0) in A^4 / 1/r(beta, -beta, 1, 0).
struct FlopChart {
    std::string name;
    QuotientAction action;
    std::vector<std::string> vars;
    Poly equation;
    MonomialMap coord_map;  // x, y, z, u of V in terms of the chart coordinates
    RExps factor;           // exceptional monomial cleared from the equation of V
};

struct FlopModel {
    std::int64_t r = 1;
    std::int64_t beta = 0;
    Poly f;  // in x, y, z, u; only z and u occur
    std::int64_t k = 2;
    std::int64_t m = 1;  // w(f) for w(z, u) = (1/r, 1)
    Poly v_equation;
    QuotientAction action;
    std::vector<FlopChart> z1;  // U_{1,x}, U_{1,u} of Bl_(x,u) V
    std::vector<FlopChart> z2;  // U_{2,y}, U_{2,u} of Bl_(y,u) V
    std::optional<Poly> source_f;  // f of X when built from a link
};

// Errors: k <= 1, beta not a unit mod r, f not a function of z^r and u, f reducible.
FlopModel make_flop_model(std::int64_t r, std::int64_t beta, const Poly& f);
// X = xy + f(z,u) and a cA/r link carrying the flop flag; V uses f(z u^{1/r}, u) / u^k.
FlopModel build_flop(const SingularityModel& x, const LinkResult& link);
// f of X read back from the U_{1,u} chart of Z_1
Poly recover_source_f(const FlopModel& fm);
// m = 1 only: u' = lambda u + z^{rk} turns u f into u' f'
FlopModel normalize_m1(const FlopModel& fm);

// Strict w-morphism weight over V used for the factorization.
WeightVector strict_weight(const FlopModel& fm);

// ---------------------------------------------------------------------------
// Irreducibility of a function of z^r and u over Q

enum class Factorization { Reducible, IrreducibleOverQ, Undecided };
std::string to_string(Factorization f);

struct IrreducibilityResult {
    Factorization outcome = Factorization::Undecided;
    bool absolute = false;     // also irreducible over C
    std::vector<Poly> factors;  // witnesses when reducible
    std::string method;
};

IrreducibilityResult invariant_irreducibility(const Poly& f, std::int64_t r);

// ---------------------------------------------------------------------------

struct ChartAtlas {
    std::vector<FlopChart> v_side;  // U''_1 .. U''_5 (U''_5 only when m < k)
    std::vector<FlopChart> z_side;  // U'_1 .. U'_5
};

struct VPrimeReport {
    ChartAtlas atlas;
    Poly f_prime;  // U'_u is xy + f_prime
    Poly f_second;  // f(z^{1/r}, zu) / z^m
    Rat w_f_second;
    bool uz_smooth = false;
    IrreducibilityResult irreducibility;
    std::string q_factorial;  // "yes", "no" or "undecided"
};

VPrimeReport v_prime(const FlopModel& fm, const WeightVector& w);

// empty when the chart equation is the cleared pull-back of the equation of V
std::vector<std::string> check_chart(const FlopModel& fm, const FlopChart& c);

// linear coordinates eliminated and the action reduced
struct NormalizedChart {
    QuotientAction action;
    std::vector<std::string> vars;
    std::vector<Poly> equations;
    bool operator==(const NormalizedChart& o) const {
        return action == o.action && vars == o.vars && equations == o.equations;
    }
};
NormalizedChart normalize_chart(const FlopChart& c);

struct FlipReport {
    std::vector<std::int64_t> v_indices;  // cyclic quotient indices on V''_1
    std::vector<std::int64_t> z_indices;  // on Z'_1
    std::int64_t delta = 0;                // from the indices
    std::int64_t delta_gdep = 0;           // from gdep of the chart origins
    std::string flip_type = "IA (recorded, not verified)";
};

FlipReport flip_bookkeeping(const FlopModel& fm, const WeightVector& w, DepthEngine& eng);

// ---------------------------------------------------------------------------
// Omega-type labels of factorization diagrams between smooth threefolds, read as a
// path of smooth flops, blow-ups of smooth curves and blow-downs.

enum class DiagramStep { Flop, BlowUp, BlowDown };

struct MalformedDiagram : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

int omega_label(const std::vector<DiagramStep>& path);
// labels of the pieces of an Omega-type factorization
std::vector<int> omega_factorization(const std::vector<DiagramStep>& path);

}  // namespace birat3
