#pragma once

#include "birat3/blowup.hpp"
#include "birat3/poly.hpp"
#include "birat3/qlattice.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace birat3 {

struct LinkDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// One of eta_4..eta_n. Valuations are computed from `eta` when not given.
struct EtaData {
    std::optional<Poly> eta;           // eta'_j in the chart coordinates, y_i = y_3 = 0 already imposed
    std::optional<std::size_t> delta;  // 1-based coordinate with a pure power in eta
    std::optional<Rat> vE;             // v_E(eta_j)
    std::optional<Rat> vF;             // v_F(eta'_j)
};

// Y -> X with weight a, Z_1 -> Y with weight a2 over a point of chart i.
// All positions are 1-based coordinate indices in the order of a.
struct LinkData {
    WeightVector a;
    WeightVector a2;
    std::size_t chart_index = 1;
    std::size_t duval_index = 3;
    std::vector<EtaData> eta;
    std::int64_t m = 1;
    bool gamma_irreducible = false;  // attested by the caller, never checked

    std::size_t n() const { return a.n(); }
    std::int64_t r() const { return a.r; }
    std::int64_t r2() const { return a2.r; }
};

Rat eta_vE(const LinkData& d, std::size_t j);  // j indexes d.eta
Rat eta_vF(const LinkData& d, std::size_t j);

struct XiResult {
    bool holds = false;   // Xi
    bool strict = false;  // Xi_-
    std::vector<std::string> failures;
};

XiResult xi_condition(const LinkData& d);
// four-dimensional blow-up and a_j <= a_i off i, the Du Val slot and the deltas
bool xi_prime(const LinkData& d);

bool theta_index(const LinkData& d, std::size_t j);
// v_E(u) < (a(E,X)/a(F,X)) v_F(u) for a function u on X in the coordinates of a
bool theta_function(const LinkData& d, const Poly& u);
Rat valuation_E(const LinkData& d, const Poly& u);
Rat valuation_F(const LinkData& d, const Poly& u);

struct DiscrepancyPair {
    Rat aEX, aFX;
};
DiscrepancyPair dcp_discrepancies(std::int64_t a3, std::int64_t r, std::int64_t a2i, std::int64_t r2);
DiscrepancyPair dcp_discrepancies(const LinkData& d);

Rat kng_intersection(const LinkData& d);

struct LinkResult {
    Contraction linked;  // Y_1 -> X
    bool flop = false;   // eta_4 == y
    Poly eta4;
    LinkData data;
    std::string note;
};

// cA/r point xy + z^{rk} + g(z,u) and an A1 blow-up with a = 1, b > r.
LinkResult ca_link(const SingularityModel& m, const Contraction& c);

struct DisefInput {
    Rat aEX, aFX;
    std::int64_t r = 1;
    std::optional<Rat> vF_u;       // v_F(u)
    std::optional<Rat> vF_strict;  // v_F of the strict transform of u on Y
};

// nullopt when a(E,X) <= 1 and the lemma says nothing
std::optional<bool> disef_check(const DisefInput& in);

}  // namespace birat3
