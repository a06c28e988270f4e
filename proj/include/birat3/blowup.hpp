#pragma once

#include "birat3/models.hpp"
#include "birat3/poly.hpp"
#include "birat3/qlattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace birat3 {

struct Chart {
    std::size_t index = 1;  // 1-based, the exceptional coordinate
    std::string label;      // U_x, U_y, ...
    QuotientAction quotient;
    ChartQuotientData lattice;
    std::vector<std::string> vars;
    std::vector<Poly> equations;
    MonomialMap coord_map;  // source coordinates in terms of chart coordinates
};

struct Contraction {
    SingularityModel source;
    WeightVector weight;
    std::vector<Chart> charts;
    Rat discrepancy;
    std::int64_t m = 1;
    std::string exceptional_description;
    bool nonpositive = false;  // flagged, not fatal
};

// (sum b_i)/r - sum_k w(f_k) - 1
Rat discrepancy_formula(const WeightVector& w, const std::vector<Poly>& equations);

Contraction weighted_blowup(const SingularityModel& m, const WeightVector& w);
inline Rat discrepancy(const Contraction& c) { return c.discrepancy; }
bool is_w_morphism(const Contraction& c);

// ---------------------------------------------------------------------------
// Local analysis of chart points

enum class PointStatus { Absent, Smooth, Quotient, CA, Unclassified };
std::string to_string(PointStatus s);

struct LocalPoint {
    PointStatus status = PointStatus::Absent;
    SingularityModel model;  // canonical normal form when Quotient or CA
    std::string detail;
    // chart coordinate k expressed in the coordinates of `model`, when known
    std::vector<std::optional<Poly>> chart_coords;
};

// Classify the germ at the origin of (eqs = 0) in A^n / g.
LocalPoint classify_local(const QuotientAction& g, const std::vector<std::string>& vars, const std::vector<Poly>& eqs);

// Canonical forms used as memo keys.
SingularityModel canonical_quotient(const QuotientAction& g);
std::optional<LocalPoint> recognize_ca(const QuotientAction& g, const Poly& f);

struct ChartPoint {
    std::size_t chart = 1;
    std::string chart_label;
    std::string locus;  // "origin" or "u=1/2 on the u-line"
    LocalPoint point;
    std::optional<std::size_t> line_var;  // set for points off the origin: chart coordinate line_var = line_value
    Rat line_value = 0;
};

// Singular points on the exceptional divisor, inspected at chart origins and on
// the coordinate lines of E. Each point is reported once.
std::vector<ChartPoint> chart_singularities(const Contraction& c);

bool point_sets_complete(const std::vector<ChartPoint>& pts);

// ---------------------------------------------------------------------------

struct WMorphismList {
    std::vector<Contraction> contractions;
    bool complete = true;
    std::string note;
};

WMorphismList enumerate_w_morphisms(const SingularityModel& m);

// k for xy + f(z,u) in 1/r(b,-b,1,0): the weight of f for wt(z,u) = (1/r, 1)
std::int64_t ca_weight_k(const SingularityModel& m);

}  // namespace birat3
