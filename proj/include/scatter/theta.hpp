#pragma once

#include "scatter/diagram.hpp"
#include "scatter/trees.hpp"

#include <vector>

namespace scatter {

// Algebra keys: m for classical tropical diagrams, (m, n) for quantum cone diagrams.
// The initial key is the exponent of the incoming monomial: m for tropical mode, (0, n) for cone mode.
LatticeVector initial_key(const Diagram& d, const LatticeVector& v);
// Forward velocity of a segment carrying the key: -m (tropical) or -p(m) - n (cone).
LatticeVector velocity(const Diagram& d, const LatticeVector& key);

struct Bend {
    Point2 point;
    std::vector<std::size_t> walls; // indices into the diagram's active walls
    LatticeVector key_before;
    LatticeVector key_after;
    Coefficient coeff_after;
};

struct BrokenLine {
    LatticeVector initial_key;
    Point2 end;
    std::vector<Bend> bends; // forward order
    LatticeVector final_key;
    Coefficient coeff;

    AlgebraElement monomial(const ContextPtr& ctx, int order) const;
};

std::vector<BrokenLine> enumerate_broken_lines(const Diagram& d, const LatticeVector& key0, const Point2& q,
                                               int order, Exec exec = Exec::parallel);

// Sum of final monomials of all broken lines; 1 for the zero key.
AlgebraElement theta(const Diagram& d, const LatticeVector& key0, const Point2& q, int order,
                     Exec exec = Exec::parallel);

// Transport of the pure monomial from a base chamber where the theta function is z^{key0}.
AlgebraElement theta_by_transport(const Diagram& d, const LatticeVector& key0, const Point2& q, int order);
Point2 base_chamber_point(const Diagram& d, const LatticeVector& key0, int order);

struct WallCrossingReport {
    bool holds = true;
    AlgebraElement lhs; // theta at the end of the path
    AlgebraElement rhs; // path-ordered product applied to theta at the start
    AlgebraElement discrepancy;
};

WallCrossingReport check_wall_crossing(const Diagram& d, const LatticeVector& key0, const PiecewisePath& rho,
                                       int order);

// Orbit sum over marked trees whose attached trees realise the bends of the broken line,
// compared with its final monomial. Trees come from the weighted family of the perturbed diagram.
struct OrbitSumReport {
    bool holds = true;
    std::size_t marked_trees = 0;
    AlgebraElement tree_sum;
    AlgebraElement line_monomial;
};

OrbitSumReport orbit_sum_check(const TreeFamily& family, const ContextPtr& ctx, const BrokenLine& line,
                               int order);

} // namespace scatter
