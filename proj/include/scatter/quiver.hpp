#pragma once

#include "scatter/theta.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scatter {

struct Arrow {
    int from = 1; // 1-based node labels
    int to = 2;
    int count = 1;
};

// Acyclic quiver whose arrows all go from a lower to a higher node label.
struct QuiverData {
    int r = 0;
    std::vector<std::vector<int>> a; // a[i][j]: arrows i -> j (0-based)

    static QuiverData from_arrows(int r, const std::vector<Arrow>& arrows);
    // "1:2=1,2:3=2"; nodes are 1..max label unless r is given.
    static QuiverData parse(const std::string& text, int r = 0);
    std::vector<Arrow> arrows() const;
};

// omega(f_i, f_j) = a_ji - a_ij.
SkewForm euler_form(const QuiverData& q);
ContextPtr quiver_context(const QuiverData& q);

// sum_{j>=1} (s zhat^m)^j / (j (v^j - v^-j)) below the order, s = +1 or -1.
LieElement quantum_dilog(const ContextPtr& ctx, int order, const LatticeVector& m, int sign = 1);

// Walls f_i^perp in N_R carrying the quantum dilogarithm of zhat^{f_i}.
Diagram initial_diagram(const QuiverData& q, int order);

// lambda(t) = (-1, ..., -1) + t (a_1, ..., a_r), 1 < a_1 < ... < a_r.
struct LambdaLine {
    std::vector<Rational> slopes;
    Point2 at(const Rational& t) const;
    PiecewisePath path() const;
};

// Exact check that the segment lambda([0,1]) misses every joint and every non-initial wall.
bool lambda_generic(const Diagram& completed, const LambdaLine& lambda, int order);
// Deterministic slope draws until lambda_generic holds.
LambdaLine draw_lambda(const Diagram& completed, int order, std::uint64_t seed);

struct FactorizationReport {
    bool holds = false;
    LambdaLine lambda;
    GroupElement along_lambda;
    GroupElement initial_product;
};

FactorizationReport lambda_factorization_check(const Diagram& completed, const LambdaLine& lambda, int order);

struct QuiverThetaValue {
    AlgebraElement value;
    std::size_t broken_lines = 0;
};

// Theta of z^n at Q from broken lines, cross-checked against transport; throws on disagreement.
QuiverThetaValue quiver_theta(const Diagram& completed, const LatticeVector& n, const Point2& q, int order);

} // namespace scatter
