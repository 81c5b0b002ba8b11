#pragma once

#include "scatter/group.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatter {

// Tropical walls live in M_R; cone (non-tropical) walls live in N_R.
enum class Mode { tropical, cone };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

// Origin of a perturbed wall: initial wall index i and subset J of {1..l}.
struct PerturbationTag {
    int wall = 0;
    std::vector<int> subset;
    bool operator==(const PerturbationTag&) const = default;
};

struct Wall {
    LatticeVector m; // primitive; every block of log(theta) sits at a positive multiple of m
    LatticeVector n; // tropical mode: support lies in a translate of n^perp; empty in cone mode
    SupportR2 support;
    GroupElement theta;
    std::optional<PerturbationTag> tag;
    bool initial = false;
};

// Raised when a path, loop or broken line is not generic with respect to the walls.
class GenericityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Diagram {
public:
    Diagram() = default;
    Diagram(Mode mode, ContextPtr ctx, int order);

    Mode mode() const { return mode_; }
    const ContextPtr& ctx() const { return ctx_; }
    int order() const { return order_; }
    const std::vector<Wall>& walls() const { return walls_; }

    // Validates the wall invariants; throws std::invalid_argument on violation.
    void add_wall(Wall w);
    // Walls whose theta is nontrivial at order k, with theta truncated to k.
    std::vector<Wall> active_walls(int k) const;
    Diagram truncated(int k) const;

private:
    Mode mode_ = Mode::tropical;
    ContextPtr ctx_;
    int order_ = 1;
    std::vector<Wall> walls_;
};

// Exponent of theta when a path with the given tangent crosses the wall.
int crossing_sign(const Wall& w, Mode mode, const Point2& tangent);

struct PiecewisePath {
    std::vector<Point2> vertices;
};

// Later crossings compose on the left. Throws GenericityError on non-generic paths.
GroupElement path_ordered_product(const PiecewisePath& path, const Diagram& d, int order);
GroupElement path_ordered_product(const PiecewisePath& path, const std::vector<Wall>& walls, Mode mode,
                                  const ContextPtr& ctx, int order);

// Pairwise intersections of non-collinear supports plus ray base points, sorted.
std::vector<Point2> joints(const std::vector<Wall>& walls);
std::vector<Point2> joints(const Diagram& d, int order);

// Axis-aligned rectangle around a joint that meets only walls through the joint.
PiecewisePath joint_loop(const std::vector<Wall>& walls, const Point2& joint);

enum class Exec { serial, parallel };

struct ConsistencyReport {
    bool consistent = true;
    std::size_t joints_checked = 0;
    std::optional<Point2> joint;
    LieElement discrepancy;
};

ConsistencyReport is_consistent(const Diagram& d, int order, Exec exec = Exec::parallel);

struct EquivalenceReport {
    bool equivalent = true;
    std::size_t probes = 0;
    std::string witness;
};

EquivalenceReport equivalent(const Diagram& a, const Diagram& b, int order);

} // namespace scatter
