#pragma once

#include "scatter/diagram.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scatter {

enum class TreeKind { labeled, weighted };

std::string to_string(TreeKind k);
TreeKind parse_tree_kind(const std::string& s);

// Image of the moduli of tropical disks of a tree in the ambient plane.
struct TreeSupport {
    enum class Kind { empty, point, ray, line, region };
    Kind kind = Kind::empty;
    Point2 base;
    LatticeVector direction;

    SupportR2 as_support() const;
    bool contains_in_relative_interior(const Point2& x) const;
};

std::string to_string(TreeSupport::Kind k);

// Rooted binary tree with leaves on initial walls. Children are stored in canonical order,
// which also fixes the ribbon structure and hence the sign of (n, g).
struct TreeInfo {
    int left = -1;  // index into the family, -1 for leaves
    int right = -1;
    int wall = -1;  // leaves: wall index in the source diagram
    int k = 0;      // leaves: m_e = k m_wall
    LatticeVector m;
    std::int64_t degree = 0;
    int leaves = 1;
    std::uint64_t mask = 0; // leaf walls used (weighted trees)
    long aut = 1;
    std::string canon;
    LatticeVector n; // tropical mode: recursion value, possibly non-primitive or zero
    LieElement g;
    TreeSupport support;

    bool is_leaf() const { return left < 0; }
};

struct TreeFamily {
    TreeKind kind = TreeKind::labeled;
    Mode mode = Mode::tropical;
    std::vector<TreeInfo> trees; // sorted by degree; children precede parents
};

// All trees of degree < order over the walls of the diagram, up to isomorphism.
// Weighted trees use each wall at most once.
TreeFamily enumerate_trees(const Diagram& in, TreeKind kind, int order);

// Cone-mode flow direction: -k f_i^dual when m = k f_i, else -p(m).
LatticeVector canonical_direction(const LatticeVector& m, const SkewForm& omega);

struct GenericReport {
    bool generic = true;
    std::string witness;
};

// Every join of two child supports is empty or a single point interior to both.
// Uses weighted trees when the walls carry perturbation tags, labeled trees otherwise.
GenericReport check_generic(const Diagram& d, int order);

// Initial walls plus one wall per weighted tree with nonzero multiplicity and ray support.
Diagram tree_sum_diagram(const Diagram& perturbed, int order);

// (a_J, eps_J) of a marked tree: the mark z^{mark} followed by the attached trees along the core.
struct MarkedCore {
    AlgebraElement a;
    int eps = 1;
};

MarkedCore marked_core(const LatticeVector& mark, const std::vector<const TreeInfo*>& attached,
                       const ContextPtr& ctx, int order);

} // namespace scatter
