#pragma once

#include "scatter/diagram.hpp"

#include <cstdint>
#include <vector>

namespace scatter {

// Thrown when a loop discrepancy is not concentrated in the expected degree,
// or a block violates the tropical constraint.
class CompletionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Order-by-order consistent completion of a rank-2 diagram: adds outgoing rays only.
Diagram complete(const Diagram& in, int order, Exec exec = Exec::parallel);

// Loop product around a joint computed from the cyclic order of incident walls.
GroupElement joint_product(const std::vector<Wall>& walls, Mode mode, const ContextPtr& ctx, int order,
                           const Point2& joint);

// Perturbation of full-line initial walls through the origin over the nilpotent ring with l copies.
// Offsets come from the seed and are redrawn until check_generic passes at the given order.
struct PerturbResult {
    Diagram diagram;
    std::vector<Rational> offsets; // per perturbed wall, in the order of diagram walls
    int attempts = 0;
};

PerturbResult perturb(const Diagram& in, int l, std::uint64_t seed, int order);
// Same construction with caller-supplied offsets (one per output wall); no genericity retries.
Diagram perturb_with_offsets(const Diagram& in, int l, const std::vector<Rational>& offsets);

} // namespace scatter
