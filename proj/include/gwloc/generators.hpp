#pragma once

#include "gwloc/action_spec.hpp"

namespace gwloc {

/// P^N with the diagonal C*-action of pairwise-distinct integer weights.
/// Isolated fixed points at each coordinate vertex; registers insertions
/// "H^k" for k = 1..N plus the aliases "H" and "pt" (= H^N).
ActionSpec projective_space_spec(int N, const std::vector<long>& weights);

/// Y with the trivial action: a single fixed component carrying Y's ring.
/// `curve_classes` lists the H2 lattice generators of Y (admissible vertex
/// classes). Insertions: "Y:<monomial>" for every positive-degree basis
/// monomial of the ring.
ActionSpec trivial_spec(RingPtr ring, int h2_rank, std::vector<Rational> c1_pairing,
                        std::vector<std::vector<Rational>> curve_classes,
                        const std::string& id = "Y");

/// X x Y with the action on the first factor only. B must be a trivial-action
/// spec with a single component. Components are A-components x Y with tensor
/// rings, normal pieces pulled back from A, moment data from A (padded by B's
/// constant moment coordinates). Insertions: A's names (pulled back), B's
/// "Y:*" names, and the products "<a>*<b>".
ActionSpec product_spec(const ActionSpec& a, const ActionSpec& b);

}  // namespace gwloc
