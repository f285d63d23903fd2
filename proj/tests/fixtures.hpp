#pragma once
// Random inputs shared by the module tests and the acceptance binary.

#include <optional>
#include <random>

#include "cix/corners.hpp"
#include "cix/deligne.hpp"

namespace fixture {

// A product of small builders (at most 40 atoms) with random face merges and
// orientation flips. Not necessarily admissible.
cix::Cornered random_poset(std::mt19937_64& rng);
// Draws until check_admissibility passes.
cix::Cornered random_admissible(std::mt19937_64& rng);

cix::Rat rrat(std::mt19937_64& rng, int range = 6, int den = 6);
cix::Cochain random_cochain(std::mt19937_64& rng, const cix::SimplicialComplex& K, int q);
cix::DeligneCochain random_deligne(std::mt19937_64& rng, const cix::DeligneModel& M, int n);
// closed: lift of a random integral cocycle + a(random form) + d(random primitive)
cix::DeligneCochain random_closed(std::mt19937_64& rng, const cix::DeligneModel& M, bool flat = false);

}  // namespace fixture
