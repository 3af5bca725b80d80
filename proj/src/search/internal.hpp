#pragma once

#include <vector>

#include "search/search.hpp"

namespace majcirc::search::detail {

struct Constraint {
  Assignment a;
  bool expected;
};

/// Minterms then maxterms (lexicographic within each layer), or all 2^n
/// inputs in ascending order.
std::vector<Constraint> constraint_assignments(const SearchSpaceSpec& spec);

/// verify_all for small n, exact minterm/maxterm check otherwise.
std::uint64_t count_errors(const LayeredCircuit& c);

}  // namespace majcirc::search::detail
