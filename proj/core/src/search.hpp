/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include "bext/boundary_extension.hpp"

#include <string>
#include <vector>

namespace bext::detail {

/// Bounded search for configurations built from rectangles of ran(phi) ∪ bd.
/// Candidates are returned unchecked; Algorithm 1 verifies each one.
std::vector<Configuration> exhaustive_candidates(const AlgorithmInputs& in, const Constants& k,
                                                 const SearchBudget& budget, const AlgorithmOptions& opt,
                                                 std::vector<std::string>& notes);

}  // namespace bext::detail
