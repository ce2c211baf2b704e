#pragma once

#include "avc/logic/formula.hpp"

namespace avc::logic {

// Canonical form: bound variables renamed `_v<depth>`, double negations
// removed, forall pushed through conjunctions and exists through
// disjunctions, And/Or flattened and their items ordered by structural
// hash, enumerations sorted. Idempotent.
Formula normalize(const Formula& phi);

}  // namespace avc::logic
