#pragma once

#include <vector>

#include "wres/clifford.hpp"
#include "wres/scalar.hpp"

namespace wres {

/// Exact normalized sphere average of a monomial, i.e.
/// (1 / Vol(S^{n-1})) * integral over |xi| = 1 of xi^alpha.
///
/// alpha has one exponent per coordinate; its size must equal n.
/// Zero when any exponent is odd. Thread-safe and memoized.
Rational sphere_average(Dimension dim, const std::vector<int>& alpha);

/// Same value from the closed product formula, used as a cross-check.
Rational sphere_average_closed_form(Dimension dim, const std::vector<int>& alpha);

}  // namespace wres
