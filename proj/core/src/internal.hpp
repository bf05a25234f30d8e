#pragma once

#include <vector>

#include "sepfact/states.hpp"

namespace sepfact::detail {

// Entrywise (re, im) lexicographic comparison; negative / zero / positive.
int lex_compare(const ComplexVector& a, const ComplexVector& b);

// Deterministic component order: descending weight, ties broken
// lexicographically on the (re, im) entry sequence of e then f.
bool component_less(const WeightedProduct& a, const WeightedProduct& b);

// Partition of component indices into left-ray equivalence classes at
// resolution eps; members of each class follow component_less.
std::vector<std::vector<int>> ray_classes(const Ensemble& ens, double eps);

ComplexMatrix stacked_f(const Ensemble& ens);  // n x k, columns f_i
double f_min_singular_value(const Ensemble& ens);

}  // namespace sepfact::detail
