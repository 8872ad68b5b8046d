#pragma once

namespace ncbeta {

// Truncation policy shared by every infinite series in the library.
//
// A series stops once two consecutive terms satisfy
//   |term| <= max(rel_tol * |partial sum|, abs_floor)
// and raises NonConvergence if max_terms terms (or term groups, for double
// series) are consumed first.  Requiring two consecutive small terms guards
// against stopping inside a transient dip of an oscillating term sequence.
struct SeriesControl {
  double rel_tol = 1e-14;
  double abs_floor = 1e-300;
  long max_terms = 10000;
};

}  // namespace ncbeta
