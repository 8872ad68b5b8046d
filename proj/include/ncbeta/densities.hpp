#pragma once

#include "ncbeta/moments.hpp"
#include "ncbeta/series_control.hpp"

namespace ncbeta {

// Central Beta(a, b) density at interior x.  Degenerate shapes (a = 0 or
// b = 0) have no density and raise DegenerateParameter; x outside (0, 1)
// raises InvalidParameter.
double beta_pdf(double x, double a, double b);

// Density of the doubly noncentral beta given the latent total count
// m_plus: a binomial mixture of m_plus + 1 central Beta densities.
// Requires lambda1 + lambda2 > 0 so the split probability exists.
double dncb_conditional_density(double x, long m_plus, const DNcBParams& p,
                                const SeriesControl& ctrl = {});

// Unconditional density as the Poisson-weighted double mixture of central
// Beta densities, summed by anti-diagonals.
double dncb_density_mixture(double x, const DNcBParams& p,
                            const SeriesControl& ctrl = {});

// Same density written as the central Beta density times an exponentially
// tilted Humbert Psi2 perturbation factor.
double dncb_density_perturbation(double x, const DNcBParams& p,
                                 const SeriesControl& ctrl = {});

// Density of the singly noncentral beta (noncentrality in the numerator):
// central Beta density times a tilted Kummer factor.
double ncb1_density(double x, double alpha1, double alpha2, double lambda,
                    const SeriesControl& ctrl = {});

}  // namespace ncbeta
