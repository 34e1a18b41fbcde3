#pragma once

namespace netstrata::specfun {

// log of the upper incomplete gamma function Gamma(s, z), z > 0, any real s.
// Negative s is reached by walking the recurrence
//   Gamma(s, z) = (Gamma(s+1, z) - z^s e^-z) / s
// down from a positive first argument; large z uses the continued fraction.
double log_upper_gamma(double s, double z);

// Upper incomplete gamma on a linear scale; may overflow for extreme
// (s, z) combinations where the log form stays finite.
double upper_gamma(double s, double z);

// Exponential integral E1(z) = Gamma(0, z), z > 0.
double expint_e1(double z);

// Standard normal CDF and log of its upper tail log(1 - Phi(z)); the latter
// stays finite far into the tail where erfc underflows.
double norm_cdf(double z);
double log_norm_tail(double z);

// Inverse standard normal CDF, full double precision (rational approximation
// plus one Halley refinement).
double norm_quantile(double p);

// Hurwitz zeta sum_{k>=0} (q+k)^-s for s > 1, q > 0 (Euler-Maclaurin).
double hurwitz_zeta(double s, double q);

}  // namespace netstrata::specfun
