#ifndef FEDLAB_INTEGRALS_HPP
#define FEDLAB_INTEGRALS_HPP

#include <fedlab/chart_function.hpp>

namespace fedlab
{

/// (1/pi) * integral over C of z^p zbar^q (1+|z|^2)^(-s) dA
///   = delta_{pq} p! (s-p-2)! / (s-1)!.
/// Throws std::domain_error when the integral diverges (s < p+2 for p == q).
mpq_class moment_integral(unsigned p, unsigned q, int s);

/// (1/pi) * integral of f (1+|z|^2)^(-s) dA for a one-variable chart function.
PiScalar chart_integral(const ChartFunction &f, int s);

} // namespace fedlab

#endif
