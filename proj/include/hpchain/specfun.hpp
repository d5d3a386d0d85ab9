#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hpchain::specfun {

// e^{-x} I_nu(x) for integer nu and 0 <= x <= 1e6.
double bessel_i_scaled(long nu, double x);

// e^{-x} I_nu(x) for nu = 0..nu_max from one downward recurrence.
std::vector<double> bessel_i_scaled_sequence(int nu_max, double x);

// Sum_n J_n / n, the log of the symbol exp{Sum_n (J_n/n) cos(n theta)} at theta = 0.
double coupling_log_scale(std::span<const double> couplings);

// Number of trapezoid nodes used for orders up to nu_max.
int generalized_bessel_nodes(int nu_max, std::span<const double> couplings);

// Fourier coefficient nu of exp{Sum_n (J_n/n) cos(n theta)}, divided by
// exp{coupling_log_scale(J)}. couplings[n-1] holds J_n.
double generalized_bessel_scaled(int nu, std::span<const double> couplings);
std::vector<double> generalized_bessel_scaled_sequence(int nu_max,
                                                       std::span<const double> couplings);

// e^{-Re z} I_nu(z) for nu = 0..nu_max and complex z.
std::vector<std::complex<double>> bessel_i_complex_scaled_sequence(int nu_max,
                                                                   std::complex<double> z);

}  // namespace hpchain::specfun
