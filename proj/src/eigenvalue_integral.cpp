#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hpchain/identities.hpp"
#include "hpchain/specfun.hpp"

namespace hpchain::identities {

EigenvalueIntegral eigenvalue_integral(int n, std::span<const double> couplings, int nodes_per_angle,
                                       Exec exec) {
  if (n < 1 || n > 4) throw std::invalid_argument("eigenvalue_integral: need 1 <= N <= 4");
  if (couplings.empty()) throw std::invalid_argument("eigenvalue_integral: need K >= 1");
  int m = nodes_per_angle;
  if (m == 0) {
    double bandwidth = 0.0;
    for (std::size_t k = 0; k < couplings.size(); ++k) {
      const double c = std::fabs(couplings[k]) / static_cast<double>(k + 1);
      bandwidth += static_cast<double>(k + 1) * (c + 10.0 * std::sqrt(c) + 20.0);
    }
    m = std::max(32, 2 * (n + static_cast<int>(std::ceil(bandwidth))));
  }
  if (m < 2 * n) throw std::invalid_argument("eigenvalue_integral: too few nodes per angle");

  std::vector<double> cosine(static_cast<std::size_t>(m));
  std::vector<double> sine(static_cast<std::size_t>(m));
  std::vector<double> weight(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double t = 2.0 * std::numbers::pi * i / m;
    cosine[static_cast<std::size_t>(i)] = std::cos(t);
    sine[static_cast<std::size_t>(i)] = std::sin(t);
    double e = 0.0;
    for (std::size_t k = 0; k < couplings.size(); ++k)
      e += couplings[k] / static_cast<double>(k + 1) * (std::cos(static_cast<double>(k + 1) * t) - 1.0);
    weight[static_cast<std::size_t>(i)] = std::exp(e);
  }

  // Partial sums per leading angle, reduced in index order afterwards.
  std::vector<double> z_part(static_cast<std::size_t>(m), 0.0);
  std::vector<double> trace_part(static_cast<std::size_t>(m), 0.0);
  for_each_index(exec, static_cast<std::size_t>(m), [&](std::size_t first) {
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    idx[0] = static_cast<int>(first);
    double z = 0.0;
    double tr = 0.0;
    while (true) {
      double vandermonde = 1.0;
      double w = 1.0;
      double trace = 0.0;
      for (int a = 0; a < n; ++a) {
        const auto ia = static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
        w *= weight[ia];
        trace += cosine[ia];
        for (int b = a + 1; b < n; ++b) {
          const auto ib = static_cast<std::size_t>(idx[static_cast<std::size_t>(b)]);
          const double dx = cosine[ia] - cosine[ib];
          const double dy = sine[ia] - sine[ib];
          vandermonde *= dx * dx + dy * dy;
        }
      }
      z += vandermonde * w;
      tr += vandermonde * w * trace;
      int pos = n - 1;
      while (pos >= 1 && ++idx[static_cast<std::size_t>(pos)] == m) idx[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 1) break;
    }
    z_part[first] = z;
    trace_part[first] = tr;
  });

  double z = 0.0;
  double tr = 0.0;
  for (int i = 0; i < m; ++i) {
    z += z_part[static_cast<std::size_t>(i)];
    tr += trace_part[static_cast<std::size_t>(i)];
  }
  const double log_norm = std::lgamma(n + 1.0) + n * std::log(static_cast<double>(m));
  const double scale = n * specfun::coupling_log_scale(couplings);
  return {LogValue::from_log(std::log(z) - log_norm + scale), tr / z};
}

}  // namespace hpchain::identities
