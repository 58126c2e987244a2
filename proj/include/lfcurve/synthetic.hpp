#ifndef LFCURVE_SYNTHETIC_HPP
#define LFCURVE_SYNTHETIC_HPP

// Seeded data generators for fixtures, property tests and the acceptance suite,
// plus the published Canadian coefficient sets used as generating models.

#include <cstdint>
#include <random>

#include "lfcurve/linmodel.hpp"
#include "lfcurve/series.hpp"

namespace lfcurve::synthetic {

/// Stationary AR(1) law for the annualized labour-force growth rate.
struct DriverSpec {
  double mean = 0.02;
  double persistence = 0.5;
  double innovation_sd = 0.0085;
};

/// Labour-force levels of length `length` whose log growth rate (annualized for
/// quarterly data) follows `spec`. The first level is `initial_level`.
Series labour_force_levels(Period start, Eigen::Index length, std::uint64_t seed, const DriverSpec& spec = {},
                           double initial_level = 1.0e7);

/// s + iid N(0, sigma^2), drawn from `rng`.
Series add_noise(const Series& s, double sigma, std::mt19937_64& rng);

/// Driftless Gaussian random walk with unit innovations, starting at 0.
Series random_walk(Period start, Eigen::Index length, std::mt19937_64& rng, double sd = 1.0);

/// Zero-mean Gaussian AR(1) started from its stationary distribution.
Series ar1(Period start, Eigen::Index length, double phi, std::mt19937_64& rng, double sd = 1.0);

/// Published coefficient sets for Canada, used as generators.
namespace reference {

/// Unemployment, lag 0, break 1990: (-2.574, 0.155) then (-2.852, 0.122).
PiecewiseLinearModel unemployment();
/// GDP deflator, lag 1, break 1990: (2.453, 0.0052) then (0.842, -0.0085).
PiecewiseLinearModel dgdp();
/// CPI inflation, lag 3, break 1991: (2.682, -0.0035) then (0.625, 0.0104).
PiecewiseLinearModel cpi();
/// Quarterly GDP deflator (annualized Q/Q), lag 8, break 1989Q1: (2.0, -0.0020) then (3.0, -0.0045).
PiecewiseLinearModel dgdp_quarterly();
/// pi_t = 3.70 l_{t-1} + 0.55 u_{t-1} - 0.076.
GeneralizedModel generalized_dgdp();
/// pi_t = 3.40 l_{t-3} + 0.55 u_{t-3} - 0.073.
GeneralizedModel generalized_cpi();

}  // namespace reference

}  // namespace lfcurve::synthetic

#endif  // LFCURVE_SYNTHETIC_HPP
