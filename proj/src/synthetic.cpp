#include "lfcurve/synthetic.hpp"

#include <cmath>

namespace lfcurve::synthetic {

Series labour_force_levels(Period start, Eigen::Index length, std::uint64_t seed, const DriverSpec& spec,
                           double initial_level) {
  if (length < 1) throw InvalidArgument("labour force length must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> innovation(0.0, spec.innovation_sd);
  const double per_period = 1.0 / periods_per_year(start.frequency());
  const double stationary_sd = spec.innovation_sd / std::sqrt(1.0 - spec.persistence * spec.persistence);
  std::normal_distribution<double> initial(0.0, stationary_sd);

  Series::Vector levels(length);
  levels[0] = initial_level;
  double deviation = initial(rng);
  for (Eigen::Index t = 1; t < length; ++t) {
    deviation = spec.persistence * deviation + innovation(rng);
    levels[t] = levels[t - 1] * std::exp((spec.mean + deviation) * per_period);
  }
  return Series(start, std::move(levels));
}

Series add_noise(const Series& s, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, sigma);
  Series::Vector v = s.values();
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] += noise(rng);
  return Series(s.start(), std::move(v));
}

Series random_walk(Period start, Eigen::Index length, std::mt19937_64& rng, double sd) {
  std::normal_distribution<double> step(0.0, sd);
  Series::Vector v(length);
  double level = 0.0;
  for (Eigen::Index t = 0; t < length; ++t) {
    level += step(rng);
    v[t] = level;
  }
  return Series(start, std::move(v));
}

Series ar1(Period start, Eigen::Index length, double phi, std::mt19937_64& rng, double sd) {
  std::normal_distribution<double> step(0.0, sd);
  Series::Vector v(length);
  double x = step(rng) / std::sqrt(1.0 - phi * phi);
  for (Eigen::Index t = 0; t < length; ++t) {
    v[t] = x;
    x = phi * x + step(rng);
  }
  return Series(start, std::move(v));
}

namespace reference {

PiecewiseLinearModel unemployment() {
  return PiecewiseLinearModel(ResponseKind::unemployment, 0,
                              {{std::nullopt, -2.574, 0.155}, {Period::annual(1990), -2.852, 0.122}});
}

PiecewiseLinearModel dgdp() {
  return PiecewiseLinearModel(ResponseKind::inflation, 1,
                              {{std::nullopt, 2.453, 0.0052}, {Period::annual(1990), 0.842, -0.0085}});
}

PiecewiseLinearModel cpi() {
  return PiecewiseLinearModel(ResponseKind::inflation, 3,
                              {{std::nullopt, 2.682, -0.0035}, {Period::annual(1991), 0.625, 0.0104}});
}

PiecewiseLinearModel dgdp_quarterly() {
  return PiecewiseLinearModel(ResponseKind::inflation, 8,
                              {{std::nullopt, 2.0, -0.0020}, {Period::quarterly(1989, 1), 3.0, -0.0045}});
}

GeneralizedModel generalized_dgdp() { return GeneralizedModel(3.70, 0.55, -0.076, 1, 1); }

GeneralizedModel generalized_cpi() { return GeneralizedModel(3.40, 0.55, -0.073, 3, 3); }

}  // namespace reference

}  // namespace lfcurve::synthetic
