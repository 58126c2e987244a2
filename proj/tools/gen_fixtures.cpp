// Regenerates the bundled synthetic fixtures in data/synthetic. Every file has a
// fixed seed, so the output is reproducible for a given standard library.
//
//   gen_fixtures <out_dir>

#include <filesystem>
#include <iostream>
#include <random>

#include "lfcurve/csv.hpp"
#include "lfcurve/synthetic.hpp"

namespace {

using namespace lfcurve;
namespace ref = lfcurve::synthetic::reference;

constexpr std::uint64_t kLabourForceSeed = 1001;
constexpr std::uint64_t kUnemploymentSeed = 1002;
constexpr std::uint64_t kDgdpSeed = 1003;
constexpr std::uint64_t kCpiSeed = 1004;
constexpr std::uint64_t kQuarterlyLabourForceSeed = 1005;
constexpr std::uint64_t kQuarterlyDgdpSeed = 1006;

Series noisy(const Series& s, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return synthetic::add_noise(s, sigma, rng);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures <out_dir>\n";
    return 2;
  }
  const std::filesystem::path out = argv[1];
  std::filesystem::create_directories(out);

  // Annual: labour force 1955..2010, responses 1962..2010.
  const Series lf = synthetic::labour_force_levels(Period::annual(1955), 56, kLabourForceSeed);
  const GrowthRateSeries l = log_growth_rate(lf);
  const Period from = Period::annual(1962);
  const Period to = Period::annual(2010);
  const Series u = noisy(predict_univariate(ref::unemployment(), l, from, to), 0.003, kUnemploymentSeed);
  const Series dgdp = noisy(predict_univariate(ref::dgdp(), l, from, to), 0.005, kDgdpSeed);
  const Series cpi = noisy(predict_generalized(ref::generalized_cpi(), l, u, Period::annual(1965), to), 0.005, kCpiSeed);

  // Quarterly: labour force 1970Q1..2010Q4, deflator 1975Q1..2010Q4.
  const Series lf_q = synthetic::labour_force_levels(Period::quarterly(1970, 1), 164, kQuarterlyLabourForceSeed);
  const Series dgdp_q = noisy(predict_univariate(ref::dgdp_quarterly(), log_growth_rate(lf_q), Period::quarterly(1975, 1),
                                                 Period::quarterly(2010, 4)),
                              0.008, kQuarterlyDgdpSeed);

  write_csv(lf, out / "lf_annual.csv");
  write_csv(u, out / "unemployment_annual.csv");
  write_csv(dgdp, out / "dgdp_annual.csv");
  write_csv(cpi, out / "cpi_annual.csv");
  write_csv(lf_q, out / "lf_quarterly.csv");
  write_csv(dgdp_q, out / "dgdp_quarterly.csv");
  std::cout << "wrote 6 fixtures to " << out.string() << '\n';
  return 0;
}
