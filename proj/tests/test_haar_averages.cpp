#include <doctest.h>

#include <algorithm>

#include "discord/dephasing.hpp"
#include "discord/haar_averages.hpp"
#include "oracles.hpp"

using namespace discord;

TEST_CASE("mean coefficient") {
  CHECK(haar_mean_coefficient({2, 2}) == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
  CHECK(haar_mean_coefficient({2, 8}) == doctest::Approx(24.0 / 255.0).epsilon(1e-15));
  // dB = 1: the partial trace is the identity and the mean is ||Delta||^2 itself.
  CHECK(haar_mean_coefficient({3, 1}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(haar_mean_coefficient({1, 4}), InvalidArgument);
}

TEST_CASE("variance coefficients at dA = dB = 2") {
  const VarianceCoefficients c = haar_variance_coefficients({2, 2});
  CHECK(c.c1 == doctest::Approx(69.0 / 350.0).epsilon(1e-14));
  CHECK(c.c2 == doctest::Approx(-2.0 / 7.0).epsilon(1e-14));
  const VarianceCoefficients single = haar_variance_coefficients({2, 1});
  CHECK(single.c1 == 0.0);
  CHECK(single.c2 == 0.0);
}

TEST_CASE("Schmidt family: mu = 2/5 D and s2 = 38/175 z^2 (1-z)^2") {
  for (double z : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    const HaarStats s = haar_stats(schmidt_pair_state(z), schmidt_pair_reference(z));
    const double q = z * (1.0 - z);
    CHECK(std::abs(s.mu - 0.4 * 2.0 * q) < 1e-12);
    CHECK(std::abs(s.s2 - 38.0 / 175.0 * q * q) < 1e-12);
    if (q > 0.0) CHECK(std::abs(s.s() / s.mu - std::sqrt(19.0 / 56.0)) < 1e-10);
  }
  const HaarStats half = haar_stats(schmidt_pair_state(0.5), schmidt_pair_reference(0.5));
  CHECK(half.mu == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("identical pair gives zero moments") {
  std::mt19937_64 rng(21);
  const DensityMatrix rho(oracle::random_density(6, rng), {2, 3});
  CHECK(haar_mean(rho, rho) == 0.0);
  CHECK(haar_variance(rho, rho) == 0.0);
  const MonteCarloStats mc = monte_carlo_stats(rho, rho, 50, RngSeed{1});
  CHECK(mc.mean == 0.0);
  CHECK(mc.variance == 0.0);
  CHECK_THROWS_AS(haar_mean(rho, DensityMatrix::maximally_mixed({3, 2})), DimensionMismatch);
}

TEST_CASE("relative fluctuation") {
  CHECK(relative_fluctuation({2, 2}) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  CHECK(relative_fluctuation({10, 2}) == doctest::Approx(std::sqrt(2.0 / 99.0)).epsilon(1e-15));
  // The exact ratio approaches the asymptote as dB grows.
  std::mt19937_64 rng(22);
  const BipartiteDims big{2, 32};
  const DensityMatrix rho(oracle::random_density(big.total(), rng), big);
  const HaarStats s = haar_stats(rho, local_dephase(rho));
  const double exact = s.s() / s.mu;
  CHECK(exact > 0.0);
  CHECK(exact < 1.0);
}

TEST_CASE("dA = 2 specialization matches the general formulas") {
  std::mt19937_64 rng(23);
  for (int dB = 1; dB <= 16; ++dB) {
    const BipartiteDims dims{2, dB};
    for (int rep = 0; rep < 5; ++rep) {
      const DensityMatrix rho(oracle::random_density(dims.total(), rng), dims);
      const DensityMatrix other(oracle::random_density(dims.total(), rng), dims);
      const CMatrix delta = rho.matrix() - (rep % 2 == 0 ? local_dephase(rho) : other).matrix();
      const GibbsSpecialization special = gibbs_specialization(dB, delta);
      const HaarStats general = haar_stats(delta, dims);
      CHECK(std::abs(special.mu - general.mu) < 1e-12);
      if (dB > 1) CHECK(std::abs(special.s2 - general.s2) < 1e-12);
      else CHECK(std::abs(special.s2) < 1e-12);  // traceless 2x2 Delta has zero variance
    }
  }
  CHECK(gibbs_specialization(2, CMatrix::Zero(4, 4)).mu == 0.0);
  CHECK(gibbs_specialization(2, CMatrix::Zero(4, 4)).s2 == 0.0);
  CHECK_THROWS_AS(gibbs_specialization(2, CMatrix::Zero(6, 6)), DimensionMismatch);
}

TEST_CASE("homogeneity and positivity") {
  std::mt19937_64 rng(24);
  for (BipartiteDims dims : {BipartiteDims{2, 2}, BipartiteDims{2, 4}, BipartiteDims{2, 8},
                             BipartiteDims{3, 3}}) {
    int negative = 0;
    for (int rep = 0; rep < 250; ++rep) {
      const DensityMatrix rho(oracle::random_density(dims.total(), rng), dims);
      const DensityMatrix sigma(oracle::random_density(dims.total(), rng), dims);
      const HaarStats s = haar_stats(rho, sigma);
      if (s.s2 < 0.0 || s.mu < 0.0) ++negative;
      if (rep < 10) {
        const CMatrix delta = rho.matrix() - sigma.matrix();
        const HaarStats scaled = haar_stats(2.5 * delta, dims);
        CHECK(scaled.mu == doctest::Approx(2.5 * 2.5 * s.mu).epsilon(1e-12));
        CHECK(scaled.s2 == doctest::Approx(std::pow(2.5, 4) * s.s2).epsilon(1e-10));
      }
    }
    CHECK(negative == 0);
  }
}

TEST_CASE("Monte Carlo agrees with the closed forms") {
  const DensityMatrix rho = schmidt_pair_state(0.5);
  const DensityMatrix ref = schmidt_pair_reference(0.5);
  const MonteCarloStats mc = monte_carlo_stats(rho, ref, 2000, RngSeed{31});
  CHECK(mc.nSamples == 2000);
  CHECK(std::abs(mc.mean - 0.2) < 3.0 * mc.stdError);
  CHECK(std::abs(mc.variance - 38.0 / 175.0 / 16.0) < 0.2 * 38.0 / 175.0 / 16.0);

  // A mixed pair at 2 x 3 against the brute-force witness.
  std::mt19937_64 rng(25);
  const BipartiteDims dims{2, 3};
  const DensityMatrix r(oracle::random_density(6, rng), dims);
  const DensityMatrix rp = local_dephase(r);
  const HaarStats analytic = haar_stats(r, rp);
  const MonteCarloStats m = monte_carlo_stats(r, rp, 4000, RngSeed{32});
  CHECK(std::abs(m.mean - analytic.mu) < 3.5 * m.stdError);

  // Each sample equals the oracle evaluated on the same unitary.
  const CMatrix delta = r.matrix() - rp.matrix();
  const auto samples = haar_witness_samples(delta, dims, 8, RngSeed{33});
  for (std::size_t i = 0; i < samples.size(); ++i) {
    RngStream s = RngStream::derive(RngSeed{33}, i);
    CHECK(std::abs(samples[i] - oracle::witness(delta, sample_haar_unitary(dims, s).matrix(), dims)) <
          1e-14);
  }

  const MonteCarloStats two = monte_carlo_stats(rho, ref, 2, RngSeed{1});
  CHECK(std::isfinite(two.stdError));
  CHECK_THROWS_AS(monte_carlo_stats(rho, ref, 1, RngSeed{1}), InvalidArgument);
}

TEST_CASE("samples do not depend on how the work is split") {
  const DensityMatrix rho = schmidt_pair_state(0.3);
  const CMatrix delta = rho.matrix() - schmidt_pair_reference(0.3).matrix();
  const auto big = haar_witness_samples(delta, {2, 2}, 1000, RngSeed{5});
  const auto small = haar_witness_samples(delta, {2, 2}, 10, RngSeed{5});
  CHECK(std::equal(small.begin(), small.end(), big.begin()));
}

TEST_CASE("at least half the samples exceed mu - s") {
  const DensityMatrix rho = schmidt_pair_state(0.5);
  const DensityMatrix ref = schmidt_pair_reference(0.5);
  const HaarStats s = haar_stats(rho, ref);
  const auto samples = haar_witness_samples(rho.matrix() - ref.matrix(), {2, 2}, 2000, RngSeed{6});
  const auto above = std::count_if(samples.begin(), samples.end(),
                                   [&](double x) { return x > s.mu - s.s(); });
  const double fraction = static_cast<double>(above) / samples.size();
  CHECK(fraction >= 0.5 - 3.0 * std::sqrt(0.25 / samples.size()));
}
