#include <doctest.h>

#include <cstring>

#include "discord/dephasing.hpp"
#include "discord/haar_averages.hpp"
#include "discord/random_ensembles.hpp"
#include "oracles.hpp"

using namespace discord;

namespace {

bool same_bits(const CMatrix& a, const CMatrix& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_CASE("streams are reproducible and independent") {
  RngStream a(RngSeed{42});
  RngStream b(RngSeed{42});
  RngStream c(RngSeed{43});
  bool allEqual = true;
  bool anyDiffer = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    allEqual = allEqual && x == b.normal();
    anyDiffer = anyDiffer || x != c.normal();
  }
  CHECK(allEqual);
  CHECK(anyDiffer);

  RngStream d0 = RngStream::derive(RngSeed{42}, 0);
  RngStream d1 = RngStream::derive(RngSeed{42}, 1);
  RngStream base(RngSeed{42});
  const double x0 = d0.normal();
  CHECK(x0 != d1.normal());
  CHECK(x0 != base.normal());
  CHECK(RngStream::derive(RngSeed{42}, 0).normal() == x0);
}

TEST_CASE("complex normal has variance 1/2 per component") {
  RngStream rng(RngSeed{7});
  const int n = 200000;
  double re2 = 0.0, im2 = 0.0, reMean = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex z = rng.complex_normal();
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    reMean += z.real();
  }
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(reMean / n) < 5.0 * std::sqrt(0.5 / n));
}

TEST_CASE("sample_haar_unitary") {
  RngStream rng(RngSeed{1});
  const UnitaryOperator one = sample_haar_unitary(1, rng);
  CHECK(std::abs(std::abs(one.matrix()(0, 0)) - 1.0) < 1e-15);

  for (int d : {2, 3, 4, 8, 16}) {
    const CMatrix u = sample_haar_unitary(d, rng).matrix();
    CHECK(oracle::max_abs(u.adjoint() * u - CMatrix::Identity(d, d)) < tol::unit);
  }

  RngStream r1(RngSeed{5}), r2(RngSeed{5});
  CHECK(same_bits(sample_haar_unitary(4, r1).matrix(), sample_haar_unitary(4, r2).matrix()));
}

TEST_CASE("Haar moments: |U_00|^2 has mean 1/d and second moment 2/(d(d+1))") {
  // Unnormalized QR (no phase fix) is biased; these moments detect it.
  RngStream rng(RngSeed{2024});
  const int d = 3;
  const int n = 40000;
  double m1 = 0.0, m2 = 0.0, phaseCos = 0.0;
  for (int i = 0; i < n; ++i) {
    const CMatrix u = sample_haar_unitary(d, rng).matrix();
    const double p = std::norm(u(0, 0));
    m1 += p;
    m2 += p * p;
    phaseCos += std::cos(std::arg(u(1, 1)));
  }
  m1 /= n;
  m2 /= n;
  phaseCos /= n;
  const double var1 = 2.0 / (d * (d + 1.0)) - 1.0 / (d * d);
  CHECK(std::abs(m1 - 1.0 / d) < 4.0 * std::sqrt(var1 / n));
  CHECK(m2 == doctest::Approx(2.0 / (d * (d + 1.0))).epsilon(0.03));
  // Diagonal phases are uniform under Haar; a real-positive bias would show up here.
  CHECK(std::abs(phaseCos) < 0.02);
}

TEST_CASE("Haar invariance: U and V U give the same witness mean") {
  const BipartiteDims dims{2, 2};
  const DensityMatrix rho = schmidt_pair_state(0.3);
  const DensityMatrix ref = schmidt_pair_reference(0.3);
  const CMatrix delta = rho.matrix() - ref.matrix();
  RngStream fixed(RngSeed{77});
  const CMatrix v = sample_haar_unitary(dims, fixed).matrix();

  const int n = 3000;
  std::vector<double> plain, rotated;
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::derive(RngSeed{78}, static_cast<std::uint64_t>(i));
    const CMatrix u = sample_haar_unitary(dims, rng).matrix();
    plain.push_back(oracle::witness(delta, u, dims));
    RngStream rng2 = RngStream::derive(RngSeed{79}, static_cast<std::uint64_t>(i));
    rotated.push_back(oracle::witness(delta, v * sample_haar_unitary(dims, rng2).matrix(), dims));
  }
  const MonteCarloStats a = summarize_samples(plain);
  const MonteCarloStats b = summarize_samples(rotated);
  const double se = std::sqrt(a.stdError * a.stdError + b.stdError * b.stdError);
  CHECK(std::abs(a.mean - b.mean) < 3.0 * se);
}

TEST_CASE("sample_gue_hamiltonian") {
  RngStream rng(RngSeed{3});
  const HermitianOperator h = sample_gue_hamiltonian(5, rng);
  CHECK(hermiticity_deviation(h.matrix()) == 0.0);

  RngStream r1(RngSeed{9}), r2(RngSeed{9});
  CHECK(same_bits(sample_gue_hamiltonian(4, r1).matrix(), sample_gue_hamiltonian(4, r2).matrix()));

  // Tr H = sum of real diagonal parts, each N(0, 1/2): variance d/2.
  const int n = 500;
  const int d = 4;
  std::vector<double> traces;
  for (int i = 0; i < n; ++i) traces.push_back(sample_gue_hamiltonian(d, rng).matrix().trace().real());
  const MonteCarloStats s = summarize_samples(traces);
  CHECK(std::abs(s.mean) < 4.0 * s.stdError);
  CHECK(s.variance == doctest::Approx(d / 2.0).epsilon(0.2));
}

TEST_CASE("gibbs_state") {
  RngStream rng(RngSeed{4});
  const BipartiteDims dims{2, 2};
  const HermitianOperator h = sample_gue_hamiltonian(dims, rng);

  const DensityMatrix hot = gibbs_state(h, {0.0, dims});
  CHECK(oracle::max_abs(hot.matrix() - CMatrix::Identity(4, 4) / 4.0) < 1e-14);
  CHECK(geometric_discord(hot) < 1e-12);

  for (double beta : {0.1, 1.0, 5.0, 200.0}) {
    const DensityMatrix g = gibbs_state(h, {beta, dims});
    const CMatrix comm = g.matrix() * h.matrix() - h.matrix() * g.matrix();
    CHECK(oracle::max_abs(comm) < 1e-10);
  }

  // Two-level closed form.
  const double e = 1.7;
  const double beta = 0.8;
  CMatrix two = CMatrix::Zero(2, 2);
  two(1, 1) = e;
  const DensityMatrix g = gibbs_state(HermitianOperator(two, {2, 1}), {beta, {2, 1}});
  const double z = 1.0 + std::exp(-beta * e);
  CHECK(g.matrix()(0, 0).real() == doctest::Approx(1.0 / z).epsilon(1e-14));
  CHECK(g.matrix()(1, 1).real() == doctest::Approx(std::exp(-beta * e) / z).epsilon(1e-14));

  // Large beta times a wide spectrum would overflow without the shift.
  CMatrix wide = CMatrix::Zero(2, 2);
  wide(0, 0) = -1000.0;
  wide(1, 1) = 1000.0;
  const DensityMatrix cold = gibbs_state(HermitianOperator(wide, {2, 1}), {50.0, {2, 1}});
  CHECK(cold.matrix()(0, 0).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(gibbs_state(h, {-1.0, dims}), InvalidArgument);
  CHECK_THROWS_AS(gibbs_state(h, {INFINITY, dims}), InvalidArgument);
}
