#include "discord/random_ensembles.hpp"

#include <cmath>

#include <fmt/format.h>

namespace discord {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(RngSeed seed) : engine_(splitmix64(seed.value)) {}

RngStream RngStream::derive(RngSeed seed, std::uint64_t index) {
  return RngStream(RngSeed{seed.value ^ splitmix64(index + 1)});
}

double RngStream::normal() { return normal_(engine_); }

Complex RngStream::complex_normal() {
  constexpr double kHalf = 0.70710678118654752440;  // sqrt(1/2)
  const double re = normal();
  const double im = normal();
  return {kHalf * re, kHalf * im};
}

namespace {

CMatrix ginibre(int d, RngStream& rng) {
  CMatrix g(d, d);
  // Row-major fill order is part of the reproducibility contract.
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

}  // namespace

UnitaryOperator sample_haar_unitary(BipartiteDims dims, RngStream& rng) {
  validate_dims(dims);
  const int d = dims.total();
  Eigen::HouseholderQR<CMatrix> qr(ginibre(d, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return UnitaryOperator(std::move(q), dims);
}

UnitaryOperator sample_haar_unitary(int d, RngStream& rng) {
  return sample_haar_unitary(BipartiteDims{d, 1}, rng);
}

HermitianOperator sample_gue_hamiltonian(BipartiteDims dims, RngStream& rng) {
  validate_dims(dims);
  const CMatrix g = ginibre(dims.total(), rng);
  return HermitianOperator(0.5 * (g + g.adjoint()), dims);
}

HermitianOperator sample_gue_hamiltonian(int d, RngStream& rng) {
  return sample_gue_hamiltonian(BipartiteDims{d, 1}, rng);
}

DensityMatrix gibbs_state(const HermitianOperator& h, const GibbsParams& params) {
  if (!(params.beta >= 0.0) || !std::isfinite(params.beta)) {
    throw InvalidArgument(fmt::format("gibbs_state: beta must be finite and >= 0, got {}",
                                      params.beta));
  }
  if (!(params.dims == h.dims())) throw DimensionMismatch("gibbs_state: dims differ from H");
  const SpectralDecomposition spectrum = eig_hermitian(h);
  const double lowest = spectrum.eigenvalues(0);
  RVector weights = (-params.beta * (spectrum.eigenvalues.array() - lowest)).exp().matrix();
  weights /= weights.sum();
  const CMatrix& v = spectrum.eigenvectors;
  return DensityMatrix(v * weights.cast<Complex>().asDiagonal() * v.adjoint(), params.dims);
}

}  // namespace discord
