#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "discord/quantum_core.hpp"

namespace discord {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Generator identity written into experiment metadata.
inline constexpr std::string_view kRngIdentity =
    "std::mt19937_64 seeded via splitmix64(seed ^ splitmix64(stream)); "
    "std::normal_distribution<double>";

/// An owned random stream. Streams are never shared between threads; parallel
/// work derives one stream per task index with RngStream::derive.
class RngStream {
 public:
  explicit RngStream(RngSeed seed);

  /// Independent stream for (seed, index). Index 0 is distinct from RngStream(seed).
  static RngStream derive(RngSeed seed, std::uint64_t index);

  /// N(0, 1).
  double normal();
  /// Standard complex normal: real and imaginary parts each N(0, 1/2).
  Complex complex_normal();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal moved into Q, so that the factorization is the unique one with
/// positive diagonal R.
UnitaryOperator sample_haar_unitary(BipartiteDims dims, RngStream& rng);
UnitaryOperator sample_haar_unitary(int d, RngStream& rng);

/// H = (G + G^dagger) / 2 with G standard complex Gaussian.
HermitianOperator sample_gue_hamiltonian(BipartiteDims dims, RngStream& rng);
HermitianOperator sample_gue_hamiltonian(int d, RngStream& rng);

struct GibbsParams {
  double beta = 1.0;  // inverse temperature, k = 1
  BipartiteDims dims;
};

/// exp(-beta H) / Z via the spectral decomposition, shifted by the lowest
/// eigenvalue before exponentiating.
DensityMatrix gibbs_state(const HermitianOperator& h, const GibbsParams& params);

}  // namespace discord
