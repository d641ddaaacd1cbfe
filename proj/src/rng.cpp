#include "mixing/rng.hpp"

#include <array>

namespace mixing {

Rng derive_rng(std::uint64_t master_seed, std::uint64_t replica,
               std::uint64_t stream) {
  const std::array<std::uint32_t, 5> words{
      static_cast<std::uint32_t>(master_seed),
      static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(replica),
      static_cast<std::uint32_t>(replica >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace mixing
