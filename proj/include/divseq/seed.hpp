#pragma once

#include <cstdint>

namespace divseq {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2024'd1e5ULL;

/// Seed consumed by randomized internals (modular prime selection) on the
/// current thread.
std::uint64_t current_seed();

/// Installs a seed for the current thread for the lifetime of the scope.
class SeedScope {
 public:
  explicit SeedScope(std::uint64_t seed);
  ~SeedScope();
  SeedScope(const SeedScope&) = delete;
  SeedScope& operator=(const SeedScope&) = delete;

 private:
  std::uint64_t previous_;
};

}  // namespace divseq
