#pragma once

#include <cstdint>

namespace bifcur {

// Counter-based generator: the value drawn at position k depends only on
// (seed, stream, k), so parallel consumers can be given disjoint streams and
// the output never depends on scheduling. Mixing is splitmix64 applied to a
// combined key; all operations are exact 64-bit integer arithmetic, identical
// on every platform.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(mix(seed) ^ (mix(stream) + 0x9e3779b97f4a7c15ull))), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [a,b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Derived generator for an independent substream.
    CounterRng split(std::uint64_t substream) const {
        return CounterRng(key_, mix(substream ^ 0xd1342543de82ef95ull));
    }

    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace bifcur
