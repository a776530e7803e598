#ifndef SUPVERMA_PRNG_HPP
#define SUPVERMA_PRNG_HPP

#include <cstdint>

namespace supverma {

// splitmix64.  Every randomized subtest derives its stream from the
// scenario seed through this generator, so runs are reproducible
// across platforms.  Bounded draws use plain modular reduction; the
// slight bias is irrelevant here and keeps the stream trivially
// re-implementable.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

private:
    uint64_t state_;
};

}  // namespace supverma

#endif
