#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace tdos {

// Deterministic, platform-independent PRNG (splitmix64 core). std::
// distributions are implementation-defined, so everything here is
// hand-rolled to keep traces byte-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Derive an independent stream from a master seed and a subsystem
    // label, so adding one attack never perturbs another stream.
    static Rng stream(std::uint64_t master_seed, std::string_view label) {
        std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a 64
        for (char c : label) {
            h ^= static_cast<std::uint8_t>(c);
            h *= 0x100000001b3ULL;
        }
        return Rng(master_seed ^ h);
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return n == 0 ? 0 : next_u64() % n;
    }

    // Knuth's product method; rates here are small (per-window counts).
    int next_poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        const double l = std::exp(-lambda);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= next_double();
        } while (p > l);
        return k - 1;
    }

private:
    std::uint64_t state_;
};

} // namespace tdos
