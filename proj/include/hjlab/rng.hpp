#ifndef HJLAB_RNG_HPP
#define HJLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace hjlab {

/// splitmix64 finalizer; good avalanche, used only to derive seeds.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based seed split: sample i of a run seeded with `base` gets its
/// own stream, independent of how samples are scheduled across threads.
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t index)
{
    return mix64(mix64(base) ^ mix64(index + 0x51ed2701u));
}

/// Deterministic uniform/Gaussian stream. Gaussians come from an explicit
/// Box-Muller transform so the draw sequence is fixed by the seed alone,
/// not by the standard library's distribution implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform on the open interval (0,1).
    double uniform()
    {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    double gaussian()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double a = 2.0 * M_PI * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace hjlab

#endif
