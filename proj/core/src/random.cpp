#include "hrl/random.hpp"

#include <stdexcept>

namespace hrl {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int Rng::uniform_int(int n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<int>(x % range);
}

int Rng::categorical(std::span<const double> probs) {
    if (probs.empty()) throw std::invalid_argument("categorical: empty distribution");
    const double u = uniform();
    double acc = 0.0;
    int last = -1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        acc += probs[i];
        last = static_cast<int>(i);
        if (u < acc) return last;
    }
    if (last < 0) throw std::invalid_argument("categorical: all weights zero");
    return last;
}

Rng Rng::child(std::uint64_t key) const {
    return Rng(splitmix64(seed_ ^ splitmix64(key + 0x632be59bd9b4e019ULL)));
}

Rng make_stream(std::uint64_t root, std::uint64_t task, Phase phase, std::uint64_t episode) {
    std::uint64_t h = splitmix64(root);
    h = splitmix64(h ^ (task + 1));
    h = splitmix64(h ^ static_cast<std::uint64_t>(phase));
    h = splitmix64(h ^ (episode + 0x5bd1e995ULL));
    return Rng(h);
}

}  // namespace hrl
