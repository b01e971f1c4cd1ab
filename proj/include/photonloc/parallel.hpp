#ifndef PHOTONLOC_PARALLEL_HPP
#define PHOTONLOC_PARALLEL_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace photonloc {

// Worker cap: min(hardware_concurrency, PHOTONLOC_THREADS), at least 1.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on disjoint index chunks. Each index writes
// its own output slot, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Fixed-order pairwise (tree) summation; bit-stable regardless of how the
// terms were produced.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
    if (terms.empty()) return T{};
    if (terms.size() == 1) return terms[0];
    std::vector<T> level(terms.begin(), terms.end());
    while (level.size() > 1) {
        std::vector<T> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

template <typename T>
T pairwise_sum(const std::vector<T>& terms) {
    return pairwise_sum(std::span<const T>(terms));
}

} // namespace photonloc

#endif
