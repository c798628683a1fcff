#pragma once

#include <cstdint>
#include <vector>

#include "nroot/bitset.hpp"
#include "nroot/util.hpp"

namespace nroot {

namespace detail {

template <typename Fn>
void clique_search(const std::vector<DynBitset>& adj, int k,
                   std::vector<uint16_t>& chosen, const DynBitset& cand, Fn&& emit) {
    if (int(chosen.size()) == k) {
        emit(const_cast<const std::vector<uint16_t>&>(chosen));
        return;
    }
    if (int(chosen.size()) + cand.count() < k) return;
    cand.for_each([&](int next) {
        chosen.push_back(uint16_t(next));
        DynBitset c2 = cand;
        c2 &= adj[next];
        for (int i = 0; i <= next; ++i) c2.reset(i);
        clique_search(adj, k, chosen, c2, emit);
        chosen.pop_back();
    });
}

}  // namespace detail

// Enumerates all k-cliques of the adjacency bit-matrix by backtracking,
// extending only with vertices above the last chosen one, so cliques come
// out with ascending members. Buckets are filled per first vertex, which
// keeps the output order canonical under any worker count.
inline std::vector<std::vector<uint16_t>> enumerate_cliques(
    const std::vector<DynBitset>& adj, int k, int workers = 1) {
    int m = int(adj.size());
    std::vector<std::vector<std::vector<uint16_t>>> buckets(m);
    parallel_for(m, workers, [&](int first) {
        std::vector<uint16_t> chosen{uint16_t(first)};
        DynBitset cand = adj[first];
        for (int i = 0; i <= first; ++i) cand.reset(i);
        detail::clique_search(adj, k, chosen, cand, [&](const std::vector<uint16_t>& c) {
            buckets[first].push_back(c);
        });
    });
    std::vector<std::vector<uint16_t>> out;
    for (auto& b : buckets)
        for (auto& c : b) out.push_back(std::move(c));
    return out;
}

}  // namespace nroot
