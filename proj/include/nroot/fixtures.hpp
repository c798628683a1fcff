#pragma once

#include <vector>

#include "nroot/root_system.hpp"
#include "nroot/util.hpp"

// Known values for the supported types: counts, the extremal n-roots in
// explicit coordinates, the nonnesting words, and component height lists.
namespace nroot::fixtures {

inline long long nroot_count(SystemType st) {
    switch (st.family) {
        case Family::D: return double_factorial_odd(st.rank - 1);
        case Family::E7: return 135;
        case Family::E8: return 2025;
    }
    return 0;
}

inline int quad_count(SystemType st) {  // M
    switch (st.family) {
        case Family::D: {
            int k = st.rank / 2;
            return k * (k - 1) / 2;
        }
        case Family::E7: return 7;
        case Family::E8: return 14;
    }
    return 0;
}

inline long long dimension(SystemType st) {
    switch (st.family) {
        case Family::D: return catalan_number(st.rank / 2);
        case Family::E7: return 15;
        case Family::E8: return 50;
    }
    return 0;
}

inline long long xi_size(SystemType st) {
    switch (st.family) {
        case Family::D: {
            long long f = 1;
            for (int i = 2; i <= st.rank / 2; ++i) f *= i;
            return f;
        }
        case Family::E7: return 30;
        case Family::E8: return 240;
    }
    return 0;
}

inline long long positive_root_count(SystemType st) {
    switch (st.family) {
        case Family::D: return (long long)st.rank * (st.rank - 1);
        case Family::E7: return 63;
        case Family::E8: return 120;
    }
    return 0;
}

// Type D extremal elements as matchings of [n], 1-based blocks.
inline std::vector<std::pair<int, int>> theta_a_matching(int n) {
    std::vector<std::pair<int, int>> m;
    for (int i = 1; i <= n; i += 2) m.push_back({i, i + 1});
    return m;
}
inline std::vector<std::pair<int, int>> theta_c_matching(int n) {
    std::vector<std::pair<int, int>> m;
    for (int i = 1; i <= n / 2; ++i) m.push_back({i, i + n / 2});
    return m;
}
inline std::vector<std::pair<int, int>> theta_n_matching(int n) {
    std::vector<std::pair<int, int>> m;
    for (int i = 1; i <= n / 2; ++i) m.push_back({i, n + 1 - i});
    return m;
}

// E7 extremal 7-roots, components in simple-root coordinates.
inline std::vector<Coeffs> e7_theta_a() {
    return {{0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0},
            {0, 0, 0, 0, 0, 0, 1}, {0, 1, 2, 1, 0, 0, 1}, {0, 1, 2, 2, 2, 1, 1},
            {2, 3, 4, 3, 2, 1, 2}};
}
inline std::vector<Coeffs> e7_theta_c() {
    return {{0, 1, 1, 1, 1, 0, 1}, {0, 1, 2, 1, 0, 0, 1}, {0, 0, 1, 1, 1, 1, 1},
            {1, 1, 1, 1, 0, 0, 1}, {1, 1, 2, 1, 1, 0, 1}, {1, 2, 2, 1, 1, 1, 1},
            {1, 2, 3, 3, 2, 1, 1}};
}
inline std::vector<Coeffs> e7_theta_n() {
    return {{0, 0, 0, 0, 0, 0, 1}, {0, 1, 2, 1, 0, 0, 1}, {1, 1, 2, 1, 1, 0, 1},
            {1, 1, 2, 2, 1, 1, 1}, {1, 2, 2, 1, 1, 1, 1}, {1, 2, 2, 2, 1, 0, 1},
            {0, 1, 2, 2, 2, 1, 1}};
}

// E8 extremal 8-roots, components in simple-root coordinates.
inline std::vector<Coeffs> e8_theta_a() {
    return {{0, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0, 0},
            {0, 0, 0, 0, 0, 0, 1, 0}, {0, 1, 1, 2, 1, 0, 0, 0}, {0, 1, 1, 2, 2, 2, 1, 0},
            {2, 2, 3, 4, 3, 2, 1, 0}, {2, 3, 4, 6, 5, 4, 3, 2}};
}
inline std::vector<Coeffs> e8_theta_c() {
    return {{1, 1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 2, 1, 1, 1, 0}, {1, 1, 1, 2, 2, 1, 0, 0},
            {1, 1, 2, 2, 1, 1, 0, 0}, {1, 1, 2, 2, 2, 1, 1, 0}, {1, 1, 2, 3, 2, 1, 1, 1},
            {1, 1, 2, 3, 3, 3, 2, 1}, {1, 3, 3, 5, 4, 3, 2, 1}};
}
inline std::vector<Coeffs> e8_theta_n() {
    return {{1, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 2, 2, 1, 0, 0, 0}, {1, 1, 2, 2, 2, 2, 1, 0},
            {1, 1, 2, 3, 2, 2, 1, 1}, {1, 1, 2, 3, 3, 2, 2, 1}, {1, 2, 2, 3, 2, 2, 2, 1},
            {1, 2, 2, 3, 3, 2, 1, 1}, {1, 2, 2, 4, 3, 2, 1, 0}};
}

inline std::vector<int> theta_n_heights(SystemType st) {
    if (st.family == Family::E7) return {1, 5, 7, 9, 9, 9, 9};
    if (st.family == Family::E8) return {1, 7, 11, 13, 15, 15, 15, 15};
    return {};
}

// Reduced words for the nonnesting element w_N (empty when no fixture).
inline std::vector<int> wn_word(SystemType st) {
    if (st.family == Family::E7) return {1, 3, 5, 2, 4, 3, 7};
    if (st.family == Family::E8) return {1, 4, 6, 8, 3, 5, 7, 4, 6, 2, 5, 4, 3, 1};
    if (st.family == Family::D) {
        // w_{2,k-2} w_{3,k-3} ... w_{k,0} with w_{i,j} = s_i s_{i+2} ... s_{i+2j}
        std::vector<int> w;
        int k = st.rank / 2;
        for (int i = 2; i <= k; ++i)
            for (int j = 0; j <= k - i; ++j) w.push_back(i + 2 * j);
        return w;
    }
    return {};
}

// Fano labellings of theta_C and theta_N in E7 (triples as digit triples).
inline std::vector<std::array<int, 3>> e7_fano_theta_c() {
    return {{1, 2, 7}, {1, 3, 6}, {1, 4, 5}, {2, 3, 5}, {2, 4, 6}, {3, 4, 7}, {5, 6, 7}};
}
inline std::vector<std::array<int, 3>> e7_fano_theta_n() {
    return {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
}

// E8 theta_C / theta_N components in standard coordinates (rows of sign
// vectors, each +-1).
inline std::vector<Embed> e8_theta_c_embedding() {
    return {{+1, +1, -1, -1, -1, -1, +1, +1}, {+1, -1, +1, -1, -1, +1, -1, +1},
            {+1, -1, -1, +1, +1, -1, -1, +1}, {-1, +1, +1, -1, +1, -1, -1, +1},
            {-1, +1, -1, +1, -1, +1, -1, +1}, {-1, -1, +1, +1, -1, -1, +1, +1},
            {-1, -1, -1, -1, +1, +1, +1, +1}, {+1, +1, +1, +1, +1, +1, +1, +1}};
}
inline std::vector<Embed> e8_theta_n_embedding() {
    return {{+1, -1, -1, -1, -1, -1, -1, +1}, {-1, +1, +1, +1, -1, -1, -1, +1},
            {-1, +1, -1, -1, +1, +1, -1, +1}, {-1, -1, +1, -1, +1, -1, +1, +1},
            {-1, -1, -1, +1, -1, +1, +1, +1}, {+1, +1, +1, -1, -1, +1, +1, +1},
            {+1, +1, -1, +1, +1, -1, +1, +1}, {+1, -1, +1, +1, +1, +1, -1, +1}};
}

}  // namespace nroot::fixtures
