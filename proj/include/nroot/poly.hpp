#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nroot/util.hpp"

namespace nroot {

// Multivariate polynomial with integer coefficients over at most 16
// variables, each exponent < 16. A monomial is packed into a uint64 key,
// 4 bits per variable, so key order is a fixed monomial order.
class Poly {
public:
    using Term = std::pair<uint64_t, long long>;

    Poly() = default;

    static Poly constant(long long c) {
        Poly p;
        if (c) p.terms_.push_back({0, c});
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    // Multiplies by a linear form sum_j v[j] * x_j.
    Poly times_linear(const std::vector<int>& v) const {
        if (v.size() > 16) throw std::invalid_argument("Poly: too many variables");
        std::vector<Term> out;
        out.reserve(terms_.size() * 4);
        for (const auto& [key, c] : terms_)
            for (size_t j = 0; j < v.size(); ++j) {
                if (!v[j]) continue;
                out.push_back({key + (uint64_t{1} << (4 * j)), c * v[j]});
            }
        return from_unsorted(std::move(out));
    }

    Poly& add_scaled(const Poly& o, long long scale) {
        if (!scale || o.is_zero()) return *this;
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                out.push_back({o.terms_[j].first, o.terms_[j].second * scale});
                ++j;
            } else {
                long long c = terms_[i].second + o.terms_[j].second * scale;
                if (c) out.push_back({terms_[i].first, c});
                ++i, ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }

    static Poly from_unsorted(std::vector<Term> raw) {
        std::sort(raw.begin(), raw.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        Poly p;
        p.terms_.reserve(raw.size());
        for (const auto& [key, c] : raw) {
            if (!p.terms_.empty() && p.terms_.back().first == key)
                p.terms_.back().second += c;
            else
                p.terms_.push_back({key, c});
        }
        std::erase_if(p.terms_, [](const Term& t) { return t.second == 0; });
        return p;
    }

    static std::vector<int> unpack_key(uint64_t key, int nvars) {
        std::vector<int> e(nvars);
        for (int j = 0; j < nvars; ++j) e[j] = int((key >> (4 * j)) & 0xf);
        return e;
    }

private:
    std::vector<Term> terms_;
};

// Rank of a set of Poly rows over Q, by sparse Gaussian elimination with
// exact rational arithmetic.
class SparseRankQ {
public:
    using Row = std::vector<std::pair<uint64_t, Rat>>;

    void add_poly(const Poly& p) {
        Row r;
        r.reserve(p.terms().size());
        for (const auto& [key, c] : p.terms()) r.push_back({key, Rat((long)c)});
        add_row(std::move(r));
    }

    void add_row(Row row) {
        while (!row.empty()) {
            uint64_t lead = row.front().first;
            auto it = std::lower_bound(
                pivot_leads_.begin(), pivot_leads_.end(), lead);
            if (it == pivot_leads_.end() || *it != lead) {
                Rat inv = 1 / row.front().second;
                for (auto& [k, c] : row) c *= inv;
                size_t pos = it - pivot_leads_.begin();
                pivot_leads_.insert(it, lead);
                pivots_.insert(pivots_.begin() + pos, std::move(row));
                return;
            }
            const Row& piv = pivots_[it - pivot_leads_.begin()];
            row = subtract_scaled(row, piv, row.front().second);
        }
    }

    int rank() const { return int(pivots_.size()); }

private:
    static Row subtract_scaled(const Row& a, const Row& b, const Rat& s) {
        Row out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.push_back({b[j].first, -s * b[j].second});
                ++j;
            } else {
                Rat c = a[i].second - s * b[j].second;
                if (c != 0) out.push_back({a[i].first, c});
                ++i, ++j;
            }
        }
        return out;
    }

    std::vector<uint64_t> pivot_leads_;
    std::vector<Row> pivots_;
};

}  // namespace nroot
