#pragma once

#include <cstdint>
#include <vector>

namespace nroot {

// Fixed-size bitset with a runtime bit count. Sized once, never resized.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    int size() const { return bits_; }

    void set(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void set_all() {
        for (auto& w : words_) w = ~uint64_t{0};
        trim();
    }

    int count() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }

    bool any() const {
        for (uint64_t w : words_) if (w) return true;
        return false;
    }

    DynBitset& operator&=(const DynBitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    DynBitset& operator|=(const DynBitset& o) {
        for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
    friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

    bool operator==(const DynBitset& o) const { return bits_ == o.bits_ && words_ == o.words_; }

    int intersection_count(const DynBitset& o) const {
        int c = 0;
        for (size_t i = 0; i < words_.size(); ++i)
            c += __builtin_popcountll(words_[i] & o.words_[i]);
        return c;
    }

    // Calls fn(i) for every set bit, ascending.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                fn(int(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

private:
    void trim() {
        int rem = bits_ & 63;
        if (rem && !words_.empty()) words_.back() &= (uint64_t{1} << rem) - 1;
    }

    int bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace nroot
