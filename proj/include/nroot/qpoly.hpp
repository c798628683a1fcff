#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nroot {

// Dense univariate polynomial in q with integer coefficients.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly one() { return QPoly({1}); }
    static QPoly monomial(int deg, long long coeff = 1) {
        std::vector<long long> c(deg + 1, 0);
        c[deg] = coeff;
        return QPoly(std::move(c));
    }
    // Quantum integer [d]_q = 1 + q + ... + q^{d-1}.
    static QPoly quantum(int d) { return QPoly(std::vector<long long>(d, 1)); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return int(c_.size()) - 1; }
    long long coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : 0; }
    const std::vector<long long>& coeffs() const { return c_; }
    int low_degree() const {
        for (int i = 0; i < int(c_.size()); ++i)
            if (c_[i]) return i;
        return -1;
    }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    QPoly& operator+=(const QPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<long long> out(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(out));
    }

    // Exact division; nullopt if the remainder is nonzero.
    std::optional<QPoly> divided_by(const QPoly& d) const {
        if (d.is_zero() || c_.size() < d.c_.size()) return std::nullopt;
        std::vector<long long> rem = c_;
        std::vector<long long> quot(c_.size() - d.c_.size() + 1, 0);
        long long lead = d.c_.back();
        for (int i = int(rem.size()) - 1; i >= int(d.c_.size()) - 1; --i) {
            if (rem[i] == 0) continue;
            if (rem[i] % lead != 0) return std::nullopt;
            long long f = rem[i] / lead;
            quot[i - (d.c_.size() - 1)] = f;
            for (size_t j = 0; j < d.c_.size(); ++j)
                rem[i - (d.c_.size() - 1) + j] -= f * d.c_[j];
        }
        for (long long r : rem)
            if (r != 0) return std::nullopt;
        return QPoly(std::move(quot));
    }

    std::complex<double> eval(std::complex<double> q) const {
        std::complex<double> acc = 0;
        for (int i = degree(); i >= 0; --i) acc = acc * q + double(c_[i]);
        return acc;
    }

    long long eval_at_one() const {
        long long s = 0;
        for (long long x : c_) s += x;
        return s;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = 0; i < int(c_.size()); ++i) {
            if (!c_[i]) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i > 0) {
                if (c_[i] != 1) s += "*";
                s += "q";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<long long> c_;
};

inline QPoly product_of_quantum(const std::vector<int>& ds) {
    QPoly p = QPoly::one();
    for (int d : ds) p = p * QPoly::quantum(d);
    return p;
}

// Writes f as a product of quantum integers [d]_q, largest candidate first
// with backtracking. Returns the multiset of d's, or nullopt.
inline std::optional<std::vector<int>> quantum_factorization(const QPoly& f) {
    if (f.is_zero()) return std::nullopt;
    if (f.is_one()) return std::vector<int>{};
    for (int d = f.degree() + 1; d >= 2; --d) {
        auto q = f.divided_by(QPoly::quantum(d));
        if (!q) continue;
        auto rest = quantum_factorization(*q);
        if (rest) {
            rest->push_back(d);
            std::sort(rest->begin(), rest->end());
            return rest;
        }
    }
    return std::nullopt;
}

}  // namespace nroot
