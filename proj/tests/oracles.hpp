#pragma once

// Test-only reference computations. Nothing here calls into the Smith normal form
// code; these are the independent routes the library results are checked against.

#include "loophom/exact_linalg.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using loophom::Int;
using loophom::IntMatrix;

/// Fraction-free (Bareiss) determinant.
inline Int determinant(IntMatrix a) {
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(s, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Rank over Q by fraction-free elimination.
inline std::size_t rank(IntMatrix a) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(r, k), a(p, k));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            Int f = a(i, c), g = a(r, c);
            for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) = a(i, k) * g - a(r, k) * f;
        }
        ++r;
    }
    return r;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

/// Invariant factors as ratios of determinantal divisors (gcd of k x k minors).
inline std::vector<Int> invariant_factors(const IntMatrix& m) {
    std::vector<Int> divisors{Int(1)};
    const std::size_t top = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= top; ++k) {
        Int g = 0;
        for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
            for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
                IntMatrix minor(k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(rs[i], cs[j]);
                g = boost::multiprecision::gcd(g, determinant(minor));
            });
        });
        if (g == 0) break;
        divisors.push_back(abs(g));
    }
    std::vector<Int> f;
    for (std::size_t k = 1; k < divisors.size(); ++k) f.push_back(divisors[k] / divisors[k - 1]);
    return f;
}

/// |image of (Z/m)^cols under M mod m|, by enumerating the whole box [0, m)^cols.
inline std::size_t image_size_mod(const IntMatrix& a, int m) {
    std::vector<long long> e(a.rows() * a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) e[r * a.cols() + c] = static_cast<long long>(a(r, c));
    std::set<std::vector<int>> seen;
    std::vector<int> v(a.cols(), 0);
    for (;;) {
        std::vector<int> img(a.rows(), 0);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            long long s = 0;
            for (std::size_t c = 0; c < a.cols(); ++c) s += e[r * a.cols() + c] * v[c];
            img[r] = static_cast<int>(((s % m) + m) % m);
        }
        seen.insert(img);
        std::size_t i = 0;
        while (i < v.size() && ++v[i] == m) v[i++] = 0;
        if (i == v.size()) break;
    }
    return seen.size();
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

}  // namespace oracle
