#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "arrowlab/error.hpp"

namespace arrowlab {

using Rational = boost::multiprecision::cpp_rational;

// Polynomial sum_j c[j] x^j on [0,1).
template <class T> struct Poly {
    std::vector<T> c;

    Poly() : c{T(0)} {}
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) {
        if (c.empty()) c.push_back(T(0));
    }
    static Poly constant(T v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(std::size_t j) {
        std::vector<T> v(j + 1, T(0));
        v[j] = T(1);
        return Poly(std::move(v));
    }

    std::size_t degree() const {
        std::size_t d = c.size() - 1;
        while (d > 0 && c[d] == T(0)) --d;
        return d;
    }
    T operator()(const T& x) const {
        T s(0);
        for (std::size_t j = c.size(); j-- > 0;) s = s * x + c[j];
        return s;
    }
    T coeff(std::size_t j) const { return j < c.size() ? c[j] : T(0); }

    Poly derivative() const {
        if (c.size() <= 1) return Poly();
        std::vector<T> d(c.size() - 1);
        for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * T(static_cast<long>(j));
        return Poly(std::move(d));
    }
    T integral01() const {
        T s(0);
        for (std::size_t j = 0; j < c.size(); ++j) s += c[j] / T(static_cast<long>(j + 1));
        return s;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> v(std::max(a.c.size(), b.c.size()), T(0));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coeff(j) + b.coeff(j);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> v(std::max(a.c.size(), b.c.size()), T(0));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = a.coeff(j) - b.coeff(j);
        return Poly(std::move(v));
    }
    friend Poly operator*(const T& s, const Poly& p) {
        Poly r = p;
        for (auto& x : r.c) x *= s;
        return r;
    }
};

template <class T> T binomial(std::size_t n, std::size_t k) {
    T r(1);
    for (std::size_t i = 1; i <= k; ++i) r = r * T(static_cast<long>(n - k + i)) / T(static_cast<long>(i));
    return r;
}

// Bernoulli numbers with B_1 = -1/2.
template <class T> std::vector<T> bernoulli_numbers(std::size_t n_max) {
    std::vector<T> b(n_max + 1, T(0));
    b[0] = T(1);
    for (std::size_t m = 1; m <= n_max; ++m) {
        T s(0);
        for (std::size_t k = 0; k < m; ++k) s += binomial<T>(m + 1, k) * b[k];
        b[m] = -s / T(static_cast<long>(m + 1));
    }
    return b;
}

// B_n(x) = sum_k C(n,k) B_k x^(n-k).
template <class T> Poly<T> bernoulli_poly(std::size_t n) {
    auto b = bernoulli_numbers<T>(n);
    std::vector<T> c(n + 1, T(0));
    for (std::size_t k = 0; k <= n; ++k) c[n - k] = binomial<T>(n, k) * b[k];
    return Poly<T>(std::move(c));
}

// Frobenius-Perron operator of x -> beta x mod 1 on polynomials:
// (U p)(x) = (1/beta) sum_r p((x + r)/beta).
template <class T> Poly<T> fp_poly(const Poly<T>& p, int base) {
    require(base >= 2, "map base must be >= 2");
    const std::size_t n = p.c.size();
    std::vector<T> out(n, T(0));
    const T beta(base);
    T scale(1); // beta^-j
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0) scale /= beta;
        if (p.c[j] == T(0)) continue;
        // sum_r (x + r)^j = sum_i C(j,i) x^i sum_r r^(j-i)
        for (std::size_t i = 0; i <= j; ++i) {
            T pw(0);
            for (int r = 0; r < base; ++r) {
                T rp(1);
                for (std::size_t e = 0; e < j - i; ++e) rp *= T(r);
                pw += rp;
            }
            out[i] += p.c[j] * scale * binomial<T>(j, i) * pw / beta;
        }
    }
    return Poly<T>(std::move(out));
}

// Left Bernoulli functional: n = 0 gives the integral over [0,1); n >= 1 gives
// (1/n!) [p^(n-1)(1) - p^(n-1)(0)].
template <class T> T left_functional(std::size_t n, const Poly<T>& p) {
    if (n == 0) return p.integral01();
    Poly<T> d = p;
    T fact(1);
    for (std::size_t k = 1; k < n; ++k) {
        d = d.derivative();
        fact *= T(static_cast<long>(k));
    }
    fact *= T(static_cast<long>(n));
    return (d(T(1)) - d(T(0))) / fact;
}

} // namespace arrowlab
