#pragma once

#include <vector>

#include "fsg/polynomial.hpp"

namespace fsg {

// Truncated formal series in nu with polynomial coefficients:
// f = f_0 + nu f_1 + ... + nu^N f_N. Arithmetic discards orders > N.
class NuSeries {
public:
    NuSeries(int dim, int trunc); // zero series
    static NuSeries constant(int dim, int trunc, const Rational& c);
    static NuSeries one(int dim, int trunc) { return constant(dim, trunc, Rational(1)); }
    static NuSeries from_polynomial(Polynomial p, int trunc);
    static NuSeries from_levels(std::vector<Polynomial> levels);

    int dimension() const { return dim_; }
    int truncation() const { return trunc_; }
    const Polynomial& at(int r) const;
    bool is_zero() const;
    // Smallest r with a nonzero coefficient; trunc+1 when the series is zero.
    int nu_order() const;

    NuSeries operator-() const;
    NuSeries& operator+=(const NuSeries& o);
    NuSeries& operator-=(const NuSeries& o);
    friend NuSeries operator+(NuSeries a, const NuSeries& b) { return a += b; }
    friend NuSeries operator-(NuSeries a, const NuSeries& b) { return a -= b; }
    NuSeries operator*(const NuSeries& o) const;
    NuSeries operator*(const Rational& c) const;
    NuSeries operator*(const Polynomial& p) const;

    NuSeries shifted(int k) const;   // multiply by nu^k, same truncation
    NuSeries truncated(int m) const; // lower the truncation
    NuSeries extended(int m) const;  // raise the truncation, padding zeros
    NuSeries derivative(int var) const;

    // Multiplicative inverse mod nu^{N+1}. Requires the nu^0 coefficient to
    // be a nonzero constant.
    NuSeries inverse() const;

    // log(f / c) where c is the (nonzero constant) nu^0 coefficient.
    // The dropped additive constant log(c) never matters: a density scaled by
    // a nonzero constant has the same transposes.
    NuSeries log_unit() const;

    bool operator==(const NuSeries& o) const = default;
    std::string str() const;

private:
    int dim_;
    int trunc_;
    std::vector<Polynomial> coeff_; // size trunc_+1
};

} // namespace fsg
