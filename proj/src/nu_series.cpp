#include "fsg/nu_series.hpp"

namespace fsg {

NuSeries::NuSeries(int dim, int trunc) : dim_(dim), trunc_(trunc) {
    if (trunc < 0)
        throw DimensionError("series truncation must be non-negative");
    coeff_.assign(static_cast<size_t>(trunc) + 1, Polynomial(dim));
}

NuSeries NuSeries::constant(int dim, int trunc, const Rational& c) {
    NuSeries s(dim, trunc);
    s.coeff_[0] = Polynomial::constant(dim, c);
    return s;
}

NuSeries NuSeries::from_polynomial(Polynomial p, int trunc) {
    NuSeries s(p.dimension(), trunc);
    s.coeff_[0] = std::move(p);
    return s;
}

NuSeries NuSeries::from_levels(std::vector<Polynomial> levels) {
    if (levels.empty())
        throw DimensionError("series needs at least the nu^0 coefficient");
    NuSeries s(levels.front().dimension(), static_cast<int>(levels.size()) - 1);
    for (size_t r = 0; r < levels.size(); ++r) {
        if (levels[r].dimension() != s.dim_)
            throw DimensionError("series coefficients live in different dimensions");
        s.coeff_[r] = std::move(levels[r]);
    }
    return s;
}

const Polynomial& NuSeries::at(int r) const {
    if (r < 0 || r > trunc_)
        throw DimensionError("nu power out of range");
    return coeff_[static_cast<size_t>(r)];
}

bool NuSeries::is_zero() const {
    for (const auto& p : coeff_)
        if (!p.is_zero())
            return false;
    return true;
}

int NuSeries::nu_order() const {
    for (int r = 0; r <= trunc_; ++r)
        if (!coeff_[static_cast<size_t>(r)].is_zero())
            return r;
    return trunc_ + 1;
}

NuSeries NuSeries::operator-() const {
    NuSeries r = *this;
    for (auto& p : r.coeff_)
        p = -p;
    return r;
}

NuSeries& NuSeries::operator+=(const NuSeries& o) {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw DimensionError("series dimension/truncation mismatch");
    for (int r = 0; r <= trunc_; ++r)
        coeff_[static_cast<size_t>(r)] += o.coeff_[static_cast<size_t>(r)];
    return *this;
}

NuSeries& NuSeries::operator-=(const NuSeries& o) {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw DimensionError("series dimension/truncation mismatch");
    for (int r = 0; r <= trunc_; ++r)
        coeff_[static_cast<size_t>(r)] -= o.coeff_[static_cast<size_t>(r)];
    return *this;
}

NuSeries NuSeries::operator*(const NuSeries& o) const {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw DimensionError("series dimension/truncation mismatch");
    NuSeries r(dim_, trunc_);
    for (int a = 0; a <= trunc_; ++a) {
        if (coeff_[static_cast<size_t>(a)].is_zero())
            continue;
        for (int b = 0; a + b <= trunc_; ++b)
            r.coeff_[static_cast<size_t>(a + b)] +=
                coeff_[static_cast<size_t>(a)] * o.coeff_[static_cast<size_t>(b)];
    }
    return r;
}

NuSeries NuSeries::operator*(const Rational& c) const {
    NuSeries r(dim_, trunc_);
    for (int i = 0; i <= trunc_; ++i)
        r.coeff_[static_cast<size_t>(i)] = coeff_[static_cast<size_t>(i)] * c;
    return r;
}

NuSeries NuSeries::operator*(const Polynomial& p) const {
    NuSeries r(dim_, trunc_);
    for (int i = 0; i <= trunc_; ++i)
        r.coeff_[static_cast<size_t>(i)] = coeff_[static_cast<size_t>(i)] * p;
    return r;
}

NuSeries NuSeries::shifted(int k) const {
    if (k < 0)
        throw DimensionError("negative nu shift");
    NuSeries r(dim_, trunc_);
    for (int i = 0; i + k <= trunc_; ++i)
        r.coeff_[static_cast<size_t>(i + k)] = coeff_[static_cast<size_t>(i)];
    return r;
}

NuSeries NuSeries::truncated(int m) const {
    if (m > trunc_)
        throw DimensionError("truncated() cannot raise the truncation");
    NuSeries r(dim_, m);
    for (int i = 0; i <= m; ++i)
        r.coeff_[static_cast<size_t>(i)] = coeff_[static_cast<size_t>(i)];
    return r;
}

NuSeries NuSeries::extended(int m) const {
    if (m < trunc_)
        throw DimensionError("extended() cannot lower the truncation");
    NuSeries r(dim_, m);
    for (int i = 0; i <= trunc_; ++i)
        r.coeff_[static_cast<size_t>(i)] = coeff_[static_cast<size_t>(i)];
    return r;
}

NuSeries NuSeries::derivative(int var) const {
    NuSeries r(dim_, trunc_);
    for (int i = 0; i <= trunc_; ++i)
        r.coeff_[static_cast<size_t>(i)] = coeff_[static_cast<size_t>(i)].derivative(var);
    return r;
}

NuSeries NuSeries::inverse() const {
    const Polynomial& lead = coeff_[0];
    if (!lead.is_constant() || lead.is_zero())
        throw DomainError("series inverse needs a nonzero constant nu^0 coefficient");
    const Rational c_inv = lead.constant_term().inverse();
    NuSeries inv(dim_, trunc_);
    inv.coeff_[0] = Polynomial::constant(dim_, c_inv);
    for (int k = 1; k <= trunc_; ++k) {
        Polynomial acc(dim_);
        for (int j = 0; j < k; ++j)
            acc += inv.coeff_[static_cast<size_t>(j)] * coeff_[static_cast<size_t>(k - j)];
        inv.coeff_[static_cast<size_t>(k)] = -acc * c_inv;
    }
    return inv;
}

NuSeries NuSeries::log_unit() const {
    const Polynomial& lead = coeff_[0];
    if (!lead.is_constant() || lead.is_zero())
        throw DomainError("series logarithm needs a nonzero constant nu^0 coefficient");
    const Rational c_inv = lead.constant_term().inverse();
    NuSeries u = *this * c_inv;
    u -= NuSeries::one(dim_, trunc_); // u = f/c - 1, vanishes at nu^0
    NuSeries result(dim_, trunc_);
    NuSeries power = u;
    for (int k = 1; k <= trunc_; ++k) {
        const Rational sign(k % 2 == 1 ? 1 : -1);
        result += power * (sign / Rational(k));
        if (k < trunc_)
            power = power * u;
    }
    return result;
}

std::string NuSeries::str() const {
    std::string out;
    bool first = true;
    for (int r = 0; r <= trunc_; ++r) {
        const Polynomial& p = coeff_[static_cast<size_t>(r)];
        if (p.is_zero())
            continue;
        if (!first)
            out += " + ";
        first = false;
        if (r == 0) {
            out += p.str();
        } else {
            out += "nu";
            if (r > 1)
                out += "^" + std::to_string(r);
            out += "*(" + p.str() + ")";
        }
    }
    return first ? "0" : out;
}

} // namespace fsg
