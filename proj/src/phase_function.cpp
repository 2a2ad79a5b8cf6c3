#include "fsg/phase_function.hpp"

namespace fsg {

unsigned xi_degree(const Exponents& e, int n) {
    unsigned s = 0;
    for (size_t i = static_cast<size_t>(n); i < e.size(); ++i)
        s += e[i];
    return s;
}

PhaseFunction::PhaseFunction(int n, int xi_trunc) : n_(n), xi_trunc_(xi_trunc) {
    if (n < 1)
        throw DimensionError("phase function base dimension must be positive");
    if (xi_trunc < 0)
        throw DimensionError("xi truncation must be non-negative");
    comp_.assign(static_cast<size_t>(xi_trunc) + 1, Polynomial(2 * n));
}

PhaseFunction PhaseFunction::from_base(const Polynomial& f, int xi_trunc) {
    const int n = f.dimension();
    PhaseFunction F(n, xi_trunc);
    Polynomial lifted(2 * n);
    for (const auto& [e, c] : f.terms()) {
        Exponents e2(static_cast<size_t>(2 * n), 0);
        for (int i = 0; i < n; ++i)
            e2[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
        lifted.add_term(e2, c);
    }
    F.comp_[0] = std::move(lifted);
    return F;
}

PhaseFunction PhaseFunction::from_polynomial(const Polynomial& p, int n, int xi_trunc) {
    if (p.dimension() != 2 * n)
        throw DimensionError("phase polynomial must have 2n variables");
    PhaseFunction F(n, xi_trunc);
    for (const auto& [e, c] : p.terms()) {
        const unsigned d = xi_degree(e, n);
        if (static_cast<int>(d) > xi_trunc)
            continue;
        F.comp_[d].add_term(e, c);
    }
    return F;
}

const Polynomial& PhaseFunction::component(int r) const {
    if (r < 0 || r > xi_trunc_)
        throw DimensionError("xi degree out of range");
    return comp_[static_cast<size_t>(r)];
}

void PhaseFunction::set_component(int r, Polynomial p) {
    if (r < 0 || r > xi_trunc_)
        throw DimensionError("xi degree out of range");
    if (p.dimension() != 2 * n_)
        throw DimensionError("phase component must have 2n variables");
    for (const auto& [e, c] : p.terms())
        if (xi_degree(e, n_) != static_cast<unsigned>(r))
            throw InvariantError("phase component is not xi-homogeneous of its degree");
    comp_[static_cast<size_t>(r)] = std::move(p);
}

bool PhaseFunction::is_zero() const {
    for (const auto& p : comp_)
        if (!p.is_zero())
            return false;
    return true;
}

int PhaseFunction::min_xi_degree() const {
    for (int r = 0; r <= xi_trunc_; ++r)
        if (!comp_[static_cast<size_t>(r)].is_zero())
            return r;
    return xi_trunc_ + 1;
}

PhaseFunction PhaseFunction::operator-() const {
    PhaseFunction r = *this;
    for (auto& p : r.comp_)
        p = -p;
    return r;
}

PhaseFunction& PhaseFunction::operator+=(const PhaseFunction& o) {
    if (o.n_ != n_ || o.xi_trunc_ != xi_trunc_)
        throw DimensionError("phase function dimension/truncation mismatch");
    for (int r = 0; r <= xi_trunc_; ++r)
        comp_[static_cast<size_t>(r)] += o.comp_[static_cast<size_t>(r)];
    return *this;
}

PhaseFunction& PhaseFunction::operator-=(const PhaseFunction& o) {
    if (o.n_ != n_ || o.xi_trunc_ != xi_trunc_)
        throw DimensionError("phase function dimension/truncation mismatch");
    for (int r = 0; r <= xi_trunc_; ++r)
        comp_[static_cast<size_t>(r)] -= o.comp_[static_cast<size_t>(r)];
    return *this;
}

PhaseFunction PhaseFunction::operator*(const PhaseFunction& o) const {
    if (o.n_ != n_ || o.xi_trunc_ != xi_trunc_)
        throw DimensionError("phase function dimension/truncation mismatch");
    PhaseFunction r(n_, xi_trunc_);
    for (int a = 0; a <= xi_trunc_; ++a) {
        if (comp_[static_cast<size_t>(a)].is_zero())
            continue;
        for (int b = 0; a + b <= xi_trunc_; ++b)
            r.comp_[static_cast<size_t>(a + b)] +=
                comp_[static_cast<size_t>(a)] * o.comp_[static_cast<size_t>(b)];
    }
    return r;
}

PhaseFunction PhaseFunction::operator*(const Rational& c) const {
    PhaseFunction r(n_, xi_trunc_);
    for (int i = 0; i <= xi_trunc_; ++i)
        r.comp_[static_cast<size_t>(i)] = comp_[static_cast<size_t>(i)] * c;
    return r;
}

PhaseFunction PhaseFunction::truncated(int d) const {
    PhaseFunction r(n_, std::min(d, xi_trunc_));
    for (int i = 0; i <= r.xi_trunc_; ++i)
        r.comp_[static_cast<size_t>(i)] = comp_[static_cast<size_t>(i)];
    return r;
}

Polynomial PhaseFunction::unit_restriction() const {
    Polynomial f(n_);
    for (const auto& [e, c] : comp_[0].terms()) {
        Exponents base(static_cast<size_t>(n_), 0);
        for (int i = 0; i < n_; ++i)
            base[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
        f.add_term(base, c);
    }
    return f;
}

std::string PhaseFunction::str() const {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(2 * n_));
    for (int i = 0; i < n_; ++i)
        names.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < n_; ++i)
        names.push_back("xi" + std::to_string(i + 1));
    std::string out;
    bool first = true;
    for (int r = 0; r <= xi_trunc_; ++r) {
        const Polynomial& p = comp_[static_cast<size_t>(r)];
        if (p.is_zero())
            continue;
        if (!first)
            out += " + ";
        first = false;
        out += "(" + p.str(names) + ")";
    }
    return first ? "0" : out;
}

} // namespace fsg
