#include "fsg/rng.hpp"

namespace fsg {

uint64_t Rng::next() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t bound) {
    return next() % bound;
}

long long Rng::range(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo + 1)));
}

Rational Rng::coefficient() {
    long long num = range(1, 3);
    if (below(2) == 0)
        num = -num;
    const long long den = below(3) == 0 ? 2 : 1;
    return Rational(BigInt(num), BigInt(den));
}

Polynomial Rng::polynomial(int dim, int max_degree, int terms) {
    Polynomial p(dim);
    for (int t = 0; t < terms; ++t) {
        Exponents e(static_cast<size_t>(dim), 0);
        int budget = static_cast<int>(below(static_cast<uint64_t>(max_degree) + 1));
        while (budget > 0) {
            ++e[below(static_cast<uint64_t>(dim))];
            --budget;
        }
        p.add_term(e, coefficient());
    }
    return p;
}

FormalDiffOp Rng::natural_op(int dim, int trunc, int coeff_degree) {
    FormalDiffOp a(dim, trunc);
    for (int r = 0; r <= trunc; ++r) {
        DiffOp lv(dim);
        const int terms = 1 + static_cast<int>(below(2));
        for (int t = 0; t < terms; ++t) {
            Exponents alpha(static_cast<size_t>(dim), 0);
            int ord = static_cast<int>(below(static_cast<uint64_t>(r) + 1));
            while (ord > 0) {
                ++alpha[below(static_cast<uint64_t>(dim))];
                --ord;
            }
            const Polynomial c = polynomial(dim, coeff_degree, 2);
            if (!c.is_zero())
                lv.add_term(alpha, c);
        }
        a.set_level(r, std::move(lv));
    }
    return a;
}

FormalDiffOp Rng::flow_generator(int dim, int trunc, int coeff_degree) {
    FormalDiffOp x = natural_op(dim, trunc, coeff_degree);
    x.set_level(0, DiffOp(dim));
    if (trunc >= 1)
        x.set_level(1, DiffOp(dim));
    return x;
}

PhaseFunction Rng::phase_function(int n, int xi_trunc, int max_xi_degree, int coeff_degree) {
    PhaseFunction f(n, xi_trunc);
    const int top = std::min(max_xi_degree, xi_trunc);
    for (int r = 0; r <= top; ++r) {
        Polynomial comp(2 * n);
        const int terms = 1 + static_cast<int>(below(2));
        for (int t = 0; t < terms; ++t) {
            Exponents e(static_cast<size_t>(2 * n), 0);
            // xi part: exactly r, spread over the fiber slots
            for (int k = 0; k < r; ++k)
                ++e[static_cast<size_t>(n) + below(static_cast<uint64_t>(n))];
            // base part
            int budget = static_cast<int>(below(static_cast<uint64_t>(coeff_degree) + 1));
            while (budget > 0) {
                ++e[below(static_cast<uint64_t>(n))];
                --budget;
            }
            comp.add_term(e, coefficient());
        }
        f.set_component(r, std::move(comp));
    }
    return f;
}

} // namespace fsg
