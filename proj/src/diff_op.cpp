#include "fsg/diff_op.hpp"

#include <algorithm>

namespace fsg {

DiffOp::DiffOp(int dim) : dim_(dim) {
    if (dim < 1)
        throw DimensionError("operator dimension must be positive");
}

DiffOp DiffOp::identity(int dim) {
    return multiplication(Polynomial::constant(dim, Rational(1)));
}

DiffOp DiffOp::multiplication(const Polynomial& a) {
    DiffOp op(a.dimension());
    op.add_term(Exponents(static_cast<size_t>(a.dimension()), 0), a);
    return op;
}

DiffOp DiffOp::partial(int dim, int var) {
    if (var < 0 || var >= dim)
        throw DimensionError("derivative index out of range");
    Exponents alpha(static_cast<size_t>(dim), 0);
    alpha[static_cast<size_t>(var)] = 1;
    DiffOp op(dim);
    op.add_term(alpha, Polynomial::constant(dim, Rational(1)));
    return op;
}

DiffOp DiffOp::term(const Polynomial& a, const Exponents& alpha) {
    DiffOp op(a.dimension());
    op.add_term(alpha, a);
    return op;
}

int DiffOp::order() const {
    int r = -1;
    for (const auto& [alpha, a] : terms_)
        r = std::max(r, static_cast<int>(total_order(alpha)));
    return r;
}

void DiffOp::add_term(const Exponents& alpha, const Polynomial& a) {
    if (a.is_zero())
        return;
    if (static_cast<int>(alpha.size()) != dim_ || a.dimension() != dim_)
        throw DimensionError("operator term dimension mismatch");
    auto [it, inserted] = terms_.emplace(alpha, a);
    if (!inserted) {
        it->second += a;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial DiffOp::apply(const Polynomial& f) const {
    if (f.dimension() != dim_)
        throw DimensionError("operator/function dimension mismatch");
    Polynomial out(dim_);
    for (const auto& [alpha, a] : terms_)
        out += a * f.derivative(alpha);
    return out;
}

DiffOp DiffOp::compose(const DiffOp& o) const {
    if (o.dim_ != dim_)
        throw DimensionError("operator dimension mismatch");
    DiffOp out(dim_);
    // (a d^alpha)(b d^beta) = sum_{gamma <= alpha} C(alpha,gamma)
    //                         a (d^gamma b) d^{alpha-gamma+beta}
    for (const auto& [alpha, a] : terms_) {
        // Enumerate gamma <= alpha componentwise.
        std::vector<Exponents> gammas;
        Exponents cur(static_cast<size_t>(dim_), 0);
        for (;;) {
            gammas.push_back(cur);
            int i = 0;
            while (i < dim_) {
                if (cur[static_cast<size_t>(i)] < alpha[static_cast<size_t>(i)]) {
                    ++cur[static_cast<size_t>(i)];
                    break;
                }
                cur[static_cast<size_t>(i)] = 0;
                ++i;
            }
            if (i == dim_)
                break;
        }
        for (const auto& [beta, b] : o.terms_) {
            for (const auto& gamma : gammas) {
                const Polynomial db = b.derivative(gamma);
                if (db.is_zero())
                    continue;
                const Rational coef(exponent_binomial(alpha, gamma));
                Exponents idx(static_cast<size_t>(dim_));
                for (int i = 0; i < dim_; ++i)
                    idx[static_cast<size_t>(i)] = alpha[static_cast<size_t>(i)] -
                                                  gamma[static_cast<size_t>(i)] +
                                                  beta[static_cast<size_t>(i)];
                out.add_term(idx, (a * db) * coef);
            }
        }
    }
    return out;
}

DiffOp DiffOp::operator-() const {
    DiffOp out(dim_);
    for (const auto& [alpha, a] : terms_)
        out.terms_.emplace(alpha, -a);
    return out;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (o.dim_ != dim_)
        throw DimensionError("operator dimension mismatch");
    for (const auto& [alpha, a] : o.terms_)
        add_term(alpha, a);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    if (o.dim_ != dim_)
        throw DimensionError("operator dimension mismatch");
    for (const auto& [alpha, a] : o.terms_)
        add_term(alpha, -a);
    return *this;
}

DiffOp DiffOp::operator*(const Rational& c) const {
    DiffOp out(dim_);
    if (c.is_zero())
        return out;
    for (const auto& [alpha, a] : terms_)
        out.terms_.emplace(alpha, a * c);
    return out;
}

Polynomial DiffOp::principal_symbol(int r) const {
    if (order() > r)
        throw DomainError("principal symbol requested below the operator order");
    Polynomial sym(2 * dim_);
    for (const auto& [alpha, a] : terms_) {
        if (static_cast<int>(total_order(alpha)) != r)
            continue;
        for (const auto& [e, c] : a.terms()) {
            Exponents e2(static_cast<size_t>(2 * dim_), 0);
            for (int i = 0; i < dim_; ++i) {
                e2[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
                e2[static_cast<size_t>(dim_ + i)] = alpha[static_cast<size_t>(i)];
            }
            sym.add_term(e2, c);
        }
    }
    return sym;
}

std::string DiffOp::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [alpha, a] : terms_) {
        if (!first)
            out += " + ";
        first = false;
        out += "(" + a.str() + ")";
        for (int i = 0; i < dim_; ++i) {
            const unsigned k = alpha[static_cast<size_t>(i)];
            if (k == 0)
                continue;
            out += "*d" + std::to_string(i + 1);
            if (k > 1)
                out += "^" + std::to_string(k);
        }
    }
    return out;
}

FormalDiffOp::FormalDiffOp(int dim, int trunc) : dim_(dim), trunc_(trunc) {
    if (trunc < 0)
        throw DimensionError("operator truncation must be non-negative");
    level_.assign(static_cast<size_t>(trunc) + 1, DiffOp(dim));
}

FormalDiffOp FormalDiffOp::identity(int dim, int trunc) {
    FormalDiffOp a(dim, trunc);
    a.level_[0] = DiffOp::identity(dim);
    return a;
}

FormalDiffOp FormalDiffOp::multiplication(const NuSeries& f) {
    FormalDiffOp a(f.dimension(), f.truncation());
    for (int r = 0; r <= f.truncation(); ++r)
        a.level_[static_cast<size_t>(r)] = DiffOp::multiplication(f.at(r));
    return a;
}

FormalDiffOp FormalDiffOp::multiplication(const Polynomial& p, int trunc) {
    return multiplication(NuSeries::from_polynomial(p, trunc));
}

FormalDiffOp FormalDiffOp::from_level(DiffOp a, int level, int trunc) {
    FormalDiffOp out(a.dimension(), trunc);
    if (level < 0 || level > trunc)
        throw DimensionError("nu level out of range");
    out.level_[static_cast<size_t>(level)] = std::move(a);
    return out;
}

const DiffOp& FormalDiffOp::level(int r) const {
    if (r < 0 || r > trunc_)
        throw DimensionError("nu level out of range");
    return level_[static_cast<size_t>(r)];
}

void FormalDiffOp::set_level(int r, DiffOp a) {
    if (r < 0 || r > trunc_)
        throw DimensionError("nu level out of range");
    if (a.dimension() != dim_)
        throw DimensionError("operator dimension mismatch");
    level_[static_cast<size_t>(r)] = std::move(a);
}

bool FormalDiffOp::is_zero() const {
    for (const auto& a : level_)
        if (!a.is_zero())
            return false;
    return true;
}

bool FormalDiffOp::is_identity() const {
    if (!(level_[0] == DiffOp::identity(dim_)))
        return false;
    for (int r = 1; r <= trunc_; ++r)
        if (!level_[static_cast<size_t>(r)].is_zero())
            return false;
    return true;
}

NuSeries FormalDiffOp::apply(const NuSeries& f) const {
    if (f.dimension() != dim_ || f.truncation() != trunc_)
        throw DimensionError("operator/series dimension or truncation mismatch");
    NuSeries out(dim_, trunc_);
    for (int r = 0; r <= trunc_; ++r) {
        if (level_[static_cast<size_t>(r)].is_zero())
            continue;
        NuSeries contrib(dim_, trunc_);
        for (int s = 0; r + s <= trunc_; ++s) {
            Polynomial p = level_[static_cast<size_t>(r)].apply(f.at(s));
            contrib += NuSeries::from_polynomial(std::move(p), trunc_).shifted(r + s);
        }
        out += contrib;
    }
    return out;
}

NuSeries FormalDiffOp::apply(const Polynomial& f) const {
    return apply(NuSeries::from_polynomial(f, trunc_));
}

FormalDiffOp FormalDiffOp::compose(const FormalDiffOp& o) const {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw DimensionError("operator dimension or truncation mismatch");
    FormalDiffOp out(dim_, trunc_);
    for (int a = 0; a <= trunc_; ++a) {
        if (level_[static_cast<size_t>(a)].is_zero())
            continue;
        for (int b = 0; a + b <= trunc_; ++b) {
            if (o.level_[static_cast<size_t>(b)].is_zero())
                continue;
            out.level_[static_cast<size_t>(a + b)] +=
                level_[static_cast<size_t>(a)].compose(o.level_[static_cast<size_t>(b)]);
        }
    }
    return out;
}

FormalDiffOp FormalDiffOp::operator-() const {
    FormalDiffOp out(dim_, trunc_);
    for (int r = 0; r <= trunc_; ++r)
        out.level_[static_cast<size_t>(r)] = -level_[static_cast<size_t>(r)];
    return out;
}

FormalDiffOp& FormalDiffOp::operator+=(const FormalDiffOp& o) {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw DimensionError("operator dimension or truncation mismatch");
    for (int r = 0; r <= trunc_; ++r)
        level_[static_cast<size_t>(r)] += o.level_[static_cast<size_t>(r)];
    return *this;
}

FormalDiffOp& FormalDiffOp::operator-=(const FormalDiffOp& o) {
    if (o.dim_ != dim_ || o.trunc_ != trunc_)
        throw DimensionError("operator dimension or truncation mismatch");
    for (int r = 0; r <= trunc_; ++r)
        level_[static_cast<size_t>(r)] -= o.level_[static_cast<size_t>(r)];
    return *this;
}

FormalDiffOp FormalDiffOp::operator*(const Rational& c) const {
    FormalDiffOp out(dim_, trunc_);
    for (int r = 0; r <= trunc_; ++r)
        out.level_[static_cast<size_t>(r)] = level_[static_cast<size_t>(r)] * c;
    return out;
}

FormalDiffOp FormalDiffOp::shifted(int k) const {
    if (k < 0)
        throw DimensionError("negative nu shift");
    FormalDiffOp out(dim_, trunc_);
    for (int r = 0; r + k <= trunc_; ++r)
        out.level_[static_cast<size_t>(r + k)] = level_[static_cast<size_t>(r)];
    return out;
}

FormalDiffOp FormalDiffOp::truncated(int m) const {
    if (m > trunc_)
        throw DimensionError("truncated() cannot raise the truncation");
    FormalDiffOp out(dim_, m);
    for (int r = 0; r <= m; ++r)
        out.level_[static_cast<size_t>(r)] = level_[static_cast<size_t>(r)];
    return out;
}

FormalDiffOp FormalDiffOp::extended(int m) const {
    if (m < trunc_)
        throw DimensionError("extended() cannot lower the truncation");
    FormalDiffOp out(dim_, m);
    for (int r = 0; r <= trunc_; ++r)
        out.level_[static_cast<size_t>(r)] = level_[static_cast<size_t>(r)];
    return out;
}

std::string FormalDiffOp::str() const {
    std::string out;
    bool first = true;
    for (int r = 0; r <= trunc_; ++r) {
        const DiffOp& a = level_[static_cast<size_t>(r)];
        if (a.is_zero())
            continue;
        if (!first)
            out += " + ";
        first = false;
        if (r == 0) {
            out += a.str();
        } else {
            out += "nu";
            if (r > 1)
                out += "^" + std::to_string(r);
            out += "*[" + a.str() + "]";
        }
    }
    return first ? "0" : out;
}

FormalDiffOp commutator(const FormalDiffOp& a, const FormalDiffOp& b) {
    return a.compose(b) - b.compose(a);
}

FormalDiffOp commutator_over_nu(const FormalDiffOp& a, const FormalDiffOp& b) {
    const FormalDiffOp c = commutator(a, b);
    if (!c.level(0).is_zero())
        throw DomainError("commutator has a nonzero nu^0 part; division by nu is inexact");
    FormalDiffOp out(a.dimension(), a.truncation());
    for (int r = 1; r <= a.truncation(); ++r)
        out.set_level(r - 1, c.level(r));
    return out; // level N stays zero: the nu^N coefficient is unknowable here
}

std::optional<int> natural_violation(const FormalDiffOp& a) {
    for (int r = 0; r <= a.truncation(); ++r)
        if (a.level(r).order() > r)
            return r;
    return std::nullopt;
}

bool is_natural(const FormalDiffOp& a) {
    return !natural_violation(a).has_value();
}

PhaseFunction sigma(const FormalDiffOp& a) {
    if (auto bad = natural_violation(a))
        throw DomainError("sigma-symbol of a non-natural operator (violation at nu^" +
                          std::to_string(*bad) + ")");
    PhaseFunction out(a.dimension(), a.truncation());
    for (int r = 0; r <= a.truncation(); ++r)
        out.set_component(r, a.level(r).principal_symbol(r));
    return out;
}

Polynomial LogDensity::phi_level(int r) const {
    if (r > phi_.truncation())
        return Polynomial(phi_.dimension());
    return phi_.at(r);
}

namespace {

// Conjugated derivative D_i = d_i + (d_i phi) as a formal operator.
FormalDiffOp conjugated_partial(const LogDensity& rho, int var, int trunc) {
    const int dim = rho.dimension();
    FormalDiffOp d(dim, trunc);
    d.set_level(0, DiffOp::partial(dim, var) +
                       DiffOp::multiplication(rho.phi_level(0).derivative(var)));
    for (int r = 1; r <= trunc; ++r) {
        Polynomial dphi = rho.phi_level(r).derivative(var);
        if (!dphi.is_zero())
            d.set_level(r, DiffOp::multiplication(dphi));
    }
    return d;
}

} // namespace

FormalDiffOp transpose(const FormalDiffOp& a, const LogDensity& rho) {
    if (rho.dimension() != a.dimension())
        throw DimensionError("operator/density dimension mismatch");
    const int dim = a.dimension();
    const int trunc = a.truncation();

    std::vector<FormalDiffOp> d;
    d.reserve(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i)
        d.push_back(conjugated_partial(rho, i, trunc));

    // D^alpha, memoized across terms. The D_i commute (mixed second
    // derivatives of phi are equal), so one fixed order is enough.
    std::map<Exponents, FormalDiffOp> powers;
    powers.emplace(Exponents(static_cast<size_t>(dim), 0), FormalDiffOp::identity(dim, trunc));
    auto d_power = [&](const Exponents& alpha) -> const FormalDiffOp& {
        auto self = [&](const Exponents& idx, auto& rec) -> const FormalDiffOp& {
            auto it = powers.find(idx);
            if (it != powers.end())
                return it->second;
            Exponents prev = idx;
            int var = 0;
            for (int i = 0; i < dim; ++i)
                if (idx[static_cast<size_t>(i)] > 0) {
                    var = i;
                    --prev[static_cast<size_t>(i)];
                    break;
                }
            FormalDiffOp val = d[static_cast<size_t>(var)].compose(rec(prev, rec));
            return powers.emplace(idx, std::move(val)).first->second;
        };
        return self(alpha, self);
    };

    FormalDiffOp out(dim, trunc);
    for (int r = 0; r <= trunc; ++r) {
        for (const auto& [alpha, coeff] : a.level(r).terms()) {
            const FormalDiffOp& dpow = d_power(alpha);
            FormalDiffOp piece = dpow.compose(FormalDiffOp::multiplication(coeff, trunc));
            if (total_order(alpha) % 2 == 1)
                piece = -piece;
            out += piece.shifted(r);
        }
    }
    return out;
}

FormalDiffOp op_log(const FormalDiffOp& a) {
    const int dim = a.dimension();
    const int trunc = a.truncation();
    if (!(a.level(0) == DiffOp::identity(dim)))
        throw DomainError("operator logarithm requires A = 1 mod nu");
    const FormalDiffOp u = a - FormalDiffOp::identity(dim, trunc);
    FormalDiffOp log_a(dim, trunc);
    FormalDiffOp power = u;
    for (int k = 1; k <= trunc; ++k) {
        const Rational coeff(Rational(k % 2 == 1 ? 1 : -1) / Rational(k));
        log_a += power * coeff;
        if (k < trunc)
            power = power.compose(u);
    }
    // X = nu.log(A), one nu-order above the input so exp(X/nu) recovers A.
    FormalDiffOp x(dim, trunc + 1);
    for (int r = 0; r <= trunc; ++r)
        x.set_level(r + 1, log_a.level(r));
    return x;
}

FormalDiffOp op_exp(const FormalDiffOp& x) {
    const int dim = x.dimension();
    const int trunc = x.truncation();
    if (!x.level(0).is_zero())
        throw DomainError("operator exponential requires X = 0 mod nu");
    if (trunc < 1)
        throw DimensionError("operator exponential needs truncation >= 1");
    // Y = X/nu at one order less.
    FormalDiffOp y(dim, trunc - 1);
    for (int r = 1; r <= trunc; ++r)
        y.set_level(r - 1, x.level(r));

    FormalDiffOp result = FormalDiffOp::identity(dim, trunc - 1);
    FormalDiffOp term = FormalDiffOp::identity(dim, trunc - 1);
    // X = 0 mod nu^2 terminates within trunc steps; the cap only guards the
    // relaxed mode, whose nu^1 part must be nilpotent as an operator.
    const int max_steps = std::max(64, trunc + 1);
    for (int k = 1; k <= max_steps; ++k) {
        term = term.compose(y) * (Rational(1) / Rational(k));
        if (term.is_zero())
            return result;
        result += term;
    }
    throw DomainError("operator exponential did not terminate (nu^1 part is not nilpotent)");
}

FormalDiffOp op_invert(const FormalDiffOp& a) {
    const int dim = a.dimension();
    const int trunc = a.truncation();
    const DiffOp& lead = a.level(0);
    Rational c(0);
    if (lead.terms().size() == 1) {
        const auto& [alpha, coeff] = *lead.terms().begin();
        if (total_order(alpha) == 0 && coeff.is_constant())
            c = coeff.constant_term();
    }
    if (c.is_zero())
        throw DomainError("operator inverse requires a nonzero constant nu^0 level");
    const Rational c_inv = c.inverse();
    const FormalDiffOp b = a * c_inv - FormalDiffOp::identity(dim, trunc); // 0 mod nu
    FormalDiffOp result = FormalDiffOp::identity(dim, trunc);
    FormalDiffOp power = FormalDiffOp::identity(dim, trunc);
    for (int k = 1; k <= trunc; ++k) {
        power = power.compose(b);
        if (power.is_zero())
            break;
        result += power * Rational(k % 2 == 1 ? -1 : 1);
    }
    return result * c_inv;
}

} // namespace fsg
