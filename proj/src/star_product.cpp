#include "fsg/star_product.hpp"

#include <algorithm>
#include <functional>

namespace fsg {

PoissonStructure::PoissonStructure(int dim, std::vector<std::vector<Rational>> pi) : dim_(dim) {
    if (dim < 1)
        throw DimensionError("Poisson structure dimension must be positive");
    if (static_cast<int>(pi.size()) != dim)
        throw InvariantError("Poisson matrix must be n x n");
    pi_.resize(static_cast<size_t>(dim) * static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(pi[static_cast<size_t>(i)].size()) != dim)
            throw InvariantError("Poisson matrix must be n x n");
        for (int j = 0; j < dim; ++j)
            pi_[static_cast<size_t>(i * dim + j)] = pi[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (at(i, j) != -at(j, i))
                throw InvariantError("Poisson matrix must be antisymmetric");
}

PoissonStructure PoissonStructure::zero(int dim) {
    return PoissonStructure(dim,
                            std::vector<std::vector<Rational>>(static_cast<size_t>(dim),
                                                               std::vector<Rational>(static_cast<size_t>(dim))));
}

const Rational& PoissonStructure::at(int i, int j) const {
    if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
        throw DimensionError("Poisson index out of range");
    return pi_[static_cast<size_t>(i * dim_ + j)];
}

bool PoissonStructure::is_zero() const {
    return std::all_of(pi_.begin(), pi_.end(), [](const Rational& c) { return c.is_zero(); });
}

Polynomial PoissonStructure::bracket(const Polynomial& f, const Polynomial& g) const {
    if (f.dimension() != dim_ || g.dimension() != dim_)
        throw DimensionError("bracket argument dimension mismatch");
    Polynomial out(dim_);
    for (int i = 0; i < dim_; ++i) {
        const Polynomial di_f = f.derivative(i);
        if (di_f.is_zero())
            continue;
        for (int j = 0; j < dim_; ++j) {
            const Rational& c = at(i, j);
            if (c.is_zero())
                continue;
            out += (di_f * g.derivative(j)) * c;
        }
    }
    return out;
}

Polynomial PoissonStructure::hamiltonian_component(const Polynomial& f, int j) const {
    Polynomial out(dim_);
    for (int k = 0; k < dim_; ++k) {
        const Rational& c = at(k, j);
        if (!c.is_zero())
            out += f.derivative(k) * c;
    }
    return out;
}

BiDiffOp::BiDiffOp(int dim) : dim_(dim) {
    if (dim < 1)
        throw DimensionError("bidifferential operator dimension must be positive");
}

BiDiffOp BiDiffOp::pointwise(int dim) {
    BiDiffOp op(dim);
    const Exponents zero(static_cast<size_t>(dim), 0);
    op.add_term(zero, zero, Polynomial::constant(dim, Rational(1)));
    return op;
}

int BiDiffOp::left_order() const {
    int r = -1;
    for (const auto& [key, c] : terms_)
        r = std::max(r, static_cast<int>(total_order(key.first)));
    return r;
}

int BiDiffOp::right_order() const {
    int r = -1;
    for (const auto& [key, c] : terms_)
        r = std::max(r, static_cast<int>(total_order(key.second)));
    return r;
}

Polynomial BiDiffOp::apply(const Polynomial& f, const Polynomial& g) const {
    if (f.dimension() != dim_ || g.dimension() != dim_)
        throw DimensionError("bidifferential argument dimension mismatch");
    Polynomial out(dim_);
    for (const auto& [key, c] : terms_) {
        const Polynomial df = f.derivative(key.first);
        if (df.is_zero())
            continue;
        const Polynomial dg = g.derivative(key.second);
        if (dg.is_zero())
            continue;
        out += c * df * dg;
    }
    return out;
}

void BiDiffOp::add_term(const Exponents& alpha, const Exponents& beta, const Polynomial& c) {
    if (c.is_zero())
        return;
    if (static_cast<int>(alpha.size()) != dim_ || static_cast<int>(beta.size()) != dim_ ||
        c.dimension() != dim_)
        throw DimensionError("bidifferential term dimension mismatch");
    auto key = std::make_pair(alpha, beta);
    auto [it, inserted] = terms_.emplace(std::move(key), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

BiDiffOp BiDiffOp::operator-() const {
    BiDiffOp out(dim_);
    for (const auto& [key, c] : terms_)
        out.terms_.emplace(key, -c);
    return out;
}

BiDiffOp& BiDiffOp::operator+=(const BiDiffOp& o) {
    if (o.dim_ != dim_)
        throw DimensionError("bidifferential dimension mismatch");
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, c);
    return *this;
}

BiDiffOp& BiDiffOp::operator-=(const BiDiffOp& o) {
    if (o.dim_ != dim_)
        throw DimensionError("bidifferential dimension mismatch");
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, -c);
    return *this;
}

BiDiffOp BiDiffOp::operator*(const Rational& c) const {
    BiDiffOp out(dim_);
    if (c.is_zero())
        return out;
    for (const auto& [key, k] : terms_)
        out.terms_.emplace(key, k * c);
    return out;
}

BiDiffOp BiDiffOp::slots_swapped() const {
    BiDiffOp out(dim_);
    for (const auto& [key, c] : terms_)
        out.add_term(key.second, key.first, c);
    return out;
}

std::string BiDiffOp::str() const {
    if (terms_.empty())
        return "0";
    auto side = [this](const Exponents& e, char tag) {
        std::string out;
        for (int i = 0; i < dim_; ++i) {
            const unsigned k = e[static_cast<size_t>(i)];
            if (k == 0)
                continue;
            out += " d";
            out += tag;
            out += std::to_string(i + 1);
            if (k > 1)
                out += "^" + std::to_string(k);
        }
        return out.empty() ? std::string(" 1") : out;
    };
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
        if (!first)
            out += " + ";
        first = false;
        out += "(" + c.str() + ")" + side(key.first, 'L') + " (x)" + side(key.second, 'R');
    }
    return out;
}

namespace {

void validate_star(const PoissonStructure& pi, const std::vector<BiDiffOp>& levels) {
    const int dim = pi.dimension();
    if (levels.empty())
        throw InvariantError("star product needs at least the nu^0 level");
    for (const auto& lv : levels)
        if (lv.dimension() != dim)
            throw InvariantError("star level dimension differs from the Poisson structure");

    if (!(levels[0] == BiDiffOp::pointwise(dim)))
        throw InvariantError("star product violates C_0(f,g) = f g");

    const Exponents zero(static_cast<size_t>(dim), 0);
    for (size_t r = 1; r < levels.size(); ++r)
        for (const auto& [key, c] : levels[r].terms())
            if (key.first == zero || key.second == zero)
                throw InvariantError("star product violates the unit axiom at nu^" + std::to_string(r));

    if (levels.size() >= 2) {
        // C_1(f,g) - C_1(g,f) must equal the Poisson bracket as a table.
        BiDiffOp antisym = levels[1] - levels[1].slots_swapped();
        BiDiffOp expected(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const Rational& c = pi.at(i, j);
                if (c.is_zero())
                    continue;
                Exponents a(static_cast<size_t>(dim), 0), b(static_cast<size_t>(dim), 0);
                a[static_cast<size_t>(i)] = 1;
                b[static_cast<size_t>(j)] = 1;
                expected.add_term(a, b, Polynomial::constant(dim, c));
            }
        if (!(antisym == expected))
            throw InvariantError("star product violates C_1(f,g) - C_1(g,f) = {f,g}");
    }
}

} // namespace

StarProduct::StarProduct(PoissonStructure pi, std::vector<BiDiffOp> levels)
    : pi_(std::move(pi)), level_(std::move(levels)) {
    validate_star(pi_, level_);
}

const BiDiffOp& StarProduct::level(int r) const {
    if (r < 0 || r > truncation())
        throw DimensionError("nu level out of range");
    return level_[static_cast<size_t>(r)];
}

NuSeries StarProduct::apply(const NuSeries& f, const NuSeries& g) const {
    const int trunc = truncation();
    if (f.dimension() != dimension() || g.dimension() != dimension())
        throw DimensionError("star product argument dimension mismatch");
    if (f.truncation() != trunc || g.truncation() != trunc)
        throw DimensionError("star product argument truncation mismatch");
    NuSeries out(dimension(), trunc);
    for (int r = 0; r <= trunc; ++r) {
        if (level_[static_cast<size_t>(r)].is_zero())
            continue;
        for (int s = 0; r + s <= trunc; ++s)
            for (int t = 0; r + s + t <= trunc; ++t) {
                Polynomial p = level_[static_cast<size_t>(r)].apply(f.at(s), g.at(t));
                out += NuSeries::from_polynomial(std::move(p), trunc).shifted(r + s + t);
            }
    }
    return out;
}

NuSeries StarProduct::apply(const Polynomial& f, const Polynomial& g) const {
    const int trunc = truncation();
    return apply(NuSeries::from_polynomial(f, trunc), NuSeries::from_polynomial(g, trunc));
}

FormalDiffOp StarProduct::left_multiplication(const NuSeries& f) const {
    const int trunc = truncation();
    if (f.dimension() != dimension() || f.truncation() != trunc)
        throw DimensionError("star product argument mismatch");
    FormalDiffOp out(dimension(), trunc);
    for (int r = 0; r <= trunc; ++r)
        for (int s = 0; r + s <= trunc; ++s) {
            DiffOp piece(dimension());
            for (const auto& [key, c] : level_[static_cast<size_t>(r)].terms()) {
                const Polynomial df = f.at(s).derivative(key.first);
                if (!df.is_zero())
                    piece.add_term(key.second, c * df);
            }
            if (!piece.is_zero())
                out += FormalDiffOp::from_level(std::move(piece), r + s, trunc);
        }
    return out;
}

FormalDiffOp StarProduct::left_multiplication(const Polynomial& f) const {
    return left_multiplication(NuSeries::from_polynomial(f, truncation()));
}

FormalDiffOp StarProduct::right_multiplication(const NuSeries& f) const {
    const int trunc = truncation();
    if (f.dimension() != dimension() || f.truncation() != trunc)
        throw DimensionError("star product argument mismatch");
    FormalDiffOp out(dimension(), trunc);
    for (int r = 0; r <= trunc; ++r)
        for (int s = 0; r + s <= trunc; ++s) {
            DiffOp piece(dimension());
            for (const auto& [key, c] : level_[static_cast<size_t>(r)].terms()) {
                const Polynomial dg = f.at(s).derivative(key.second);
                if (!dg.is_zero())
                    piece.add_term(key.first, c * dg);
            }
            if (!piece.is_zero())
                out += FormalDiffOp::from_level(std::move(piece), r + s, trunc);
        }
    return out;
}

FormalDiffOp StarProduct::right_multiplication(const Polynomial& f) const {
    return right_multiplication(NuSeries::from_polynomial(f, truncation()));
}

StarProduct moyal_star(const PoissonStructure& pi, int trunc) {
    const int dim = pi.dimension();
    if (trunc < 0)
        throw DimensionError("truncation must be non-negative");
    std::vector<BiDiffOp> levels;
    levels.reserve(static_cast<size_t>(trunc) + 1);
    levels.push_back(BiDiffOp::pointwise(dim));

    // T = Pi^{ij} d_i (x) d_j; C_r = T^r / (2^r r!) under the convolution
    // (a1,b1)*(a2,b2) -> (a1+a2, b1+b2) of constant-coefficient tables.
    BiDiffOp seed(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const Rational& c = pi.at(i, j);
            if (c.is_zero())
                continue;
            Exponents a(static_cast<size_t>(dim), 0), b(static_cast<size_t>(dim), 0);
            a[static_cast<size_t>(i)] = 1;
            b[static_cast<size_t>(j)] = 1;
            seed.add_term(a, b, Polynomial::constant(dim, c));
        }

    BiDiffOp power = seed;
    BigInt scale = 2; // 2^r r!
    for (int r = 1; r <= trunc; ++r) {
        if (r > 1) {
            BiDiffOp next(dim);
            for (const auto& [k1, c1] : power.terms())
                for (const auto& [k2, c2] : seed.terms()) {
                    Exponents a(static_cast<size_t>(dim)), b(static_cast<size_t>(dim));
                    for (int i = 0; i < dim; ++i) {
                        a[static_cast<size_t>(i)] = k1.first[static_cast<size_t>(i)] + k2.first[static_cast<size_t>(i)];
                        b[static_cast<size_t>(i)] = k1.second[static_cast<size_t>(i)] + k2.second[static_cast<size_t>(i)];
                    }
                    next.add_term(a, b, c1 * c2);
                }
            power = std::move(next);
            scale *= 2 * r;
        }
        levels.push_back(power * Rational(BigInt(1), scale));
    }
    return StarProduct(pi, std::move(levels));
}

namespace {

// Enumerates all componentwise splittings gamma = g1 + g2 + g3.
void for_each_split3(const Exponents& gamma,
                     const std::function<void(const Exponents&, const Exponents&, const Exponents&, const BigInt&)>& fn) {
    const size_t n = gamma.size();
    Exponents g1(n, 0), g2(n, 0), g3(n, 0);
    // Recursive descent over components; multinomial factor accumulated on the fly.
    std::function<void(size_t, BigInt)> rec = [&](size_t i, BigInt acc) {
        if (i == n) {
            fn(g1, g2, g3, acc);
            return;
        }
        const unsigned total = gamma[i];
        for (unsigned a = 0; a <= total; ++a)
            for (unsigned b = 0; a + b <= total; ++b) {
                const unsigned c = total - a - b;
                g1[i] = a;
                g2[i] = b;
                g3[i] = c;
                // total! / (a! b! c!)
                BigInt m = factorial(total) / (factorial(a) * factorial(b) * factorial(c));
                rec(i + 1, acc * m);
            }
        g1[i] = g2[i] = g3[i] = 0;
    };
    rec(0, BigInt(1));
}

using BiLevels = std::vector<BiDiffOp>;

// T(f,g) -> T(Bf, g) or T(f, Bg): composes an operator into one slot.
BiDiffOp slot_compose_single(const BiDiffOp& table, const DiffOp& op, bool left_slot) {
    const int dim = table.dimension();
    BiDiffOp out(dim);
    for (const auto& [key, c] : table.terms()) {
        const Exponents& slot = left_slot ? key.first : key.second;
        const Exponents& other = left_slot ? key.second : key.first;
        for (const auto& [gamma, b] : op.terms()) {
            // d^slot (b d^gamma f) = sum_{delta <= slot} C(slot,delta)
            //                        (d^delta b) d^{slot-delta+gamma} f
            Exponents delta(static_cast<size_t>(dim), 0);
            for (;;) {
                const Polynomial db = b.derivative(delta);
                if (!db.is_zero()) {
                    const Rational coef(exponent_binomial(slot, delta));
                    Exponents idx(static_cast<size_t>(dim));
                    for (int i = 0; i < dim; ++i)
                        idx[static_cast<size_t>(i)] = slot[static_cast<size_t>(i)] -
                                                      delta[static_cast<size_t>(i)] +
                                                      gamma[static_cast<size_t>(i)];
                    const Polynomial coeff = (c * db) * coef;
                    if (left_slot)
                        out.add_term(idx, other, coeff);
                    else
                        out.add_term(other, idx, coeff);
                }
                int i = 0;
                while (i < dim) {
                    if (delta[static_cast<size_t>(i)] < slot[static_cast<size_t>(i)]) {
                        ++delta[static_cast<size_t>(i)];
                        break;
                    }
                    delta[static_cast<size_t>(i)] = 0;
                    ++i;
                }
                if (i == dim)
                    break;
            }
        }
    }
    return out;
}

// B applied after the table: b d^gamma (c . d^alpha f . d^beta g).
BiDiffOp outer_compose_single(const DiffOp& op, const BiDiffOp& table) {
    const int dim = table.dimension();
    BiDiffOp out(dim);
    for (const auto& [gamma, b] : op.terms()) {
        for (const auto& [key, c] : table.terms()) {
            for_each_split3(gamma, [&](const Exponents& g1, const Exponents& g2, const Exponents& g3,
                                       const BigInt& mult) {
                const Polynomial dc = c.derivative(g1);
                if (dc.is_zero())
                    return;
                Exponents a(static_cast<size_t>(dim)), bb(static_cast<size_t>(dim));
                for (int i = 0; i < dim; ++i) {
                    a[static_cast<size_t>(i)] = key.first[static_cast<size_t>(i)] + g2[static_cast<size_t>(i)];
                    bb[static_cast<size_t>(i)] = key.second[static_cast<size_t>(i)] + g3[static_cast<size_t>(i)];
                }
                out.add_term(a, bb, (b * dc) * Rational(mult));
            });
        }
    }
    return out;
}

BiLevels slot_compose(const BiLevels& table, const FormalDiffOp& op, bool left_slot) {
    const int trunc = static_cast<int>(table.size()) - 1;
    BiLevels out(table.size(), BiDiffOp(op.dimension()));
    for (int s = 0; s <= trunc; ++s) {
        if (table[static_cast<size_t>(s)].is_zero())
            continue;
        for (int t = 0; s + t <= trunc; ++t) {
            if (op.level(t).is_zero())
                continue;
            out[static_cast<size_t>(s + t)] +=
                slot_compose_single(table[static_cast<size_t>(s)], op.level(t), left_slot);
        }
    }
    return out;
}

BiLevels outer_compose(const FormalDiffOp& op, const BiLevels& table) {
    const int trunc = static_cast<int>(table.size()) - 1;
    BiLevels out(table.size(), BiDiffOp(op.dimension()));
    for (int s = 0; s <= trunc; ++s) {
        if (op.level(s).is_zero())
            continue;
        for (int t = 0; s + t <= trunc; ++t) {
            if (table[static_cast<size_t>(t)].is_zero())
                continue;
            out[static_cast<size_t>(s + t)] +=
                outer_compose_single(op.level(s), table[static_cast<size_t>(t)]);
        }
    }
    return out;
}

} // namespace

StarProduct conjugated_star(const StarProduct& star, const FormalDiffOp& b) {
    const int dim = star.dimension();
    const int trunc = star.truncation();
    if (b.dimension() != dim || b.truncation() != trunc)
        throw DimensionError("equivalence operator dimension or truncation mismatch");
    if (!(b.level(0) == DiffOp::identity(dim)))
        throw DomainError("equivalence operator must be 1 mod nu");
    if (!(b.apply(NuSeries::one(dim, trunc)) == NuSeries::one(dim, trunc)))
        throw DomainError("equivalence operator must fix the unit (B1 = 1)");
    const FormalDiffOp b_inv = op_invert(b);

    BiLevels table;
    table.reserve(static_cast<size_t>(trunc) + 1);
    for (int r = 0; r <= trunc; ++r)
        table.push_back(star.level(r));

    table = slot_compose(table, b_inv, /*left_slot=*/true);
    table = slot_compose(table, b_inv, /*left_slot=*/false);
    table = outer_compose(b, table);
    return StarProduct(star.poisson(), std::move(table));
}

StarProduct gauge_twist(const StarProduct& star, const FormalDiffOp& x) {
    const int dim = star.dimension();
    const int trunc = star.truncation();
    if (x.dimension() != dim)
        throw DimensionError("gauge twist dimension mismatch");
    if (auto bad = natural_violation(x))
        throw DomainError("gauge twist operator is not natural (violation at nu^" +
                          std::to_string(*bad) + ")");
    if (!x.level(0).is_zero() || (x.truncation() >= 1 && !x.level(1).is_zero()))
        throw DomainError("gauge twist operator must vanish mod nu^2");
    // The supplied X is exact data; consume it one order above the target
    // truncation so exp lands exactly on it.
    FormalDiffOp padded = x.truncation() >= trunc + 1 ? x.truncated(trunc + 1) : x.extended(trunc + 1);
    const FormalDiffOp b = op_exp(padded);
    if (!(b.apply(NuSeries::one(dim, trunc)) == NuSeries::one(dim, trunc)))
        throw DomainError("gauge twist operator must annihilate constants (B1 = 1)");
    return conjugated_star(star, b);
}

std::string AssocReport::witness() const {
    auto mono = [](const Exponents& e) {
        Polynomial p = Polynomial::monomial(static_cast<int>(e.size()), e, Rational(1));
        return p.str();
    };
    return "f=" + mono(f) + ", g=" + mono(g) + ", h=" + mono(h) + ", associator=" + residual.str();
}

AssocReport assoc_verify(const StarProduct& star, int degree) {
    const int dim = star.dimension();
    const int trunc = star.truncation();
    const auto basis = monomials_up_to(dim, degree);

    std::vector<NuSeries> monos;
    monos.reserve(basis.size());
    for (const auto& e : basis)
        monos.push_back(NuSeries::from_polynomial(Polynomial::monomial(dim, e, Rational(1)), trunc));

    // Cache pairwise products; each triple then needs two more applications.
    std::vector<std::vector<NuSeries>> pair(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        pair[i].reserve(basis.size());
        for (size_t j = 0; j < basis.size(); ++j)
            pair[i].push_back(star.apply(monos[i], monos[j]));
    }

    AssocReport report;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j)
            for (size_t k = 0; k < basis.size(); ++k) {
                NuSeries left = star.apply(pair[i][j], monos[k]);
                left -= star.apply(monos[i], pair[j][k]);
                if (!left.is_zero()) {
                    report.ok = false;
                    report.f = basis[i];
                    report.g = basis[j];
                    report.h = basis[k];
                    report.residual = std::move(left);
                    return report;
                }
            }
    return report;
}

std::string NaturalReport::witness() const {
    return std::string("C_") + std::to_string(level) + " has " + (left ? "left" : "right") +
           " order " + std::to_string(order) + " > " + std::to_string(level);
}

NaturalReport natural_verify(const StarProduct& star) {
    NaturalReport report;
    for (int r = 0; r <= star.truncation(); ++r) {
        const int lo = star.level(r).left_order();
        const int ro = star.level(r).right_order();
        if (lo > r) {
            report.ok = false;
            report.level = r;
            report.left = true;
            report.order = lo;
            return report;
        }
        if (ro > r) {
            report.ok = false;
            report.level = r;
            report.left = false;
            report.order = ro;
            return report;
        }
    }
    return report;
}

} // namespace fsg
