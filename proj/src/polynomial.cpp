#include "fsg/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace fsg {

unsigned total_order(const Exponents& e) {
    unsigned s = 0;
    for (unsigned v : e)
        s += v;
    return s;
}

BigInt exponent_binomial(const Exponents& a, const Exponents& b) {
    BigInt r = 1;
    for (size_t i = 0; i < a.size(); ++i) {
        r *= binomial(a[i], b[i]);
        if (r.is_zero())
            break;
    }
    return r;
}

Polynomial::Polynomial(int dim) : dim_(dim) {
    if (dim < 1)
        throw DimensionError("polynomial dimension must be positive");
}

Polynomial Polynomial::constant(int dim, const Rational& c) {
    Polynomial p(dim);
    p.add_term(Exponents(dim, 0), c);
    return p;
}

Polynomial Polynomial::variable(int dim, int index) {
    if (index < 0 || index >= dim)
        throw DimensionError("variable index out of range");
    Exponents e(dim, 0);
    e[index] = 1;
    Polynomial p(dim);
    p.add_term(e, Rational(1));
    return p;
}

Polynomial Polynomial::monomial(int dim, Exponents e, const Rational& c) {
    if (static_cast<int>(e.size()) != dim)
        throw DimensionError("exponent vector length differs from dimension");
    Polynomial p(dim);
    p.add_term(e, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_order(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const {
    return coefficient(Exponents(dim_, 0));
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, static_cast<int>(total_order(e)));
    return d;
}

Rational Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero())
        return;
    if (static_cast<int>(e.size()) != dim_)
        throw DimensionError("exponent vector length differs from dimension");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(dim_);
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.dim_ != dim_)
        throw DimensionError("polynomial dimension mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.dim_ != dim_)
        throw DimensionError("polynomial dimension mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (o.dim_ != dim_)
        throw DimensionError("polynomial dimension mismatch");
    Polynomial r(dim_);
    Exponents e(dim_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < dim_; ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(dim_);
    if (c.is_zero())
        return r;
    for (const auto& [e, k] : terms_)
        r.terms_.emplace(e, k * c);
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= dim_)
        throw DimensionError("derivative index out of range");
    Polynomial r(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<size_t>(var)] == 0)
            continue;
        Exponents d = e;
        const unsigned k = d[static_cast<size_t>(var)]--;
        r.add_term(d, c * Rational(static_cast<long long>(k)));
    }
    return r;
}

Polynomial Polynomial::derivative(const Exponents& alpha) const {
    if (static_cast<int>(alpha.size()) != dim_)
        throw DimensionError("derivative multi-index length differs from dimension");
    Polynomial r = *this;
    for (int i = 0; i < dim_ && !r.is_zero(); ++i)
        for (unsigned k = 0; k < alpha[static_cast<size_t>(i)]; ++k)
            r = r.derivative(i);
    return r;
}

std::string Polynomial::str() const {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i)
        names.push_back("x" + std::to_string(i + 1));
    return str(names);
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (static_cast<int>(names.size()) != dim_)
        throw DimensionError("variable name list length differs from dimension");
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a.sign() < 0 ? " - " : " + ";
            if (a.sign() < 0)
                a = -a;
        }
        first = false;
        std::string mono;
        for (int i = 0; i < dim_; ++i) {
            const unsigned k = e[static_cast<size_t>(i)];
            if (k == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += names[static_cast<size_t>(i)];
            if (k > 1)
                mono += "^" + std::to_string(k);
        }
        if (mono.empty()) {
            out += a.str();
        } else {
            if (!a.is_one())
                out += a.str() + "*";
            out += mono;
        }
    }
    return out;
}

namespace {

struct PolyLexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip_ws();
        std::string out;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            out += text[pos++];
        if (out.empty())
            throw ParseError("expected digits at position " + std::to_string(pos) + " in polynomial '" +
                             std::string(text) + "'");
        return out;
    }
};

// factor := rational | var ('^' uint)?   with var = x<k>, 1-based
Polynomial parse_factor(PolyLexer& lx, int dim) {
    const char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = lx.digits();
        if (lx.accept('/')) {
            std::string den = lx.digits();
            return Polynomial::constant(dim, Rational(BigInt(num), BigInt(den)));
        }
        return Polynomial::constant(dim, Rational(BigInt(num)));
    }
    if (c == 'x') {
        ++lx.pos;
        const std::string idx = lx.digits();
        const long k = std::stol(idx);
        if (k < 1 || k > dim)
            throw ParseError("variable x" + idx + " outside dimension " + std::to_string(dim));
        unsigned power = 1;
        if (lx.accept('^'))
            power = static_cast<unsigned>(std::stoul(lx.digits()));
        Exponents e(static_cast<size_t>(dim), 0);
        e[static_cast<size_t>(k - 1)] = power;
        return Polynomial::monomial(dim, e, Rational(1));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' in polynomial '" + std::string(lx.text) +
                     "'");
}

Polynomial parse_term(PolyLexer& lx, int dim) {
    Polynomial p = parse_factor(lx, dim);
    while (lx.accept('*'))
        p = p * parse_factor(lx, dim);
    return p;
}

} // namespace

Polynomial parse_polynomial(std::string_view text, int dim) {
    PolyLexer lx{text};
    Polynomial result(dim);
    if (lx.eof())
        throw ParseError("empty polynomial expression");
    bool negate = false;
    if (lx.accept('-'))
        negate = true;
    else
        lx.accept('+');
    for (;;) {
        Polynomial t = parse_term(lx, dim);
        result += negate ? -t : t;
        if (lx.eof())
            break;
        if (lx.accept('+'))
            negate = false;
        else if (lx.accept('-'))
            negate = true;
        else
            throw ParseError("expected '+' or '-' at position " + std::to_string(lx.pos) + " in polynomial '" +
                             std::string(text) + "'");
    }
    return result;
}

namespace {

void enumerate(int dim, int degree, int slot, Exponents& cur, std::vector<Exponents>& out) {
    if (slot == dim) {
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= degree; ++k) {
        cur[static_cast<size_t>(slot)] = static_cast<unsigned>(k);
        enumerate(dim, degree - k, slot + 1, cur, out);
    }
    cur[static_cast<size_t>(slot)] = 0;
}

} // namespace

std::vector<Exponents> monomials_up_to(int dim, int degree) {
    std::vector<Exponents> out;
    Exponents cur(static_cast<size_t>(dim), 0);
    for (int d = 0; d <= degree; ++d) {
        std::vector<Exponents> layer;
        enumerate(dim, d, 0, cur, layer);
        for (auto& e : layer)
            if (static_cast<int>(total_order(e)) == d)
                out.push_back(std::move(e));
    }
    return out;
}

} // namespace fsg
