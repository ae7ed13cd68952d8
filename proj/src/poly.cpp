#include "cycov/poly.hpp"

#include <algorithm>
#include <cctype>

#include "cycov/errors.hpp"

namespace cycov {

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial::Monomial(int n, std::initializer_list<int> exps) {
    if (n < 1 || n > kMaxVars) throw DimensionMismatch("nvars out of range 1..12");
    nvars = (std::uint8_t)n;
    int i = 0;
    for (int x : exps) {
        if (i >= n) throw DimensionMismatch("too many exponents");
        e[(std::size_t)i++] = (std::uint8_t)x;
    }
}

Monomial Monomial::unit(int nvars) {
    Monomial m;
    m.nvars = (std::uint8_t)nvars;
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.nvars = nvars;
    for (int i = 0; i < nvars; ++i) r.e[i] = (std::uint8_t)(e[i] + o.e[i]);
    return r;
}

std::string Monomial::to_text() const {
    std::string s;
    for (int i = 0; i < nvars; ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += 'x';
        s += std::to_string(i);
        if (e[i] > 1) {
            s += '^';
            s += std::to_string((int)e[i]);
        }
    }
    if (s.empty()) s = "1";
    return s;
}

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
    std::vector<Monomial> out;
    Monomial m = Monomial::unit(nvars);
    // depth-first over exponent splits, largest-x0 first = descending grlex
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == nvars - 1) {
            m.e[var] = (std::uint8_t)remaining;
            out.push_back(m);
            m.e[var] = 0;
            return;
        }
        for (int d = remaining; d >= 0; --d) {
            m.e[var] = (std::uint8_t)d;
            self(self, var + 1, remaining - d);
        }
        m.e[var] = 0;
    };
    rec(rec, 0, degree);
    return out;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Polynomial::Polynomial(FieldRef field, int nvars, int degree)
    : field_(field), nvars_(nvars), degree_(degree) {
    if (nvars < 1 || nvars > Monomial::kMaxVars)
        throw DimensionMismatch("nvars out of range 1..12");
    if (degree < 0 || degree > 255) throw DimensionMismatch("degree out of range");
}

Polynomial Polynomial::from_terms(FieldRef field, int nvars, int degree, TermMap terms) {
    Polynomial p(field, nvars, degree);
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero()) {
            it = terms.erase(it);
            continue;
        }
        if ((int)it->first.degree() != degree)
            throw NotHomogeneous("monomial " + it->first.to_text() + " has degree " +
                                 std::to_string(it->first.degree()) + ", expected " +
                                 std::to_string(degree));
        if (it->first.nvars != nvars) throw DimensionMismatch("monomial nvars mismatch");
        ++it;
    }
    p.terms_ = std::move(terms);
    return p;
}

FieldElement Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_->zero() : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading monomial");
    return terms_.begin()->first;
}

FieldElement Polynomial::leading_coeff() const {
    if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading coefficient");
    return terms_.begin()->second;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;
    int nvars;
    FieldRef field;

    void skip_ws() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw SyntaxError(what + " at position " + std::to_string(pos), pos);
    }

    std::uint64_t read_uint() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit((unsigned char)text[pos]))
            fail("expected digit");
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) {
            v = v * 10 + (std::uint64_t)(text[pos] - '0');
            if (v > (1ull << 62)) fail("integer too large");
            ++pos;
        }
        return v;
    }

    // integer, integer/integer (over Q), or (c0,c1,...) over extension fields
    FieldElement read_coeff(bool negative) {
        if (peek('(')) {
            if (field->kind() != FieldKind::Extension)
                fail("vector coefficient outside an extension field");
            ++pos;
            std::string vec;
            vec += std::to_string(read_uint());
            while (accept(',')) {
                vec += ',';
                vec += std::to_string(read_uint());
            }
            if (!accept(')')) fail("expected ')'");
            FieldElement c = field->from_string(vec);
            return negative ? -c : c;
        }
        std::uint64_t num = read_uint();
        if (peek('/')) {
            if (field->kind() != FieldKind::Rational)
                fail("fractional coefficient outside Q");
            ++pos;
            std::uint64_t den = read_uint();
            if (den == 0) fail("zero denominator");
            mpq_class q((long)num, (long)den);
            q.canonicalize();
            if (negative) q = -q;
            return field->from_mpq(q);
        }
        FieldElement c = field->from_int((std::int64_t)num);
        return negative ? -c : c;
    }

    // 'x' index ['^' exponent]
    void read_factor(Monomial& m) {
        skip_ws();
        if (pos >= text.size() || text[pos] != 'x') fail("expected variable");
        ++pos;
        std::uint64_t idx = read_uint();
        if (idx >= (std::uint64_t)nvars)
            throw VariableOutOfRange("variable x" + std::to_string(idx) +
                                     " out of range for nvars=" + std::to_string(nvars));
        std::uint64_t exp = 1;
        if (accept('^')) exp = read_uint();
        if (exp > 255) fail("exponent too large");
        if ((unsigned)m.e[idx] + exp > 255) fail("exponent too large");
        m.e[idx] = (std::uint8_t)(m.e[idx] + exp);
    }

    std::pair<Monomial, FieldElement> read_term(bool negative) {
        Monomial m = Monomial::unit(nvars);
        FieldElement c = field->one();
        skip_ws();
        bool saw_factor = false;
        if (pos < text.size() &&
            (std::isdigit((unsigned char)text[pos]) || text[pos] == '(')) {
            c = read_coeff(negative);
            negative = false;
            if (!accept('*')) return {m, c};  // bare constant
        } else if (negative) {
            c = -c;
        }
        for (;;) {
            read_factor(m);
            saw_factor = true;
            if (!accept('*')) break;
        }
        (void)saw_factor;
        return {m, c};
    }

    std::vector<std::pair<Monomial, FieldElement>> run() {
        std::vector<std::pair<Monomial, FieldElement>> raw;
        skip_ws();
        if (pos >= text.size()) fail("empty input");
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        raw.push_back(read_term(neg));
        for (;;) {
            skip_ws();
            if (pos >= text.size()) break;
            if (accept('+')) raw.push_back(read_term(false));
            else if (accept('-')) raw.push_back(read_term(true));
            else fail("expected '+' or '-'");
        }
        return raw;
    }
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, int nvars, FieldRef field) {
    if (nvars < 1 || nvars > Monomial::kMaxVars)
        throw DimensionMismatch("nvars out of range 1..12");
    Parser parser{text, 0, nvars, field};
    auto raw = parser.run();

    TermMap terms;
    for (auto& [m, c] : raw) {
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) it->second = it->second + c;
    }
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero()) it = terms.erase(it);
        else ++it;
    }
    if (terms.empty()) return Polynomial(field, nvars, 0);

    unsigned degree = terms.begin()->first.degree();
    for (const auto& [m, c] : terms) {
        if (m.degree() != degree)
            throw NotHomogeneous("not homogeneous: " + terms.begin()->first.to_text() +
                                 " (degree " + std::to_string(degree) + ") vs " + m.to_text() +
                                 " (degree " + std::to_string(m.degree()) + ")");
    }
    return from_terms(field, nvars, (int)degree, std::move(terms));
}

std::string Polynomial::to_text() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string cs = c.to_string();
        if (field_->kind() == FieldKind::Extension) {
            bool in_prime_subfield = true;
            for (std::size_t i = 1; i < c.ext_coeffs().size(); ++i)
                if (c.ext_coeffs()[i] != 0) in_prime_subfield = false;
            cs = in_prime_subfield ? std::to_string(c.ext_coeffs()[0]) : "(" + cs + ")";
        }
        bool negative = !cs.empty() && cs[0] == '-';  // rationals only
        if (first) {
            if (negative) s += '-', cs = cs.substr(1);
        } else {
            s += negative ? "-" : "+";
            if (negative) cs = cs.substr(1);
        }
        first = false;
        bool constant = m.degree() == 0;
        if (cs == "1" && !constant) {
            s += m.to_text();
        } else {
            s += cs;
            if (!constant) {
                s += '*';
                s += m.to_text();
            }
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation / calculus
// ---------------------------------------------------------------------------

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
    if ((int)point.size() != nvars_) throw DimensionMismatch("point length != nvars");
    // cache powers per variable up to the maximum occurring exponent
    std::array<std::uint8_t, Monomial::kMaxVars> maxe{};
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < nvars_; ++i) maxe[i] = std::max(maxe[i], m.e[i]);
    std::vector<std::vector<FieldElement>> pw(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        pw[i].reserve(maxe[i] + 1u);
        pw[i].push_back(field_->one());
        for (unsigned t = 1; t <= maxe[i]; ++t) pw[i].push_back(pw[i].back() * point[i]);
    }
    FieldElement acc = field_->zero();
    for (const auto& [m, c] : terms_) {
        FieldElement t = c;
        for (int i = 0; i < nvars_; ++i)
            if (m.e[i]) t = t * pw[i][m.e[i]];
        acc = acc + t;
    }
    return acc;
}

Polynomial Polynomial::partial_derivative(int var) const {
    if (var < 0 || var >= nvars_) throw VariableOutOfRange("variable index out of range");
    TermMap out;
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        FieldElement nc = c * field_->from_int(m.e[var]);
        if (nc.is_zero()) continue;  // char-p drop
        Monomial nm = m;
        nm.e[var] -= 1;
        out.emplace(nm, nc);
    }
    int ndeg = degree_ > 0 ? degree_ - 1 : 0;
    if (out.empty()) return Polynomial(field_, nvars_, 0);
    return from_terms(field_, nvars_, ndeg, std::move(out));
}

// ---------------------------------------------------------------------------
// Ring operations
// ---------------------------------------------------------------------------

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_) throw DimensionMismatch("polynomial mismatch");
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (degree_ != o.degree_) throw DimensionMismatch("adding different degrees");
    TermMap out = terms_;
    for (const auto& [m, c] : o.terms_) {
        auto [it, fresh] = out.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    if (out.empty()) return Polynomial(field_, nvars_, 0);
    return from_terms(field_, nvars_, degree_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    TermMap out;
    for (const auto& [m, c] : terms_) out.emplace(m, -c);
    if (out.empty()) return Polynomial(field_, nvars_, 0);
    return from_terms(field_, nvars_, degree_, std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_) throw DimensionMismatch("polynomial mismatch");
    if (is_zero() || o.is_zero()) return Polynomial(field_, nvars_, 0);
    TermMap out;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            FieldElement c = c1 * c2;
            if (c.is_zero()) continue;
            Monomial m = m1 * m2;
            auto [it, fresh] = out.emplace(m, c);
            if (!fresh) {
                it->second = it->second + c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    if (out.empty()) return Polynomial(field_, nvars_, 0);
    return from_terms(field_, nvars_, degree_ + o.degree_, std::move(out));
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
    if (c.is_zero()) return Polynomial(field_, nvars_, 0);
    TermMap out;
    for (const auto& [m, tc] : terms_) out.emplace(m, tc * c);
    if (out.empty()) return Polynomial(field_, nvars_, 0);
    return from_terms(field_, nvars_, degree_, std::move(out));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (field_ != o.field_ || nvars_ != o.nvars_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    auto it1 = terms_.begin();
    auto it2 = o.terms_.begin();
    for (; it1 != terms_.end(); ++it1, ++it2) {
        if (!(it1->first == it2->first) || it1->second != it2->second) return false;
    }
    return true;
}

Polynomial Polynomial::canonical_scalar() const {
    if (terms_.empty()) throw ZeroPolynomial("cannot scalar-canonicalize the zero polynomial");
    FieldElement inv = leading_coeff().inverse();
    return scaled(inv);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

// powers[e] = base^e, extended on demand
const Polynomial& power_of(std::vector<Polynomial>& powers, const Polynomial& base,
                           unsigned e, FieldRef field, int nvars) {
    if (powers.empty()) {
        Polynomial one(field, nvars, 0);
        Polynomial::TermMap t;
        t.emplace(Monomial::unit(nvars), field->one());
        powers.push_back(Polynomial::from_terms(field, nvars, 0, std::move(t)));
    }
    while (powers.size() <= e) powers.push_back(powers.back() * base);
    return powers[e];
}

}  // namespace

Polynomial Polynomial::apply_linear(const Matrix& mat) const {
    if (mat.size() != nvars_) throw DimensionMismatch("matrix size != nvars");
    if (mat.field() != field_) throw DimensionMismatch("matrix over a different field");
    if (mat.det().is_zero()) throw SingularMatrix("substitution matrix is singular");
    if (is_zero()) return *this;

    // row i of the matrix becomes the linear form substituted for x_i
    std::vector<Polynomial> rows;
    rows.reserve(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        TermMap t;
        for (int j = 0; j < nvars_; ++j) {
            if (mat.at(i, j).is_zero()) continue;
            Monomial m = Monomial::unit(nvars_);
            m.e[j] = 1;
            t.emplace(m, mat.at(i, j));
        }
        rows.push_back(from_terms(field_, nvars_, 1, std::move(t)));
    }

    std::vector<std::vector<Polynomial>> pw(nvars_);
    Polynomial acc(field_, nvars_, degree_);
    bool acc_started = false;
    for (const auto& [m, c] : terms_) {
        Polynomial prod(field_, nvars_, 0);
        TermMap ct;
        ct.emplace(Monomial::unit(nvars_), c);
        prod = from_terms(field_, nvars_, 0, std::move(ct));
        for (int i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) continue;
            prod = prod * power_of(pw[i], rows[i], m.e[i], field_, nvars_);
        }
        if (!acc_started) {
            acc = prod;
            acc_started = true;
        } else {
            acc = acc + prod;
        }
    }
    if (acc.is_zero()) return Polynomial(field_, nvars_, degree_);
    return acc;
}

Polynomial Polynomial::shear_substitute(int var, const Polynomial& l) const {
    if (var < 0 || var >= nvars_) throw VariableOutOfRange("variable index out of range");
    if (l.field() != field_ || l.nvars() != nvars_)
        throw DimensionMismatch("shear form over a different space");
    if (!l.is_zero() && l.degree() != 1) throw NotLinear("shear form must be linear");
    if (l.involves(var)) throw SelfReference("shear form must not involve the sheared variable");
    if (l.is_zero() || is_zero()) return *this;

    // binomial expansion per term: x^e -> sum C(e,t) x^(e-t) L^t
    unsigned maxe = 0;
    for (const auto& [m, c] : terms_) maxe = std::max(maxe, (unsigned)m.e[var]);
    std::vector<std::vector<mpz_class>> pascal(maxe + 1);
    std::vector<std::vector<FieldElement>> binom(maxe + 1);
    for (unsigned n = 0; n <= maxe; ++n) {
        pascal[n].resize(n + 1);
        pascal[n][0] = pascal[n][n] = 1;
        for (unsigned t = 1; t < n; ++t) pascal[n][t] = pascal[n - 1][t - 1] + pascal[n - 1][t];
        for (unsigned t = 0; t <= n; ++t)
            binom[n].push_back(field_->from_mpq(mpq_class(pascal[n][t])));
    }
    std::vector<Polynomial> lp;

    TermMap out;
    auto add_term = [&](const Monomial& m, const FieldElement& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = out.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) out.erase(it);
        }
    };
    for (const auto& [m, c] : terms_) {
        unsigned e = m.e[var];
        if (e == 0) {
            add_term(m, c);
            continue;
        }
        Monomial base = m;
        for (unsigned t = 0; t <= e; ++t) {
            base.e[var] = (std::uint8_t)(e - t);
            FieldElement bc = c * binom[e][t];
            if (bc.is_zero()) continue;
            if (t == 0) {
                add_term(base, bc);
                continue;
            }
            const Polynomial& lt = power_of(lp, l, t, field_, nvars_);
            for (const auto& [lm, lc] : lt.terms()) add_term(base * lm, bc * lc);
        }
    }
    if (out.empty()) return Polynomial(field_, nvars_, degree_);
    return from_terms(field_, nvars_, degree_, std::move(out));
}

// ---------------------------------------------------------------------------
// Structure helpers
// ---------------------------------------------------------------------------

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
    if (var < 0 || var >= nvars_) throw VariableOutOfRange("variable index out of range");
    std::vector<TermMap> buckets(degree_ + 1);
    for (const auto& [m, c] : terms_) {
        unsigned t = m.e[var];
        Monomial stripped = m;
        stripped.e[var] = 0;
        buckets[t].emplace(stripped, c);
    }
    std::vector<Polynomial> out;
    out.reserve(degree_ + 1u);
    for (int t = 0; t <= degree_; ++t) {
        if (buckets[t].empty()) out.emplace_back(field_, nvars_, degree_ - t);
        else out.push_back(from_terms(field_, nvars_, degree_ - t, std::move(buckets[t])));
    }
    return out;
}

FieldElement Polynomial::constant_value() const {
    if (is_zero()) return field_->zero();
    if (degree_ != 0) throw DimensionMismatch("not a constant polynomial");
    return terms_.begin()->second;
}

bool Polynomial::involves(int var) const {
    for (const auto& [m, c] : terms_)
        if (m.e[var] != 0) return true;
    return false;
}

Polynomial Polynomial::extend_vars(int new_nvars) const {
    if (new_nvars < nvars_) throw DimensionMismatch("extend_vars shrinks the space");
    TermMap out;
    for (const auto& [m, c] : terms_) {
        Monomial nm = m;
        nm.nvars = (std::uint8_t)new_nvars;
        out.emplace(nm, c);
    }
    Polynomial p(field_, new_nvars, degree_);
    p.terms_ = std::move(out);
    return p;
}

Polynomial Polynomial::restrict_vars(int new_nvars) const {
    if (new_nvars > nvars_) throw DimensionMismatch("restrict_vars grows the space");
    if (new_nvars < 1) throw DimensionMismatch("nvars must stay positive");
    TermMap out;
    for (const auto& [m, c] : terms_) {
        for (int i = new_nvars; i < nvars_; ++i)
            if (m.e[i] != 0)
                throw DimensionMismatch("polynomial involves struck variable x" +
                                        std::to_string(i));
        Monomial nm = m;
        nm.nvars = (std::uint8_t)new_nvars;
        out.emplace(nm, c);
    }
    Polynomial p(field_, new_nvars, degree_);
    p.terms_ = std::move(out);
    return p;
}

Polynomial Polynomial::map_coeffs(FieldRef target) const {
    if (target == field_) return *this;
    TermMap out;
    for (const auto& [m, c] : terms_) out.emplace(m, embed(c, target));
    Polynomial p(target, nvars_, degree_);
    p.terms_ = std::move(out);
    return p;
}

Polynomial Polynomial::reduce_mod(FieldRef fp) const {
    if (field_->kind() != FieldKind::Rational || fp->kind() != FieldKind::Prime)
        throw Error("reduce_mod maps Q to a prime field");
    TermMap out;
    for (const auto& [m, c] : terms_) {
        FieldElement r = fp->from_mpq(c.rational_value());
        if (!r.is_zero()) out.emplace(m, r);
    }
    Polynomial p(fp, nvars_, degree_);
    p.terms_ = std::move(out);
    return p;
}

}  // namespace cycov
