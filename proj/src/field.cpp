#include "cycov/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cycov {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }
u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    // extended euclid; a != 0 mod p
    std::int64_t t = 0, newt = 1;
    std::int64_t r = (std::int64_t)p, newr = (std::int64_t)(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - q * newt);
        std::tie(r, newr) = std::make_pair(newr, r - q * newr);
    }
    if (r != 1) throw Error("element not invertible");
    if (t < 0) t += (std::int64_t)p;
    return (u64)t;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ull, 3ull}) {
        if (n % d == 0) return n == d;
    }
    for (u64 d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// ---- dense univariate polynomials over F_p, used for modulus selection ----

using UPoly = std::vector<u64>;  // coefficients, ascending degree, trimmed

void utrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    UPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
    utrim(c);
    return c;
}

UPoly umod(UPoly a, const UPoly& m, u64 p) {
    utrim(a);
    u64 lead_inv = invmod(m.back(), p);
    while (a.size() >= m.size()) {
        u64 q = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = submod(a[shift + i], mulmod(q, m[i], p), p);
        utrim(a);
        if (a.empty()) break;
    }
    return a;
}

UPoly upowmod(UPoly base, mpz_class e, const UPoly& m, u64 p) {
    UPoly r = {1};
    base = umod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = umod(umul(r, base, p), m, p);
        base = umod(umul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

UPoly ugcd(UPoly a, UPoly b, u64 p) {
    utrim(a);
    utrim(b);
    while (!b.empty()) {
        UPoly r = umod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 li = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, li, p);
    }
    return a;
}

// Rabin irreducibility test for monic f of degree k over F_p.
bool is_irreducible(const UPoly& f, u64 p) {
    unsigned k = (unsigned)f.size() - 1;
    UPoly x = {0, 1};
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    UPoly xq = upowmod(x, pk, f, p);  // x^(p^k) mod f
    // must equal x
    UPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = submod(diff[1], 1, p);
    utrim(diff);
    if (!diff.empty()) return false;
    // for each prime divisor q of k: gcd(x^(p^(k/q)) - x, f) == 1
    unsigned rem = k;
    for (unsigned q = 2; q <= rem; ++q) {
        if (rem % q != 0) continue;
        while (rem % q == 0) rem /= q;
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, k / q);
        UPoly xe = upowmod(x, e, f, p);
        if (xe.size() < 2) xe.resize(2, 0);
        xe[1] = submod(xe[1], 1, p);
        utrim(xe);
        UPoly g = ugcd(f, xe, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree k over F_p,
// scanning coefficient vectors (c_0, ..., c_{k-1}) in ascending lex order.
std::vector<u64> smallest_irreducible(u64 p, unsigned k) {
    std::vector<u64> c(k, 0);
    for (;;) {
        UPoly f(c.begin(), c.end());
        f.push_back(1);
        if (is_irreducible(f, p)) return {f.begin(), f.end()};
        // odometer, last coordinate fastest so (c_0,...) ascends in lex order
        int i = (int)k - 1;
        while (i >= 0) {
            if (++c[i] < p) break;
            c[i] = 0;
            --i;
        }
        if (i < 0) throw Error("no irreducible polynomial found");  // unreachable
    }
}

std::mutex g_registry_mutex;

}  // namespace

// ---------------------------------------------------------------------------
// Field construction / interning
// ---------------------------------------------------------------------------

FieldRef Field::prime(u64 p) {
    if (p >= (1ull << 31)) throw Error("prime too large (desk-scale bound p < 2^31)");
    if (!is_prime_u64(p)) throw Error("not a prime: " + std::to_string(p));
    static std::map<u64, Field> registry;
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = registry.find(p);
    if (it == registry.end()) {
        Field f;
        f.kind_ = FieldKind::Prime;
        f.p_ = p;
        f.k_ = 1;
        it = registry.emplace(p, std::move(f)).first;
    }
    return &it->second;
}

FieldRef Field::extension(u64 p, unsigned k) {
    if (k < 1 || k > 8) throw Error("extension degree must be in 1..8");
    if (p >= (1ull << 31)) throw Error("prime too large (desk-scale bound p < 2^31)");
    if (!is_prime_u64(p)) throw Error("not a prime: " + std::to_string(p));
    static std::map<std::pair<u64, unsigned>, Field> registry;
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto key = std::make_pair(p, k);
    auto it = registry.find(key);
    if (it == registry.end()) {
        Field f;
        f.kind_ = FieldKind::Extension;
        f.p_ = p;
        f.k_ = k;
        f.modulus_ = smallest_irreducible(p, k);
        f.red_row_.resize(k);
        for (unsigned i = 0; i < k; ++i) f.red_row_[i] = submod(0, f.modulus_[i], p);
        it = registry.emplace(key, std::move(f)).first;
    }
    return &it->second;
}

FieldRef Field::rationals() {
    static Field f = [] {
        Field q;
        q.kind_ = FieldKind::Rational;
        return q;
    }();
    return &f;
}

FieldRef Field::parse_spec(std::string_view text) {
    if (text == "Q") return rationals();
    auto starts = [&](std::string_view pre) {
        return text.size() > pre.size() && text.substr(0, pre.size()) == pre;
    };
    try {
        if (starts("p:")) {
            return prime(std::stoull(std::string(text.substr(2))));
        }
        if (starts("ext:")) {
            std::string rest(text.substr(4));
            auto caret = rest.find('^');
            if (caret == std::string::npos) throw Error("expected ext:p^k");
            u64 p = std::stoull(rest.substr(0, caret));
            unsigned k = (unsigned)std::stoul(rest.substr(caret + 1));
            return extension(p, k);
        }
    } catch (const std::invalid_argument&) {
        throw Error("bad field spec: " + std::string(text));
    } catch (const std::out_of_range&) {
        throw Error("bad field spec: " + std::string(text));
    }
    throw Error("bad field spec (use p:7, ext:7^2, or Q): " + std::string(text));
}

mpz_class Field::order() const {
    if (!finite()) throw InfiniteField("rationals have no finite order");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, k_);
    return r;
}

std::string Field::spec_text() const {
    switch (kind_) {
        case FieldKind::Prime: return "p:" + std::to_string(p_);
        case FieldKind::Extension:
            return "ext:" + std::to_string(p_) + "^" + std::to_string(k_);
        case FieldKind::Rational: return "Q";
    }
    return "";
}

// ---------------------------------------------------------------------------
// Element construction
// ---------------------------------------------------------------------------

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(std::int64_t v) const {
    switch (kind_) {
        case FieldKind::Prime: {
            std::int64_t m = v % (std::int64_t)p_;
            if (m < 0) m += (std::int64_t)p_;
            return FieldElement(this, (u64)m);
        }
        case FieldKind::Extension: {
            std::int64_t m = v % (std::int64_t)p_;
            if (m < 0) m += (std::int64_t)p_;
            std::vector<u64> c(k_, 0);
            c[0] = (u64)m;
            return FieldElement(this, std::move(c));
        }
        case FieldKind::Rational: return FieldElement(this, mpq_class(v));
    }
    throw Error("unreachable");
}

FieldElement Field::from_mpq(const mpq_class& q) const {
    if (kind_ == FieldKind::Rational) {
        mpq_class c = q;
        c.canonicalize();
        return FieldElement(this, std::move(c));
    }
    // reduce numerator * denominator^{-1} into the finite field
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz((unsigned long)p_);
    mpz_class nm = num % pz, dm = den % pz;
    if (nm < 0) nm += pz;
    if (dm < 0) dm += pz;
    u64 n = nm.get_ui(), d = dm.get_ui();
    if (d == 0) throw Error("denominator not invertible mod " + std::to_string(p_));
    u64 v = mulmod(n, invmod(d, p_), p_);
    return from_int((std::int64_t)v);
}

FieldElement Field::from_string(std::string_view s) const {
    switch (kind_) {
        case FieldKind::Rational: {
            mpq_class q{std::string(s)};
            q.canonicalize();
            return FieldElement(this, std::move(q));
        }
        case FieldKind::Prime: {
            mpq_class q{std::string(s)};
            return from_mpq(q);
        }
        case FieldKind::Extension: {
            // comma-separated coefficient vector c0,c1,...  (short vectors padded)
            std::vector<u64> c(k_, 0);
            std::size_t pos = 0;
            unsigned idx = 0;
            std::string str(s);
            while (pos < str.size()) {
                auto comma = str.find(',', pos);
                std::string part = str.substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos);
                if (idx >= k_) throw Error("too many coefficients for " + spec_text());
                std::int64_t v = std::stoll(part);
                std::int64_t m = v % (std::int64_t)p_;
                if (m < 0) m += (std::int64_t)p_;
                c[idx++] = (u64)m;
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return FieldElement(this, std::move(c));
        }
    }
    throw Error("unreachable");
}

FieldElement Field::element_at(u64 index) const {
    switch (kind_) {
        case FieldKind::Prime:
            if (index >= p_) throw IndexOutOfRange("element index out of range");
            return FieldElement(this, index);
        case FieldKind::Extension: {
            std::vector<u64> c(k_);
            // c_0 is the most significant digit so index order == lex order
            for (int i = (int)k_ - 1; i >= 0; --i) {
                c[(unsigned)i] = index % p_;
                index /= p_;
            }
            if (index != 0) throw IndexOutOfRange("element index out of range");
            return FieldElement(this, std::move(c));
        }
        case FieldKind::Rational:
            throw InfiniteField("cannot enumerate the rationals");
    }
    throw Error("unreachable");
}

u64 Field::element_index(const FieldElement& e) const {
    switch (kind_) {
        case FieldKind::Prime: return e.prime_value();
        case FieldKind::Extension: {
            u64 idx = 0;
            for (unsigned i = 0; i < k_; ++i) idx = idx * p_ + e.ext_coeffs()[i];
            return idx;
        }
        case FieldKind::Rational: throw InfiniteField("cannot index the rationals");
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Element arithmetic
// ---------------------------------------------------------------------------

namespace {
void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field()) throw Error("elements of different fields");
}
}  // namespace

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    check_same_field(a, b);
    switch (kind_) {
        case FieldKind::Prime:
            return FieldElement(this, addmod(a.prime_value(), b.prime_value(), p_));
        case FieldKind::Extension: {
            std::vector<u64> c(k_);
            for (unsigned i = 0; i < k_; ++i)
                c[i] = addmod(a.ext_coeffs()[i], b.ext_coeffs()[i], p_);
            return FieldElement(this, std::move(c));
        }
        case FieldKind::Rational: {
            mpq_class r = a.rational_value() + b.rational_value();
            return FieldElement(this, std::move(r));
        }
    }
    throw Error("unreachable");
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    check_same_field(a, b);
    switch (kind_) {
        case FieldKind::Prime:
            return FieldElement(this, submod(a.prime_value(), b.prime_value(), p_));
        case FieldKind::Extension: {
            std::vector<u64> c(k_);
            for (unsigned i = 0; i < k_; ++i)
                c[i] = submod(a.ext_coeffs()[i], b.ext_coeffs()[i], p_);
            return FieldElement(this, std::move(c));
        }
        case FieldKind::Rational: {
            mpq_class r = a.rational_value() - b.rational_value();
            return FieldElement(this, std::move(r));
        }
    }
    throw Error("unreachable");
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    check_same_field(a, b);
    switch (kind_) {
        case FieldKind::Prime:
            return FieldElement(this, mulmod(a.prime_value(), b.prime_value(), p_));
        case FieldKind::Extension: {
            // convolution then reduction by t^k = red_row_
            std::vector<u64> c(2 * k_ - 1, 0);
            const auto& x = a.ext_coeffs();
            const auto& y = b.ext_coeffs();
            for (unsigned i = 0; i < k_; ++i) {
                if (x[i] == 0) continue;
                for (unsigned j = 0; j < k_; ++j)
                    c[i + j] = addmod(c[i + j], mulmod(x[i], y[j], p_), p_);
            }
            for (unsigned i = 2 * k_ - 2; i >= k_ && i < c.size(); --i) {
                u64 hi = c[i];
                if (hi != 0) {
                    c[i] = 0;
                    for (unsigned j = 0; j < k_; ++j)
                        c[i - k_ + j] = addmod(c[i - k_ + j], mulmod(hi, red_row_[j], p_), p_);
                }
                if (i == k_) break;
            }
            c.resize(k_);
            return FieldElement(this, std::move(c));
        }
        case FieldKind::Rational: {
            mpq_class r = a.rational_value() * b.rational_value();
            return FieldElement(this, std::move(r));
        }
    }
    throw Error("unreachable");
}

FieldElement Field::neg(const FieldElement& a) const {
    switch (kind_) {
        case FieldKind::Prime: return FieldElement(this, submod(0, a.prime_value(), p_));
        case FieldKind::Extension: {
            std::vector<u64> c(k_);
            for (unsigned i = 0; i < k_; ++i) c[i] = submod(0, a.ext_coeffs()[i], p_);
            return FieldElement(this, std::move(c));
        }
        case FieldKind::Rational: return FieldElement(this, mpq_class(-a.rational_value()));
    }
    throw Error("unreachable");
}

FieldElement Field::inv(const FieldElement& a) const {
    if (a.is_zero()) throw Error("division by zero");
    switch (kind_) {
        case FieldKind::Prime: return FieldElement(this, invmod(a.prime_value(), p_));
        case FieldKind::Extension: {
            // extended euclid on coefficient polynomials
            UPoly r0(modulus_.begin(), modulus_.end());
            UPoly r1(a.ext_coeffs().begin(), a.ext_coeffs().end());
            utrim(r1);
            UPoly s0 = {}, s1 = {1};
            while (!r1.empty() && r1.size() > 1) {
                // quotient of r0 by r1
                UPoly q;
                UPoly rem = r0;
                u64 li = invmod(r1.back(), p_);
                while (rem.size() >= r1.size() && !rem.empty()) {
                    u64 qc = mulmod(rem.back(), li, p_);
                    std::size_t shift = rem.size() - r1.size();
                    if (q.size() < shift + 1) q.resize(shift + 1, 0);
                    q[shift] = addmod(q[shift], qc, p_);
                    for (std::size_t i = 0; i < r1.size(); ++i)
                        rem[shift + i] = submod(rem[shift + i], mulmod(qc, r1[i], p_), p_);
                    utrim(rem);
                }
                UPoly qs1 = umul(q, s1, p_);
                UPoly s2 = s0;
                if (s2.size() < qs1.size()) s2.resize(qs1.size(), 0);
                for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] = submod(s2[i], qs1[i], p_);
                utrim(s2);
                r0 = std::move(r1);
                r1 = std::move(rem);
                s0 = std::move(s1);
                s1 = std::move(s2);
            }
            if (r1.empty()) throw Error("element not invertible");
            // r1 is a nonzero constant: scale s1 by its inverse
            u64 ci = invmod(r1[0], p_);
            std::vector<u64> out(k_, 0);
            for (std::size_t i = 0; i < s1.size(); ++i) out[i] = mulmod(s1[i], ci, p_);
            return FieldElement(this, std::move(out));
        }
        case FieldKind::Rational: {
            mpq_class r = 1 / a.rational_value();
            return FieldElement(this, std::move(r));
        }
    }
    throw Error("unreachable");
}

int Field::compare(const FieldElement& a, const FieldElement& b) const {
    check_same_field(a, b);
    switch (kind_) {
        case FieldKind::Prime: {
            u64 x = a.prime_value(), y = b.prime_value();
            return x < y ? -1 : x > y ? 1 : 0;
        }
        case FieldKind::Extension: {
            const auto& x = a.ext_coeffs();
            const auto& y = b.ext_coeffs();
            for (unsigned i = 0; i < k_; ++i) {
                if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
            }
            return 0;
        }
        case FieldKind::Rational: {
            // order by (denominator, numerator)
            const mpq_class& x = a.rational_value();
            const mpq_class& y = b.rational_value();
            int dc = cmp(x.get_den(), y.get_den());
            if (dc != 0) return dc;
            return cmp(x.get_num(), y.get_num());
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// FieldElement methods
// ---------------------------------------------------------------------------

bool FieldElement::is_zero() const {
    switch (field_->kind()) {
        case FieldKind::Prime: return prime_value() == 0;
        case FieldKind::Extension:
            return std::all_of(ext_coeffs().begin(), ext_coeffs().end(),
                               [](u64 c) { return c == 0; });
        case FieldKind::Rational: return rational_value() == 0;
    }
    return false;
}

bool FieldElement::is_one() const { return *this == field_->one(); }

FieldElement FieldElement::pow(u64 e) const {
    FieldElement r = field_->one();
    FieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string FieldElement::to_string() const {
    switch (field_->kind()) {
        case FieldKind::Prime: return std::to_string(prime_value());
        case FieldKind::Extension: {
            std::string s;
            for (unsigned i = 0; i < field_->ext_degree(); ++i) {
                if (i) s += ',';
                s += std::to_string(ext_coeffs()[i]);
            }
            return s;
        }
        case FieldKind::Rational: {
            const mpq_class& q = rational_value();
            if (q.get_den() == 1) return q.get_num().get_str();
            return q.get_num().get_str() + "/" + q.get_den().get_str();
        }
    }
    return "";
}

// ---------------------------------------------------------------------------
// Roots of unity
// ---------------------------------------------------------------------------

std::optional<FieldElement> root_of_unity(FieldRef field, unsigned d) {
    if (d < 1) throw Error("d must be positive");
    if (field->finite()) {
        if (std::gcd(field->characteristic(), (u64)d) != 1)
            throw CharDividesDegree("characteristic divides " + std::to_string(d));
        // primitive d-th roots exist iff d | q - 1
        mpz_class q = field->order();
        if (mpz_divisible_ui_p(mpz_class(q - 1).get_mpz_t(), d) == 0 && d != 1)
            return std::nullopt;
        u64 n = mpz_class(q).get_ui();
        for (u64 i = 0; i < n; ++i) {
            FieldElement x = field->element_at(i);
            if (x.is_zero()) continue;
            if (!x.pow(d).is_one()) continue;
            bool primitive = true;
            for (unsigned j = 1; j < d; ++j) {
                if (x.pow(j).is_one()) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) return x;
        }
        return std::nullopt;
    }
    // rationals: only 1 and -1
    if (d == 1) return field->one();
    if (d == 2) return field->from_int(-1);
    return std::nullopt;
}

unsigned root_of_unity_extension_degree(FieldRef field, unsigned d) {
    if (!field->finite()) throw InfiniteField("extension degrees only for finite fields");
    if (std::gcd(field->characteristic(), (u64)d) != 1)
        throw CharDividesDegree("characteristic divides " + std::to_string(d));
    mpz_class q = field->order();
    mpz_class qt = 1;
    for (unsigned t = 1; t <= 2 * d + 2; ++t) {
        qt *= q;
        if (mpz_divisible_ui_p(mpz_class(qt - 1).get_mpz_t(), d)) return t;
    }
    throw Error("no extension contains the required root of unity");
}

std::vector<FieldElement> dth_roots(const FieldElement& a, unsigned d) {
    FieldRef f = a.field();
    if (!f->finite()) throw InfiniteField("root search only over finite fields");
    std::vector<FieldElement> out;
    u64 n = f->order().get_ui();
    for (u64 i = 0; i < n; ++i) {
        FieldElement x = f->element_at(i);
        if (x.pow(d) == a) out.push_back(x);
    }
    return out;
}

FieldElement embed(const FieldElement& e, FieldRef bigger) {
    FieldRef small = e.field();
    if (small == bigger) return e;
    if (small->kind() == FieldKind::Prime && bigger->kind() == FieldKind::Extension &&
        small->characteristic() == bigger->characteristic()) {
        return bigger->from_int((std::int64_t)e.prime_value());
    }
    throw Error("unsupported field embedding " + small->spec_text() + " -> " +
                bigger->spec_text());
}

}  // namespace cycov
