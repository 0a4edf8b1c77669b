#include "kszl/field.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace kszl {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroInverse: return "ZeroInverse";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotInSpan: return "NotInSpan";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::NonQuadraticRelation: return "NonQuadraticRelation";
        case ErrorCode::InhomogeneousRelation: return "InhomogeneousRelation";
        case ErrorCode::UnknownGenerator: return "UnknownGenerator";
        case ErrorCode::UnknownAlgebra: return "UnknownAlgebra";
        case ErrorCode::NonLinearImage: return "NonLinearImage";
        case ErrorCode::NameCollision: return "NameCollision";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::DegreeOverflow: return "DegreeOverflow";
        case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
        case ErrorCode::RelationNotPreserved: return "RelationNotPreserved";
        case ErrorCode::RelationDimMismatch: return "RelationDimMismatch";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::NotFrobenius: return "NotFrobenius";
        case ErrorCode::TruncationTooShallow: return "TruncationTooShallow";
        case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
        case ErrorCode::ZeroParameter: return "ZeroParameter";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace poly {

void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.empty()) throw Error(ErrorCode::ZeroInverse, "polynomial division by zero");
    Poly rem = a;
    trim(rem);
    if (rem.size() < b.size()) return {{}, rem};
    Poly quo(rem.size() - b.size() + 1);
    const Rational& lead = b.back();
    while (!rem.empty() && rem.size() >= b.size()) {
        std::size_t shift = rem.size() - b.size();
        Rational c = rem.back() / lead;
        quo[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
        trim(rem);
    }
    trim(quo);
    return {quo, rem};
}

Poly derivative(const Poly& a) {
    Poly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    trim(r);
    return r;
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

std::string to_string(const Poly& p, char var) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = p.size(); k-- > 0;) {
        const Rational& c = p[k];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << "-";
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1) out << mag.get_str() << "*";
        out << var;
        if (k > 1) out << "^" << k;
    }
    return out.str();
}

namespace {

class PolyReader {
public:
    PolyReader(std::string_view s, char var) : s_(s), var_(var) {}

    Poly read() {
        Poly result;
        skip();
        if (pos_ == s_.size()) fail("empty scalar");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            skip();
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [coef, power] = term();
            if (result.size() <= power) result.resize(power + 1);
            result[power] += sign * coef;
            skip();
        }
        trim(result);
        return result;
    }

private:
    std::pair<Rational, std::size_t> term() {
        skip();
        Rational coef = 1;
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = number();
            have_coef = true;
            skip();
            if (peek() == '/') {
                ++pos_;
                skip();
                Rational den = number();
                if (sgn(den) == 0) fail("zero denominator");
                coef /= den;
                skip();
            }
            if (peek() != '*') return {coef, 0};
            ++pos_;
            skip();
        }
        if (peek() != var_) {
            if (have_coef) fail(std::string("expected '") + var_ + "'");
            fail("expected a number or '" + std::string(1, var_) + "'");
        }
        ++pos_;
        skip();
        std::size_t power = 1;
        if (peek() == '^') {
            ++pos_;
            skip();
            power = number().get_num().get_ui();
        }
        return {coef, power};
    }

    Rational number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Rational(mpz_class(std::string(s_.substr(start, pos_ - start))));
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::InvalidArgument,
                    "cannot parse scalar '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    std::string_view s_;
    char var_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse(std::string_view text, char var) { return PolyReader(text, var).read(); }

}  // namespace poly

namespace detail {

struct Modulus {
    poly::Poly coeffs;  // monic, low-to-high
};

namespace {

std::mutex registry_mutex;

std::map<std::vector<std::string>, std::unique_ptr<Modulus>>& registry() {
    static std::map<std::vector<std::string>, std::unique_ptr<Modulus>> r;
    return r;
}

}  // namespace
}  // namespace detail

FieldSpec FieldSpec::extension(const std::vector<Rational>& modulus) {
    poly::Poly m = modulus;
    for (auto& c : m) c.canonicalize();
    poly::trim(m);
    if (m.size() < 2) throw Error(ErrorCode::InvalidArgument, "extension modulus must have degree >= 1");
    if (m.back() != 1) throw Error(ErrorCode::InvalidArgument, "extension modulus must be monic");
    if (poly::gcd(m, poly::derivative(m)).size() != 1)
        throw Error(ErrorCode::InvalidArgument, "extension modulus must be squarefree");

    std::vector<std::string> key;
    for (const auto& c : m) key.push_back(c.get_str());
    std::lock_guard lock(detail::registry_mutex);
    auto& slot = detail::registry()[key];
    if (!slot) slot = std::make_unique<detail::Modulus>(detail::Modulus{m});
    return FieldSpec(slot.get());
}

std::size_t FieldSpec::degree() const noexcept { return modulus_ ? modulus_->coeffs.size() - 1 : 1; }

const std::vector<Rational>& FieldSpec::modulus() const {
    static const std::vector<Rational> empty;
    return modulus_ ? modulus_->coeffs : empty;
}

std::string FieldSpec::to_string() const {
    if (!modulus_) return "QQ";
    return "QQ adjoin t mod " + poly::to_string(modulus_->coeffs);
}

FieldElement::FieldElement(const FieldSpec& field, std::vector<Rational> p) : mod_(field.handle()) {
    poly::trim(p);
    if (mod_ && p.size() >= mod_->coeffs.size()) p = poly::divmod(p, mod_->coeffs).second;
    if (!mod_ && p.size() > 1) throw Error(ErrorCode::FieldMismatch, "polynomial residue given for QQ");
    if (!p.empty()) {
        c0_ = p[0];
        hi_.assign(p.begin() + 1, p.end());
    }
    trim();
}

FieldElement FieldElement::generator(const FieldSpec& field) {
    if (field.kind() != FieldSpec::Kind::Extension)
        throw Error(ErrorCode::FieldMismatch, "QQ has no adjoined generator");
    return FieldElement(field, {0, 1});
}

std::vector<Rational> FieldElement::dense(const FieldSpec& field) const {
    std::vector<Rational> out(field.degree());
    out[0] = c0_;
    for (std::size_t i = 0; i < hi_.size(); ++i) out.at(i + 1) = hi_[i];
    return out;
}

void FieldElement::trim() { poly::trim(hi_); }

void FieldElement::adopt(const FieldElement& o) {
    if (!mod_) {
        mod_ = o.mod_;
    } else if (o.mod_ && o.mod_ != mod_) {
        throw Error(ErrorCode::FieldMismatch, "elements of different extension fields");
    }
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    c0_ += o.c0_;
    if (!o.hi_.empty()) {
        adopt(o);
        if (hi_.size() < o.hi_.size()) hi_.resize(o.hi_.size());
        for (std::size_t i = 0; i < o.hi_.size(); ++i) hi_[i] += o.hi_[i];
        trim();
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    c0_ -= o.c0_;
    if (!o.hi_.empty()) {
        adopt(o);
        if (hi_.size() < o.hi_.size()) hi_.resize(o.hi_.size());
        for (std::size_t i = 0; i < o.hi_.size(); ++i) hi_[i] -= o.hi_[i];
        trim();
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    adopt(o);
    if (hi_.empty() && o.hi_.empty()) {
        c0_ *= o.c0_;
        return *this;
    }
    if (o.hi_.empty()) {
        c0_ *= o.c0_;
        for (auto& c : hi_) c *= o.c0_;
        trim();
        return *this;
    }
    if (hi_.empty()) {
        Rational s = c0_;
        c0_ = o.c0_ * s;
        hi_ = o.hi_;
        for (auto& c : hi_) c *= s;
        trim();
        return *this;
    }
    poly::Poly a{c0_};
    a.insert(a.end(), hi_.begin(), hi_.end());
    poly::Poly b{o.c0_};
    b.insert(b.end(), o.hi_.begin(), o.hi_.end());
    poly::Poly r = poly::divmod(poly::mul(a, b), mod_->coeffs).second;
    hi_.clear();
    c0_ = r.empty() ? Rational(0) : r[0];
    if (r.size() > 1) hi_.assign(r.begin() + 1, r.end());
    trim();
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    r.c0_ = -r.c0_;
    for (auto& c : r.hi_) c = -c;
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
    if (hi_.empty()) {
        FieldElement r(Rational(1) / c0_);
        r.mod_ = mod_;
        return r;
    }
    // Extended Euclid: find s with s*a = g (mod m).
    poly::Poly a{c0_};
    a.insert(a.end(), hi_.begin(), hi_.end());
    poly::Poly r0 = mod_->coeffs, r1 = a;
    poly::Poly s0, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = poly::divmod(r0, r1);
        poly::Poly s = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1)
        throw Error(ErrorCode::NotInvertible,
                    to_string() + " shares the factor " + poly::to_string(r0) + " with the modulus");
    Rational g = r0[0];
    for (auto& c : s0) c /= g;
    FieldElement out;
    out.mod_ = mod_;
    poly::Poly red = poly::divmod(s0, mod_->coeffs).second;
    if (!red.empty()) {
        out.c0_ = red[0];
        out.hi_.assign(red.begin() + 1, red.end());
    }
    out.trim();
    return out;
}

FieldElement field_inverse(const FieldElement& x, const FieldSpec& field) {
    if (x.modulus_handle() && x.modulus_handle() != field.handle())
        throw Error(ErrorCode::FieldMismatch, "element does not belong to " + field.to_string());
    return x.inverse();
}

std::string FieldElement::to_string() const {
    if (hi_.empty()) return c0_.get_str();
    poly::Poly p{c0_};
    p.insert(p.end(), hi_.begin(), hi_.end());
    return poly::to_string(p);
}

FieldElement FieldElement::parse(std::string_view text, const FieldSpec& field) {
    poly::Poly p = poly::parse(text, 't');
    if (field.kind() == FieldSpec::Kind::Rationals && p.size() > 1)
        throw Error(ErrorCode::FieldMismatch, "'t' used in a scalar over QQ");
    return FieldElement(field, std::move(p));
}

}  // namespace kszl
