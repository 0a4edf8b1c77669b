#include "kszl/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace kszl {

namespace {

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<Word> all_words(std::size_t n, std::size_t length) {
    std::vector<Word> words{Word{}};
    for (std::size_t d = 0; d < length; ++d) {
        std::vector<Word> next;
        next.reserve(words.size() * n);
        for (const auto& w : words)
            for (std::size_t g = 0; g < n; ++g) {
                Word v = w;
                v.push_back(static_cast<int>(g));
                next.push_back(std::move(v));
            }
        words = std::move(next);
    }
    return words;
}

std::string word_string(const Word& w, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += names.at(w[i]);
    }
    return s;
}

}  // namespace

QuadraticPresentation::QuadraticPresentation(std::string name, FieldSpec field,
                                             std::vector<std::string> generators, const Matrix& relations)
    : name_(std::move(name)), field_(field), generators_(std::move(generators)) {
    std::set<std::string> seen;
    for (const auto& g : generators_) {
        if (!valid_identifier(g)) throw Error(ErrorCode::InvalidArgument, "invalid generator name '" + g + "'");
        if (!seen.insert(g).second) throw Error(ErrorCode::NameCollision, "duplicate generator '" + g + "'");
    }
    const std::size_t n = generators_.size();
    if (relations.rows() == 0) {
        relations_ = Matrix(0, n * n);
        return;
    }
    if (relations.cols() != n * n)
        throw Error(ErrorCode::DimensionMismatch, "relation vectors must have length n^2 = " + std::to_string(n * n));
    relations_ = row_basis(relations);
}

std::optional<int> QuadraticPresentation::generator_index(std::string_view name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

QuadraticPresentation QuadraticPresentation::renamed(std::string name) const {
    QuadraticPresentation p = *this;
    p.name_ = std::move(name);
    return p;
}

bool operator==(const QuadraticPresentation& a, const QuadraticPresentation& b) {
    return a.field_ == b.field_ && a.generators_ == b.generators_ && a.relations_ == b.relations_;
}

bool same_relation_space(const QuadraticPresentation& a, const QuadraticPresentation& b) {
    return a.field() == b.field() && a.num_generators() == b.num_generators() && a.relations() == b.relations();
}

std::string GeneratorMap::image_string(std::size_t generator) const {
    Vector v = image(generator);
    std::vector<Word> words;
    for (std::size_t i = 0; i < v.size(); ++i) words.push_back(Word{static_cast<int>(i)});
    return format_combination(v, words, target->generators());
}

TwistSpec::TwistSpec(GeneratorMap automorphism, int shift) : automorphism_(std::move(automorphism)), shift_(shift) {
    if (shift_ != 1) throw Error(ErrorCode::InvalidArgument, "only the shift 1 bimodule A_sigma(-1) is supported");
}

std::shared_ptr<const QuadraticPresentation> Document::find_algebra(std::string_view name) const {
    for (const auto& a : algebras)
        if (a->name() == name) return a;
    return nullptr;
}

const GeneratorMap* Document::find_map(std::string_view name) const {
    for (const auto& m : maps)
        if (m.name == name) return &m;
    return nullptr;
}

std::string format_combination(std::span<const FieldElement> coeffs, const std::vector<Word>& words,
                               const std::vector<std::string>& names) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const FieldElement& c = coeffs[i];
        if (c.is_zero()) continue;
        std::string w = word_string(words[i], names);
        if (!c.is_rational()) {
            out << (first ? "" : " + ") << "(" << c.to_string() << ")";
            if (!w.empty()) out << "*" << w;
            first = false;
            continue;
        }
        Rational mag = abs(c.constant());
        bool neg = sgn(c.constant()) < 0;
        if (first)
            out << (neg ? "-" : "");
        else
            out << (neg ? " - " : " + ");
        first = false;
        if (w.empty()) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << "*";
            out << w;
        }
    }
    return first ? "0" : out.str();
}

std::string format_relation(const QuadraticPresentation& p, std::size_t row) {
    return format_combination(p.relations().row(row), all_words(p.num_generators(), 2), p.generators());
}

Vector tensor_apply(const Matrix& a, const Matrix& b, std::span<const FieldElement> v) {
    const std::size_t n = a.cols(), m = a.rows();
    if (b.cols() != n || b.rows() != m || v.size() != n * n)
        throw Error(ErrorCode::DimensionMismatch, "tensor_apply shape mismatch");
    Vector out(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& c = v[i * n + j];
            if (c.is_zero()) continue;
            for (std::size_t p = 0; p < m; ++p) {
                const auto& ap = a(p, i);
                if (ap.is_zero()) continue;
                FieldElement s = c * ap;
                for (std::size_t q = 0; q < m; ++q) {
                    const auto& bq = b(q, j);
                    if (!bq.is_zero()) out[p * m + q] += s * bq;
                }
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// DSL

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
    int line;
    int col;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t{Tok::Punct, "", i, line, col};
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Number;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            t.text = "->";
            advance(2);
        } else if (std::string_view("{};,*/+-():^").find(c) != std::string_view::npos) {
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{Tok::End, "", src.size(), line, col});
    return out;
}

struct Term {
    FieldElement coeff;
    Word word;
};

class Parser {
public:
    Parser(std::string_view src, const Document* env) : src_(src), toks_(tokenize(src)), env_(env) {}

    Document document() {
        Document doc;
        doc_ = &doc;
        if (peek().kind == Tok::End) fail(peek(), "expected 'algebra' or 'map'");
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.kind == Tok::Ident && t.text == "algebra") {
                auto a = std::make_shared<const QuadraticPresentation>(algebra());
                if (doc.find_algebra(a->name()))
                    throw Error(ErrorCode::NameCollision, "algebra '" + a->name() + "' defined twice");
                doc.algebras.push_back(std::move(a));
            } else if (t.kind == Tok::Ident && t.text == "map") {
                doc.maps.push_back(map());
            } else {
                fail(t, "expected 'algebra' or 'map'");
            }
        }
        return doc;
    }

private:
    QuadraticPresentation algebra() {
        expect_word("algebra");
        std::string name = ident();
        expect_word("over");
        FieldSpec field = field_spec();
        expect("{");
        expect_word("gens");
        std::vector<std::string> gens;
        gens.push_back(ident());
        while (accept(",")) gens.push_back(ident());
        expect(";");
        {
            std::set<std::string> seen;
            for (const auto& g : gens)
                if (!seen.insert(g).second) throw Error(ErrorCode::NameCollision, "duplicate generator '" + g + "'");
        }
        const std::size_t n = gens.size();
        Matrix rels(0, n * n);
        if (peek().kind == Tok::Ident && peek().text == "rels") {
            next();
            if (!accept(";")) {
                do {
                    const Token& start = peek();
                    auto terms = expression(gens, field);
                    rels.append_row(quadratic_vector(terms, n, start));
                } while (accept(","));
                expect(";");
            }
        }
        expect("}");
        return QuadraticPresentation(name, field, gens, rels);
    }

    GeneratorMap map() {
        expect_word("map");
        GeneratorMap f;
        f.name = ident();
        expect(":");
        f.source = lookup(ident_token());
        expect("->");
        f.target = lookup(ident_token());
        if (!(f.source->field() == f.target->field()))
            throw Error(ErrorCode::FieldMismatch, "map '" + f.name + "' joins algebras over different fields");
        const std::size_t ns = f.source->num_generators(), nt = f.target->num_generators();
        f.matrix = Matrix(nt, ns);
        std::vector<bool> given(ns, false);
        expect("{");
        do {
            const Token& gt = ident_token();
            auto gi = f.source->generator_index(gt.text);
            if (!gi)
                throw Error(ErrorCode::UnknownGenerator,
                            "'" + gt.text + "' is not a generator of " + f.source->name() + " (line " +
                                std::to_string(gt.line) + ")");
            if (given[*gi]) fail(gt, "image of '" + gt.text + "' given twice");
            given[*gi] = true;
            expect("->");
            const Token& start = peek();
            auto terms = expression(f.target->generators(), f.target->field());
            for (const auto& t : terms) {
                if (t.word.size() != 1)
                    throw Error(ErrorCode::NonLinearImage,
                                "image of '" + gt.text + "' is not linear in the generators (line " +
                                    std::to_string(start.line) + ")");
                f.matrix(t.word[0], *gi) += t.coeff;
            }
            expect(";");
        } while (peek().kind == Tok::Ident);
        expect("}");
        for (std::size_t j = 0; j < ns; ++j)
            if (!given[j])
                throw Error(ErrorCode::InvalidArgument,
                            "map '" + f.name + "' gives no image for '" + f.source->generators()[j] + "'");
        return f;
    }

    FieldSpec field_spec() {
        const Token& qq = ident_token();
        if (qq.text != "QQ") fail(qq, "expected 'QQ'");
        if (!(peek().kind == Tok::Ident && peek().text == "adjoin")) return FieldSpec::rationals();
        next();
        const Token& var = ident_token();
        if (var.text != "t") fail(var, "only the variable 't' can be adjoined");
        expect_word("mod");
        const Token& start = peek();
        while (peek().kind != Tok::End && peek().text != "{") next();
        std::string_view raw = src_.substr(start.offset, peek().offset - start.offset);
        try {
            return FieldSpec::extension(poly::parse(raw, 't'));
        } catch (const Error& e) {
            throw SyntaxError(start.line, start.col, e.what());
        }
    }

    Vector quadratic_vector(const std::vector<Term>& terms, std::size_t n, const Token& start) {
        std::set<std::size_t> lengths;
        for (const auto& t : terms) lengths.insert(t.word.size());
        if (lengths.size() > 1)
            throw Error(ErrorCode::InhomogeneousRelation,
                        "relation at line " + std::to_string(start.line) + " mixes word lengths");
        if (*lengths.begin() != 2)
            throw Error(ErrorCode::NonQuadraticRelation,
                        "relation at line " + std::to_string(start.line) + " has words of length " +
                            std::to_string(*lengths.begin()));
        Vector v(n * n);
        for (const auto& t : terms) v[t.word[0] * n + t.word[1]] += t.coeff;
        return v;
    }

    std::vector<Term> expression(const std::vector<std::string>& gens, const FieldSpec& field) {
        std::vector<Term> terms;
        int sign = 1;
        if (accept("-"))
            sign = -1;
        else
            accept("+");
        for (;;) {
            Term t = term(gens, field);
            if (sign < 0) t.coeff = -t.coeff;
            terms.push_back(std::move(t));
            if (accept("+"))
                sign = 1;
            else if (accept("-"))
                sign = -1;
            else
                break;
        }
        return terms;
    }

    Term term(const std::vector<std::string>& gens, const FieldSpec& field) {
        Term t{FieldElement(1), {}};
        factor(t, gens, field);
        while (accept("*")) factor(t, gens, field);
        return t;
    }

    void factor(Term& t, const std::vector<std::string>& gens, const FieldSpec& field) {
        const Token& tok = peek();
        if (tok.kind == Tok::Number) {
            next();
            Rational v(mpz_class(tok.text));
            if (accept("/")) {
                const Token& den = peek();
                if (den.kind != Tok::Number) fail(den, "expected a denominator");
                next();
                mpz_class d(den.text);
                if (d == 0) fail(den, "zero denominator");
                v /= Rational(d);
            }
            t.coeff *= FieldElement(v);
            return;
        }
        if (tok.text == "(" && tok.kind == Tok::Punct) {
            next();
            int depth = 1;
            std::size_t start = peek().offset;
            while (peek().kind != Tok::End) {
                if (peek().text == "(") ++depth;
                if (peek().text == ")" && --depth == 0) break;
                next();
            }
            const Token& close = peek();
            expect(")");
            try {
                t.coeff *= FieldElement::parse(src_.substr(start, close.offset - start), field);
            } catch (const Error& e) {
                throw SyntaxError(tok.line, tok.col, e.what());
            }
            return;
        }
        if (tok.kind == Tok::Ident) {
            next();
            auto it = std::find(gens.begin(), gens.end(), tok.text);
            if (it == gens.end())
                throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + tok.text + "' at line " +
                                                             std::to_string(tok.line) + ", col " +
                                                             std::to_string(tok.col));
            int g = static_cast<int>(it - gens.begin());
            std::size_t power = 1;
            if (accept("^")) {
                const Token& e = peek();
                if (e.kind != Tok::Number) fail(e, "expected an exponent");
                next();
                power = std::stoul(e.text);
            }
            for (std::size_t k = 0; k < power; ++k) t.word.push_back(g);
            return;
        }
        fail(tok, "expected a coefficient or generator");
    }

    std::shared_ptr<const QuadraticPresentation> lookup(const Token& t) {
        if (doc_)
            if (auto a = doc_->find_algebra(t.text)) return a;
        if (env_)
            if (auto a = env_->find_algebra(t.text)) return a;
        throw Error(ErrorCode::UnknownAlgebra, "unknown algebra '" + t.text + "' at line " + std::to_string(t.line));
    }

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(std::string_view p) {
        if (peek().kind == Tok::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    void expect(std::string_view p) {
        if (!accept(p)) fail(peek(), "expected '" + std::string(p) + "'");
    }
    void expect_word(std::string_view w) {
        if (peek().kind != Tok::Ident || peek().text != w) fail(peek(), "expected '" + std::string(w) + "'");
        next();
    }
    const Token& ident_token() {
        if (peek().kind != Tok::Ident) fail(peek(), "expected a name");
        return next();
    }
    std::string ident() { return ident_token().text; }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw SyntaxError(t.line, t.col, msg + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const Document* env_;
    Document* doc_ = nullptr;
};

}  // namespace

Document parse_document(std::string_view text, const Document* environment) {
    return Parser(text, environment).document();
}

QuadraticPresentation parse_presentation(std::string_view text) {
    Document doc = parse_document(text);
    if (doc.algebras.empty()) throw Error(ErrorCode::UnknownAlgebra, "no algebra in input");
    return *doc.algebras.front();
}

GeneratorMap parse_map(std::string_view text, const Document& environment) {
    Document doc = parse_document(text, &environment);
    if (doc.maps.empty()) throw Error(ErrorCode::UnknownAlgebra, "no map in input");
    return doc.maps.front();
}

std::string print_presentation(const QuadraticPresentation& p) {
    std::ostringstream out;
    out << "algebra " << (p.name().empty() ? "A" : p.name()) << " over " << p.field().to_string() << " {\n";
    out << "  gens ";
    for (std::size_t i = 0; i < p.num_generators(); ++i) out << (i ? ", " : "") << p.generators()[i];
    out << ";\n";
    if (p.relation_dim() > 0) {
        out << "  rels ";
        for (std::size_t r = 0; r < p.relation_dim(); ++r) out << (r ? ", " : "") << format_relation(p, r);
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string print_map(const GeneratorMap& f) {
    std::ostringstream out;
    out << "map " << f.name << " : " << f.source->name() << " -> " << f.target->name() << " {\n";
    for (std::size_t j = 0; j < f.source->num_generators(); ++j)
        out << "  " << f.source->generators()[j] << " -> " << f.image_string(j) << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace kszl
