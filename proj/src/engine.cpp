#include "kszl/engine.hpp"

#include <limits>

namespace kszl {

namespace {

// n^d, saturating at SIZE_MAX.
std::size_t power(std::size_t n, int d) {
    std::size_t r = 1;
    for (int i = 0; i < d; ++i) {
        if (n != 0 && r > std::numeric_limits<std::size_t>::max() / n) return std::numeric_limits<std::size_t>::max();
        r *= n;
    }
    return r;
}

}  // namespace

TruncatedAlgebra::TruncatedAlgebra(QuadraticPresentation presentation, int max_degree, std::size_t word_budget)
    : pres_(std::move(presentation)), max_degree_(max_degree), n_(pres_.num_generators()) {
    if (max_degree_ < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation degree");
    if (power(n_, max_degree_) > word_budget)
        throw Error(ErrorCode::BudgetExceeded, std::to_string(n_) + "^" + std::to_string(max_degree_) +
                                                   " words exceed the budget of " + std::to_string(word_budget));

    const auto N = static_cast<std::size_t>(max_degree_);
    normal_.resize(N + 1);
    reducers_.resize(N + 1);
    for (std::size_t d = 0; d <= N; ++d) word_space_.push_back(power(n_, static_cast<int>(d)));

    normal_[0] = {Word{}};
    if (N >= 1) {
        for (std::size_t g = 0; g < n_; ++g) {
            normal_[1].push_back(Word{static_cast<int>(g)});
            reducers_[1].push_back(Sparse{{g, FieldElement(1)}});
        }
    }

    const Matrix& rels = pres_.relations();
    for (std::size_t d = 2; d <= N; ++d) {
        const std::size_t prev = normal_[d - 1].size();
        const std::size_t cols = prev * n_;
        Matrix m(0, cols);
        Vector row(cols);
        for (std::size_t w = 0; w < normal_[d - 2].size(); ++w) {
            for (std::size_t r = 0; r < rels.rows(); ++r) {
                std::fill(row.begin(), row.end(), FieldElement());
                for (std::size_t i = 0; i < n_; ++i)
                    for (std::size_t j = 0; j < n_; ++j) {
                        const FieldElement& c = rels(r, i * n_ + j);
                        if (c.is_zero()) continue;
                        for (const auto& [u, cu] : reducers_[d - 1][w * n_ + i]) row[u * n_ + j] += c * cu;
                    }
                if (!kszl::is_zero(row)) m.append_row(row);
            }
        }
        RrefResult red = rref(std::move(m));

        std::vector<long> pivot_row(cols, -1);
        for (std::size_t i = 0; i < red.pivots.size(); ++i) pivot_row[red.pivots[i]] = static_cast<long>(i);
        std::vector<std::size_t> normal_index(cols, 0);
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_row[c] >= 0) continue;
            normal_index[c] = normal_[d].size();
            Word w = normal_[d - 1][c / n_];
            w.push_back(static_cast<int>(c % n_));
            normal_[d].push_back(std::move(w));
        }
        reducers_[d].resize(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_row[c] < 0) {
                reducers_[d][c] = Sparse{{normal_index[c], FieldElement(1)}};
                continue;
            }
            Sparse s;
            auto r = static_cast<std::size_t>(pivot_row[c]);
            for (std::size_t k = c + 1; k < cols; ++k) {
                const FieldElement& e = red.reduced(r, k);
                if (!e.is_zero() && pivot_row[k] < 0) s.emplace_back(normal_index[k], -e);
            }
            reducers_[d][c] = std::move(s);
        }
    }
}

void TruncatedAlgebra::check_degree(int d) const {
    if (d < 0 || d > max_degree_)
        throw Error(ErrorCode::DegreeOverflow,
                    "degree " + std::to_string(d) + " outside the window 0.." + std::to_string(max_degree_));
}

std::size_t TruncatedAlgebra::dim(int d) const {
    check_degree(d);
    return normal_[d].size();
}

std::size_t TruncatedAlgebra::ideal_dim(int d) const { return word_space_.at(d) - dim(d); }

const std::vector<Word>& TruncatedAlgebra::normal_words(int d) const {
    check_degree(d);
    return normal_[d];
}

HilbertPrefix TruncatedAlgebra::hilbert() const {
    HilbertPrefix h;
    for (const auto& w : normal_) h.coefficients.push_back(w.size());
    return h;
}

Element TruncatedAlgebra::one() const { return Element{0, Vector{FieldElement(1)}}; }

Element TruncatedAlgebra::zero(int d) const { return Element{d, Vector(dim(d))}; }

Element TruncatedAlgebra::basis(int d, std::size_t index) const {
    Element e = zero(d);
    e.coeffs.at(index) = 1;
    return e;
}

Element TruncatedAlgebra::multiply_generator(const Element& a, int g) const {
    check_degree(a.degree + 1);
    Element out = zero(a.degree + 1);
    const auto& table = reducers_[a.degree + 1];
    for (std::size_t u = 0; u < a.coeffs.size(); ++u) {
        const FieldElement& c = a.coeffs[u];
        if (c.is_zero()) continue;
        for (const auto& [k, ck] : table[u * n_ + g]) out.coeffs[k] += c * ck;
    }
    return out;
}

Element TruncatedAlgebra::multiply(const Element& a, const Word& w) const {
    check_degree(a.degree + static_cast<int>(w.size()));
    Element cur = a;
    for (int g : w) cur = multiply_generator(cur, g);
    return cur;
}

Element TruncatedAlgebra::multiply(const Element& a, const Element& b) const {
    check_degree(a.degree + b.degree);
    Element out = zero(a.degree + b.degree);
    const auto& words = normal_[b.degree];
    for (std::size_t v = 0; v < b.coeffs.size(); ++v) {
        const FieldElement& c = b.coeffs[v];
        if (c.is_zero()) continue;
        Element t = multiply(a, words[v]);
        for (std::size_t k = 0; k < t.coeffs.size(); ++k)
            if (!t.coeffs[k].is_zero()) out.coeffs[k] += c * t.coeffs[k];
    }
    return out;
}

Element TruncatedAlgebra::normal_form(const Word& w) const {
    for (int g : w)
        if (g < 0 || static_cast<std::size_t>(g) >= n_)
            throw Error(ErrorCode::UnknownGenerator, "generator index " + std::to_string(g));
    return multiply(one(), w);
}

Element TruncatedAlgebra::normal_form(int d, std::span<const FieldElement> v) const {
    check_degree(d);
    if (v.size() != word_space_[d])
        throw Error(ErrorCode::DimensionMismatch, "word-space vector of length " + std::to_string(v.size()));
    Element out = zero(d);
    Word w(d);
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        if (v[idx].is_zero()) continue;
        std::size_t rest = idx;
        for (int k = d - 1; k >= 0; --k) {
            w[k] = static_cast<int>(rest % n_);
            rest /= n_;
        }
        Element t = normal_form(w);
        for (std::size_t k = 0; k < t.coeffs.size(); ++k)
            if (!t.coeffs[k].is_zero()) out.coeffs[k] += v[idx] * t.coeffs[k];
    }
    return out;
}

Element TruncatedAlgebra::add(const Element& a, const Element& b) const {
    if (a.degree != b.degree) throw Error(ErrorCode::DimensionMismatch, "adding elements of different degrees");
    Element out = a;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
    return out;
}

Element TruncatedAlgebra::scale(const Element& a, const FieldElement& c) const {
    Element out = a;
    for (auto& x : out.coeffs) x *= c;
    return out;
}

TruncatedAlgebra truncate(const QuadraticPresentation& p, int max_degree, std::size_t word_budget) {
    if (max_degree < 2) throw Error(ErrorCode::InvalidArgument, "truncation degree must be at least 2");
    return TruncatedAlgebra(p, max_degree, word_budget);
}

HilbertPrefix hilbert(const TruncatedAlgebra& t) { return t.hilbert(); }

HilbertPrefix hilbert_prefix(const QuadraticPresentation& p, int max_degree, std::size_t word_budget) {
    return TruncatedAlgebra(p, max_degree, word_budget).hilbert();
}

int vanishing_degree(const QuadraticPresentation& p, int limit, std::size_t word_budget) {
    const std::size_t n = p.num_generators();
    if (n == 0) return 1;
    int top = 1;
    while (top < limit && power(n, top + 1) <= word_budget) ++top;
    TruncatedAlgebra t(p, top, word_budget);
    for (int d = 1; d <= top; ++d)
        if (t.dim(d) == 0) return d;
    throw Error(ErrorCode::NotFiniteDimensional,
                p.name() + " has nonzero degree-" + std::to_string(top) + " part (searched up to " +
                    std::to_string(top) + ")");
}

}  // namespace kszl
