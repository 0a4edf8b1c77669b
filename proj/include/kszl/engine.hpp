#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "kszl/presentation.hpp"

namespace kszl {

inline constexpr std::size_t kDefaultWordBudget = 1'000'000;
inline constexpr int kDefaultMaxDegree = 8;

/// Homogeneous element of a truncated algebra: coordinates over the normal
/// words of `degree`.
struct Element {
    int degree = 0;
    Vector coeffs;

    bool is_zero() const { return kszl::is_zero(coeffs); }
    friend bool operator==(const Element& a, const Element& b) = default;
};

/// h_0, ..., h_N.
struct HilbertPrefix {
    std::vector<std::size_t> coefficients;

    std::size_t operator[](std::size_t d) const { return coefficients.at(d); }
    std::size_t size() const { return coefficients.size(); }
    friend bool operator==(const HilbertPrefix&, const HilbertPrefix&) = default;
};

/// A = T(V)/(R) in degrees 0..N.
///
/// Degree d is built as (A_{d-1} (x) V) / span{ NF(w g_i) g_j * r_ij : w
/// normal of degree d-2, r in R }, which identifies the same normal words as
/// row reducing I_d inside the full word space.  Words are ordered
/// lexicographically by generator index; an earlier word is the larger
/// monomial, so every pivot is the leading word of its relation and the
/// normal words are the non-pivot columns.
///
/// Immutable after construction.  Reduction tables for (normal word) x
/// (generator) are precomputed; products are evaluated from them.
class TruncatedAlgebra {
public:
    /// Throws BudgetExceeded when n^N exceeds `word_budget`.
    TruncatedAlgebra(QuadraticPresentation presentation, int max_degree,
                     std::size_t word_budget = kDefaultWordBudget);

    const QuadraticPresentation& presentation() const noexcept { return pres_; }
    int max_degree() const noexcept { return max_degree_; }
    std::size_t num_generators() const noexcept { return n_; }

    std::size_t dim(int d) const;
    /// n^d - h_d.
    std::size_t ideal_dim(int d) const;
    const std::vector<Word>& normal_words(int d) const;
    HilbertPrefix hilbert() const;

    Element one() const;
    Element zero(int d) const;
    Element basis(int d, std::size_t index) const;
    Element generator(int g) const { return basis(1, static_cast<std::size_t>(g)); }

    Element normal_form(const Word& w) const;
    /// `v` indexes all n^d words of degree d in lexicographic order.
    Element normal_form(int d, std::span<const FieldElement> v) const;

    Element multiply(const Element& a, const Element& b) const;
    /// a * w for a word w.
    Element multiply(const Element& a, const Word& w) const;
    Element multiply_generator(const Element& a, int g) const;

    Element add(const Element& a, const Element& b) const;
    Element scale(const Element& a, const FieldElement& c) const;

    /// Normal-form vector of a word, as sparse (index, coefficient) pairs.
    using Sparse = std::vector<std::pair<std::size_t, FieldElement>>;

private:
    void check_degree(int d) const;

    QuadraticPresentation pres_;
    int max_degree_;
    std::size_t n_;
    std::vector<std::vector<Word>> normal_;
    std::vector<std::size_t> word_space_;  // n^d
    // reducers_[d][u * n + g] = NF(u g), u a normal word of degree d-1.
    std::vector<std::vector<Sparse>> reducers_;
};

/// Convenience wrapper with the default budget.
TruncatedAlgebra truncate(const QuadraticPresentation& p, int max_degree,
                          std::size_t word_budget = kDefaultWordBudget);
HilbertPrefix hilbert(const TruncatedAlgebra& t);

/// Hilbert prefix of a presentation through degree N.
HilbertPrefix hilbert_prefix(const QuadraticPresentation& p, int max_degree,
                             std::size_t word_budget = kDefaultWordBudget);

/// Degree at which a finite-dimensional quadratic algebra stops (first d with
/// h_d = 0), searched up to `limit`; throws NotFiniteDimensional otherwise.
int vanishing_degree(const QuadraticPresentation& p, int limit = 16,
                     std::size_t word_budget = kDefaultWordBudget);

}  // namespace kszl
