#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kszl/field.hpp"
#include "kszl/matrix.hpp"

namespace kszl {

/// A word in the generators, as generator indices.
using Word = std::vector<int>;

/// Connected graded quadratic algebra T(V)/(R), all generators in degree 1.
///
/// Relations live in V (x) V with basis g_i g_j at index i*n + j (lexicographic
/// in the declared generator order) and are stored as the rref basis of R.
class QuadraticPresentation {
public:
    QuadraticPresentation() = default;
    /// Canonicalizes `relations` (rows of length n^2) into its rref basis.
    QuadraticPresentation(std::string name, FieldSpec field, std::vector<std::string> generators,
                          const Matrix& relations);

    const std::string& name() const noexcept { return name_; }
    const FieldSpec& field() const noexcept { return field_; }
    const std::vector<std::string>& generators() const noexcept { return generators_; }
    std::size_t num_generators() const noexcept { return generators_.size(); }
    const Matrix& relations() const noexcept { return relations_; }
    std::size_t relation_dim() const noexcept { return relations_.rows(); }

    std::optional<int> generator_index(std::string_view name) const;
    std::size_t word_index(int i, int j) const { return static_cast<std::size_t>(i) * generators_.size() + j; }

    QuadraticPresentation renamed(std::string name) const;

    /// Field, generator names and relation space; the algebra name is ignored.
    friend bool operator==(const QuadraticPresentation& a, const QuadraticPresentation& b);

private:
    std::string name_;
    FieldSpec field_;
    std::vector<std::string> generators_;
    Matrix relations_;
};

/// Same field, same generator count and same relation space, matching
/// generators by position.
bool same_relation_space(const QuadraticPresentation& a, const QuadraticPresentation& b);

/// A graded algebra map determined by its degree-1 part.  Column j of
/// `matrix` is the image of source generator j in target coordinates.
struct GeneratorMap {
    std::string name;
    std::shared_ptr<const QuadraticPresentation> source;
    std::shared_ptr<const QuadraticPresentation> target;
    Matrix matrix;
    bool verified = false;
    bool automorphism = false;

    Vector image(std::size_t generator) const { return matrix.col_vector(generator); }
    /// e.g. "2*x + y", in target generator names.
    std::string image_string(std::size_t generator) const;
};

/// The bimodule A_sigma(-s); only s = 1 is supported.
class TwistSpec {
public:
    explicit TwistSpec(GeneratorMap automorphism, int shift = 1);
    const GeneratorMap& automorphism() const noexcept { return automorphism_; }
    int shift() const noexcept { return shift_; }

private:
    GeneratorMap automorphism_;
    int shift_;
};

/// Everything defined in one DSL source, in declaration order.
struct Document {
    std::vector<std::shared_ptr<const QuadraticPresentation>> algebras;
    std::vector<GeneratorMap> maps;

    std::shared_ptr<const QuadraticPresentation> find_algebra(std::string_view name) const;
    const GeneratorMap* find_map(std::string_view name) const;
};

Document parse_document(std::string_view text, const Document* environment = nullptr);
/// First algebra in `text`.
QuadraticPresentation parse_presentation(std::string_view text);
/// First map in `text`; algebra names resolve against `environment` and any
/// algebras declared earlier in `text`.
GeneratorMap parse_map(std::string_view text, const Document& environment);

std::string print_presentation(const QuadraticPresentation& p);
std::string print_map(const GeneratorMap& f);

/// Formats sum_w c_w * w over words of a fixed length.
std::string format_combination(std::span<const FieldElement> coeffs, const std::vector<Word>& words,
                               const std::vector<std::string>& names);
std::string format_relation(const QuadraticPresentation& p, std::size_t row);

/// (A (x) B) v for v in k^{n} (x) k^{n}, with A and B both m x n.
Vector tensor_apply(const Matrix& a, const Matrix& b, std::span<const FieldElement> v);

}  // namespace kszl
