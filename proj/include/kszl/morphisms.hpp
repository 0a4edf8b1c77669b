#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "kszl/engine.hpp"
#include "kszl/presentation.hpp"

namespace kszl {

using PresentationPtr = std::shared_ptr<const QuadraticPresentation>;

inline PresentationPtr share(QuadraticPresentation p) {
    return std::make_shared<const QuadraticPresentation>(std::move(p));
}

/// Unverified map with the given matrix (n_target x n_source).
GeneratorMap make_map(std::string name, PresentationPtr source, PresentationPtr target, Matrix matrix);
GeneratorMap identity_map(PresentationPtr p);
/// The automorphism a -> c^{deg a} a; c = -1 gives the sign automorphism.
GeneratorMap scalar_map(PresentationPtr p, const FieldElement& c, std::string name);
GeneratorMap minus_one(PresentationPtr p);

/// True iff (M (x) M)(R_source) is contained in R_target.
bool preserves_relations(const GeneratorMap& f);

/// Returns `f` with `verified` set, and `automorphism` set when source and
/// target agree, M is invertible and dim R matches.  Throws
/// RelationNotPreserved(index) on the first relation that escapes.
GeneratorMap verify_map(GeneratorMap f);

/// Witness that a generator map is a graded isomorphism.
struct IsoCertificate {
    GeneratorMap map;
    /// (relation index, coefficients of its image in the target relation basis)
    std::vector<std::pair<std::size_t, Vector>> checks;
    Matrix inverse;

    /// Re-derives every check and the inverse identity.
    bool replay() const;
    /// The inverse witness as a map target -> source.
    GeneratorMap inverse_map() const;
};

/// Throws NotInvertible, RelationDimMismatch or RelationNotPreserved.
IsoCertificate verify_iso(const GeneratorMap& f);

/// f after g.
GeneratorMap compose(const GeneratorMap& f, const GeneratorMap& g);
GeneratorMap invert(const GeneratorMap& f);

/// Matrices of the algebra map induced by `m` (on generators) on each
/// graded piece A_0..A_N of `t`.
std::vector<Matrix> graded_extension(const TruncatedAlgebra& t, const Matrix& m);

/// Frobenius structure of a finite-dimensional connected graded algebra.
struct FrobeniusData {
    int socle_degree = 0;
    /// pairings[i] is dim A_i x dim A_{n-i}: coefficient of a*b in A_n.
    std::vector<Matrix> pairings;
    bool nondegenerate = false;
    /// eta with a*b = b*eta(a) for a in A_1, b in A_{n-1}.
    GeneratorMap nakayama;
    /// eta on every graded piece.
    std::vector<Matrix> nakayama_full;
};

/// Throws TruncationTooShallow when no vanishing degree is visible within the
/// truncation, NotFrobenius when dim A_n != 1 or a pairing is degenerate.
FrobeniusData frobenius_data(const TruncatedAlgebra& t);

/// Nakayama automorphism of a Koszul AS-regular algebra of dimension d:
/// nu = (-1)^{d+1} * transpose(eta) on generators, where eta is the
/// Nakayama automorphism of the quadratic dual.
GeneratorMap nakayama_regular(const QuadraticPresentation& p, int d);
GeneratorMap nakayama_regular(PresentationPtr p, int d);

}  // namespace kszl
