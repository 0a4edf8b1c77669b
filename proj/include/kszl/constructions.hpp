#pragma once

#include <string>
#include <vector>

#include "kszl/engine.hpp"
#include "kszl/morphisms.hpp"
#include "kszl/presentation.hpp"

namespace kszl {

/// Finite-dimensional algebra given by structure constants on a basis.
struct FiniteAlgebraTable {
    std::vector<std::string> labels;
    std::vector<int> degrees;             // filtration label of each basis element
    std::vector<std::size_t> dims;        // count per degree
    std::vector<std::vector<Vector>> mult;  // mult[i][j] = e_i * e_j
    std::size_t unit = 0;

    std::size_t dimension() const { return labels.size(); }
    Vector multiply(const Vector& a, const Vector& b) const;
    bool is_associative() const;
    bool is_unital() const;

    /// A finite-dimensional truncated algebra (all of it must fit in the window).
    static FiniteAlgebraTable from_truncated(const TruncatedAlgebra& t);
};

/// T(V*)/(R^perp) under the pairing <g_i g_j, g_k* g_l*> = delta_ik delta_jl.
/// Generator names are kept; dim R^perp = n^2 - dim R.
QuadraticPresentation quadratic_dual(const QuadraticPresentation& p);

/// Presentation of A^sigma: relation space (id (x) sigma^{-1})(R).
/// Throws NotAnAutomorphism.
QuadraticPresentation zhang_twist(const QuadraticPresentation& p, const GeneratorMap& sigma);

/// A[x; sigma] with deg x = 1: relations R and x a - sigma(a) x.
/// Throws NameCollision or NotAnAutomorphism.
QuadraticPresentation ore_extension(const QuadraticPresentation& p, const GeneratorMap& sigma,
                                    const std::string& new_name);

/// First of x, y, z, w, u, v, x1, x2, ... not already a generator.
std::string fresh_generator_name(const QuadraticPresentation& p);

/// A |x A_sigma(-1), presented as A[x; sigma]/(x^2).
QuadraticPresentation trivial_extension(const QuadraticPresentation& p, const TwistSpec& l,
                                        const std::string& new_name = "");

/// The same algebra computed from the pair multiplication
/// (a, m)(a', m') = (aa', am' + m sigma(a')): its degree-2 relations are the
/// kernel of V' (x) V' -> A_2 (+) L_2, with the new generator (0, 1).
QuadraticPresentation trivial_extension_pair_form(const QuadraticPresentation& p, const TwistSpec& l,
                                                  const std::string& new_name = "");

/// sigma-hat = sigma (+) 1 on A[x; sigma]/(x^2).  Throws VerificationFailed.
GeneratorMap hat_automorphism(const GeneratorMap& sigma, PresentationPtr extension);

struct SquareZeroDualReport {
    QuadraticPresentation extension_dual;   // (S[x]/(x^2))^!
    QuadraticPresentation ore_of_dual;      // S^![z; -1]
    bool extension_matches = false;
    QuadraticPresentation polynomial_dual;  // S[x]^!
    QuadraticPresentation ore_mod_square;   // S^![z; -1]/(z^2)
    bool polynomial_matches = false;
    bool pass() const { return extension_matches && polynomial_matches; }
};

/// Compares (S[x]/(x^2))^! with S^![z;-1] and S[x]^! with S^![z;-1]/(z^2),
/// generators matched by position.
SquareZeroDualReport dual_of_square_zero_extension_check(const QuadraticPresentation& s);

struct PsiReport {
    std::size_t pairs_checked = 0;
    std::size_t failures = 0;
    bool unital = false;
    bool bijective = false;
    bool lambda_associative = false;
    bool pass() const { return failures == 0 && unital && bijective && lambda_associative; }
};

struct LocalizationResult {
    int socle_degree = 0;
    FiniteAlgebraTable lambda;   // basis a z^{-p}
    bool z_squared_central = false;
    /// sign_matrices[p][q]: z^p b = sum_b' S[b'][b] b' z^p on degree-q elements
    std::vector<std::vector<Matrix>> commutation;
    PsiReport psi;
};

/// Degree-zero part of E[z^{-1}] for E = D[z; -1], D finite dimensional,
/// and the check that Psi(a) = (-1)^{p(p-1)/2} a z^{-p} is an algebra
/// isomorphism D -> Lambda.  Throws NotFiniteDimensional.
LocalizationResult localize_z2_degree0(const QuadraticPresentation& dual,
                                       std::size_t word_budget = kDefaultWordBudget);

}  // namespace kszl
