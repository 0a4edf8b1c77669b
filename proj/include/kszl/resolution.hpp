#pragma once

#include <string>
#include <vector>

#include "kszl/engine.hpp"

namespace kszl {

/// A vector in a graded free right module: one homogeneous component per
/// generator (component h lives in A_{degree - deg h}, empty when negative).
using ModuleElement = std::vector<Element>;

/// Minimal graded free resolution ... -> F_1 -> F_0 -> k of the trivial right
/// module, computed through homological degree p and internal degree N.
struct MinimalResolution {
    int homological_bound = 0;  // p
    int internal_bound = 0;     // N
    /// degrees[i]: generator degrees of F_i, nondecreasing.
    std::vector<std::vector<int>> degrees;
    /// differential[i][g]: image of generator g of F_i in F_{i-1} (i >= 1).
    std::vector<std::vector<ModuleElement>> differential;
};

/// Throws InvalidArgument unless 1 <= p <= N, BudgetExceeded when a graded
/// piece of a free module exceeds `budget` dimensions.
MinimalResolution minimal_resolution(const TruncatedAlgebra& t, int p, std::size_t budget = kDefaultWordBudget);

struct BettiTable {
    int homological_bound = 0;
    int internal_bound = 0;
    /// entries[i][j] for 0 <= i <= p, 0 <= j <= N.
    std::vector<std::vector<std::size_t>> entries;

    std::size_t operator()(int i, int j) const { return entries.at(i).at(j); }
    /// Internal degrees up to this one are exact; the top one is reported but
    /// not used for verdicts.
    int reliable_degree() const { return internal_bound - 1; }
    /// beta_{i,i} for i = 0..p.
    std::vector<std::size_t> diagonal() const;
    /// Aligned text grid, rows i, columns j.
    std::string to_string() const;
};

BettiTable betti_table(const MinimalResolution& r);
BettiTable betti_table(const TruncatedAlgebra& t, int p, std::size_t budget = kDefaultWordBudget);

struct KoszulVerdict {
    bool koszul = false;
    int homological_bound = 0;
    int reliable_degree = 0;
    /// First off-diagonal nonzero (i, j), in order of i then j.
    int fail_i = -1;
    int fail_j = -1;
    /// beta_{i,i} against dim (A^!)_i.
    std::vector<std::size_t> diagonal;
    std::vector<std::size_t> dual_dims;
    bool dual_matches = false;
    /// sum (-1)^i beta_{i,i} t^i times H_A(t) is 1 through this order.
    bool hilbert_identity = false;
    BettiTable table;

    /// "KoszulUpTo(p) [window j<=N-1]" or "FailsAt(i,j) [window ...]".
    std::string to_string() const;
};

KoszulVerdict koszul_certificate(const TruncatedAlgebra& t, int p, std::size_t budget = kDefaultWordBudget);

/// Omega^d k (d), presented as the cokernel of d_{d+1}: F_{d+1} -> F_d.
struct SyzygyPresentation {
    int stage = 0;
    int valid_to = 0;  // internal degree N, before the shift
    /// Generator degrees of F_d shifted by -d.
    std::vector<int> generator_degrees;
    /// Embedding of each generator into F_{d-1} (empty for d = 0).
    std::vector<ModuleElement> generator_images;
    /// Columns of d_{d+1}, one per relation, each with one component per generator.
    std::vector<ModuleElement> relations;
    /// No relations within the window.
    bool free() const { return relations.empty(); }
};

SyzygyPresentation syzygy_presentation(const TruncatedAlgebra& t, int d, std::size_t budget = kDefaultWordBudget);

/// Applies the differential d_i to an element of F_i, returning an element of F_{i-1}.
ModuleElement apply_differential(const TruncatedAlgebra& t, const MinimalResolution& r, int i,
                                 const ModuleElement& x);

}  // namespace kszl
