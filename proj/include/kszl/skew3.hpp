#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kszl/field.hpp"
#include "kszl/presentation.hpp"

namespace kszl::skew3 {

/// Coefficients of k<x,y,z>/(xy - a1 yx, yz - a2 zy, zx - a3 xz).
struct SkewParams {
    std::array<FieldElement, 3> alpha;
    FieldSpec field = FieldSpec::rationals();

    SkewParams() = default;
    SkewParams(FieldElement a1, FieldElement a2, FieldElement a3, FieldSpec f = FieldSpec::rationals());

    FieldElement product() const { return alpha[0] * alpha[1] * alpha[2]; }
    /// Throws ZeroParameter.
    void validate() const;
    /// "2, 3, 5"
    std::string to_string() const;
    /// Comma-separated field elements, e.g. "2,3,-1/2".
    static SkewParams parse(const std::string& text, const FieldSpec& f = FieldSpec::rationals());
    friend bool operator==(const SkewParams& a, const SkewParams& b) { return a.alpha == b.alpha; }
};

/// iso => stable CM equivalent => graded Morita equivalent; the constructor
/// rejects anything else.
class SkewVerdict {
public:
    SkewVerdict(bool isomorphic, bool stable_cm, bool morita, std::string iso_witness, std::string cm_witness,
                std::string morita_witness);

    bool isomorphic() const { return isomorphic_; }
    bool stable_cm_equivalent() const { return stable_cm_; }
    bool graded_morita() const { return morita_; }
    /// Orbit element / tuple that matched, e.g. "(a3, a1, a2)"; empty when false.
    const std::string& iso_witness() const { return iso_witness_; }
    const std::string& cm_witness() const { return cm_witness_; }
    /// "P" or "P^-1"
    const std::string& morita_witness() const { return morita_witness_; }

private:
    bool isomorphic_, stable_cm_, morita_;
    std::string iso_witness_, cm_witness_, morita_witness_;
};

/// The six tuples that b is compared against for isomorphism.
std::vector<std::pair<std::string, std::array<FieldElement, 3>>> iso_orbit(const SkewParams& a);

/// Throws ZeroParameter.
SkewVerdict classify(const SkewParams& a, const SkewParams& b);

/// Throws ZeroParameter.
QuadraticPresentation build_algebra(const SkewParams& p, const std::string& name = "S");

/// Reads the coefficients back from a presentation spanned by relations of
/// the form xy - c yx, yz - c' zy, zx - c'' xz.  Throws VerificationFailed.
SkewParams read_params(const QuadraticPresentation& p);

struct CrossReport {
    SkewParams a, b;
    /// Coefficients of S^{nu^{-1}} for each side.
    SkewParams twisted_a, twisted_b;
    /// nu on generators, diagonal entries.
    std::array<FieldElement, 3> nu_a, nu_b;
    bool pipeline_stable_cm = false;
    bool closed_form_stable_cm = false;
    /// Hilbert prefixes of S and S^{nu^{-1}} agree through degree N.
    bool hilbert_preserved = false;
    int window = 0;
    bool agree() const { return pipeline_stable_cm == closed_form_stable_cm && hilbert_preserved; }
};

/// Stable CM equivalence recomputed through nakayama_regular and zhang_twist,
/// then the isomorphism criterion on the twisted tuples.
CrossReport cross_validate(const SkewParams& a, const SkewParams& b, int max_degree = 4);

enum class HuntMode { CmNotIso, MoritaNotCm };

struct HuntResult {
    HuntMode mode;
    std::vector<std::pair<SkewParams, SkewParams>> pairs;
    std::size_t trials = 0;
    /// Budget exhausted without a hit.
    bool inconclusive = false;
};

/// Seeded search over small rational tuples for pairs where the weaker
/// condition holds and the stronger fails.  Stops after `max_hits` hits.
HuntResult find_counterexamples(HuntMode mode, std::size_t budget, std::uint64_t seed = 1, std::size_t max_hits = 3);

std::string to_string(HuntMode mode);
/// "cm_not_iso" / "morita_not_cm"; throws InvalidArgument.
HuntMode parse_hunt_mode(const std::string& text);

}  // namespace kszl::skew3
