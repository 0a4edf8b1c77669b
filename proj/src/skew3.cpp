#include "kszl/skew3.hpp"

#include <random>
#include <sstream>

#include "kszl/constructions.hpp"
#include "kszl/engine.hpp"
#include "kszl/morphisms.hpp"

namespace kszl::skew3 {

SkewParams::SkewParams(FieldElement a1, FieldElement a2, FieldElement a3, FieldSpec f)
    : alpha{std::move(a1), std::move(a2), std::move(a3)}, field(std::move(f)) {}

void SkewParams::validate() const {
    for (int i = 0; i < 3; ++i)
        if (alpha[i].is_zero())
            throw Error(ErrorCode::ZeroParameter, "alpha" + std::to_string(i + 1) + " is zero");
}

std::string SkewParams::to_string() const {
    return alpha[0].to_string() + ", " + alpha[1].to_string() + ", " + alpha[2].to_string();
}

SkewParams SkewParams::parse(const std::string& text, const FieldSpec& f) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        throw Error(ErrorCode::InvalidArgument, "expected three comma-separated parameters, got '" + text + "'");
    SkewParams p(FieldElement::parse(parts[0], f), FieldElement::parse(parts[1], f), FieldElement::parse(parts[2], f),
                 f);
    return p;
}

SkewVerdict::SkewVerdict(bool isomorphic, bool stable_cm, bool morita, std::string iso_witness,
                         std::string cm_witness, std::string morita_witness)
    : isomorphic_(isomorphic),
      stable_cm_(stable_cm),
      morita_(morita),
      iso_witness_(std::move(iso_witness)),
      cm_witness_(std::move(cm_witness)),
      morita_witness_(std::move(morita_witness)) {
    if ((isomorphic_ && !stable_cm_) || (stable_cm_ && !morita_))
        throw Error(ErrorCode::VerificationFailed, "implication chain iso => stable CM => Morita violated");
}

std::vector<std::pair<std::string, std::array<FieldElement, 3>>> iso_orbit(const SkewParams& a) {
    a.validate();
    const auto& [a1, a2, a3] = a.alpha;
    FieldElement i1 = a1.inverse(), i2 = a2.inverse(), i3 = a3.inverse();
    return {
        {"(a1, a2, a3)", {a1, a2, a3}},
        {"(a3, a1, a2)", {a3, a1, a2}},
        {"(a2, a3, a1)", {a2, a3, a1}},
        {"(a1^-1, a3^-1, a2^-1)", {i1, i3, i2}},
        {"(a3^-1, a2^-1, a1^-1)", {i3, i2, i1}},
        {"(a2^-1, a1^-1, a3^-1)", {i2, i1, i3}},
    };
}

namespace {

std::string match_orbit(const SkewParams& a, const SkewParams& b) {
    for (const auto& [label, t] : iso_orbit(a))
        if (t == b.alpha) return label;
    return "";
}

std::string match_cm(const SkewParams& a, const SkewParams& b) {
    const auto& [a1, a2, a3] = a.alpha;
    FieldElement p = a.product(), pi = p.inverse();
    FieldElement s1 = a1 * a1, s2 = a2 * a2, s3 = a3 * a3;
    FieldElement n1 = s1.inverse(), n2 = s2.inverse(), n3 = s3.inverse();
    const std::vector<std::pair<std::string, std::array<FieldElement, 4>>> tuples = {
        {"(a1^2, a2^2, a3^2, P)", {s1, s2, s3, p}},
        {"(a3^2, a1^2, a2^2, P)", {s3, s1, s2, p}},
        {"(a2^2, a3^2, a1^2, P)", {s2, s3, s1, p}},
        {"(a1^-2, a3^-2, a2^-2, P^-1)", {n1, n3, n2, pi}},
        {"(a3^-2, a2^-2, a1^-2, P^-1)", {n3, n2, n1, pi}},
        {"(a2^-2, a1^-2, a3^-2, P^-1)", {n2, n1, n3, pi}},
    };
    const auto& [b1, b2, b3] = b.alpha;
    std::array<FieldElement, 4> target{b1 * b1, b2 * b2, b3 * b3, b.product()};
    for (const auto& [label, t] : tuples)
        if (t == target) return label;
    return "";
}

std::string match_morita(const SkewParams& a, const SkewParams& b) {
    FieldElement p = a.product(), q = b.product();
    if (q == p) return "P";
    if (q == p.inverse()) return "P^-1";
    return "";
}

}  // namespace

SkewVerdict classify(const SkewParams& a, const SkewParams& b) {
    a.validate();
    b.validate();
    std::string iso = match_orbit(a, b), cm = match_cm(a, b), mor = match_morita(a, b);
    return SkewVerdict(!iso.empty(), !cm.empty(), !mor.empty(), iso, cm, mor);
}

QuadraticPresentation build_algebra(const SkewParams& p, const std::string& name) {
    p.validate();
    Matrix r(3, 9);
    r(0, 0 * 3 + 1) = 1, r(0, 1 * 3 + 0) = -p.alpha[0];  // xy - a1 yx
    r(1, 1 * 3 + 2) = 1, r(1, 2 * 3 + 1) = -p.alpha[1];  // yz - a2 zy
    r(2, 2 * 3 + 0) = 1, r(2, 0 * 3 + 2) = -p.alpha[2];  // zx - a3 xz
    return QuadraticPresentation(name, p.field, {"x", "y", "z"}, r);
}

SkewParams read_params(const QuadraticPresentation& p) {
    if (p.num_generators() != 3 || p.relation_dim() != 3)
        throw Error(ErrorCode::VerificationFailed, "not a 3-variable skew presentation");
    const Matrix& rel = p.relations();
    auto coefficient = [&](std::size_t i, std::size_t j) {
        const std::size_t ij = i * 3 + j, ji = j * 3 + i;
        for (std::size_t r = 0; r < rel.rows(); ++r) {
            std::size_t nonzero = 0;
            for (std::size_t c = 0; c < 9; ++c)
                if (!rel(r, c).is_zero()) ++nonzero;
            if (nonzero != 2 || rel(r, ij).is_zero() || rel(r, ji).is_zero()) continue;
            return -(rel(r, ji) / rel(r, ij));
        }
        throw Error(ErrorCode::VerificationFailed, "no relation of the form g_i g_j - c g_j g_i");
    };
    return SkewParams(coefficient(0, 1), coefficient(1, 2), coefficient(2, 0), p.field());
}

CrossReport cross_validate(const SkewParams& a, const SkewParams& b, int max_degree) {
    CrossReport rep;
    rep.a = a;
    rep.b = b;
    rep.window = max_degree;
    rep.closed_form_stable_cm = classify(a, b).stable_cm_equivalent();
    rep.hilbert_preserved = true;
    auto twist = [&](const SkewParams& p, std::array<FieldElement, 3>& nu_diag) {
        auto s = share(build_algebra(p));
        GeneratorMap nu = nakayama_regular(s, 3);
        for (int i = 0; i < 3; ++i) nu_diag[i] = nu.matrix(i, i);
        QuadraticPresentation tw = zhang_twist(*s, invert(nu));
        if (!(hilbert_prefix(tw, max_degree) == hilbert_prefix(*s, max_degree))) rep.hilbert_preserved = false;
        return read_params(tw);
    };
    rep.twisted_a = twist(a, rep.nu_a);
    rep.twisted_b = twist(b, rep.nu_b);
    rep.pipeline_stable_cm = classify(rep.twisted_a, rep.twisted_b).isomorphic();
    return rep;
}

std::string to_string(HuntMode mode) { return mode == HuntMode::CmNotIso ? "cm_not_iso" : "morita_not_cm"; }

HuntMode parse_hunt_mode(const std::string& text) {
    if (text == "cm_not_iso") return HuntMode::CmNotIso;
    if (text == "morita_not_cm") return HuntMode::MoritaNotCm;
    throw Error(ErrorCode::InvalidArgument, "unknown hunt mode '" + text + "' (cm_not_iso, morita_not_cm)");
}

HuntResult find_counterexamples(HuntMode mode, std::size_t budget, std::uint64_t seed, std::size_t max_hits) {
    HuntResult res{mode, {}, 0, false};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), coin(0, 1), pick(0, 5);
    auto small = [&] {
        int n = 0;
        while (n == 0) n = num(rng);
        return FieldElement(Rational(n, den(rng)));
    };
    while (res.trials < budget && res.pairs.size() < max_hits) {
        ++res.trials;
        SkewParams a(small(), small(), small());
        SkewParams b;
        if (mode == HuntMode::CmNotIso) {
            // an orbit element with two signs flipped keeps squares and product
            b.alpha = iso_orbit(a)[pick(rng)].second;
            int keep = pick(rng) % 3;
            for (int i = 0; i < 3; ++i)
                if (i != keep && coin(rng)) b.alpha[i] = -b.alpha[i];
            if (coin(rng)) b.alpha[keep] = -b.alpha[keep];
        } else {
            FieldElement target = coin(rng) ? a.product() : a.product().inverse();
            b.alpha[0] = small();
            b.alpha[1] = small();
            b.alpha[2] = target / (b.alpha[0] * b.alpha[1]);
        }
        SkewVerdict v = classify(a, b);
        bool hit = mode == HuntMode::CmNotIso ? (v.stable_cm_equivalent() && !v.isomorphic())
                                              : (v.graded_morita() && !v.stable_cm_equivalent());
        if (hit) res.pairs.emplace_back(a, b);
    }
    res.inconclusive = res.pairs.empty();
    return res;
}

}  // namespace kszl::skew3
