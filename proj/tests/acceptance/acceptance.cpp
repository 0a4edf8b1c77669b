// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "kszl/resolution.hpp"
#include "kszl/skew3.hpp"
#include "unit/helpers.hpp"

using namespace kszl;
using testing::alg;
using testing::q;

namespace {

struct Check {
    bool ok = true;
    std::size_t count = 0;
    std::ostringstream notes;

    void expect(bool cond, const std::string& what) {
        ++count;
        if (!cond) {
            if (ok) notes << "first failure: " << what;
            ok = false;
        }
    }
};

FieldElement qq(const Rational& r) { return FieldElement(r); }

Matrix rel_rows(std::size_t n, const std::vector<std::vector<std::pair<std::size_t, FieldElement>>>& rels) {
    Matrix m(0, n * n);
    for (const auto& r : rels) {
        Vector v(n * n);
        for (const auto& [i, c] : r) v[i] = c;
        m.append_row(v);
    }
    return m;
}

QuadraticPresentation two_var(const std::string& name,
                              const std::vector<std::vector<std::pair<std::size_t, FieldElement>>>& rels) {
    return QuadraticPresentation(name, FieldSpec::rationals(), {"x", "y"}, rel_rows(2, rels));
}

// word indices for two generators: xx=0 xy=1 yx=2 yy=3
QuadraticPresentation skew2(const FieldElement& a) { return two_var("S", {{{1, q(1)}, {2, -a}}}); }

const char* kJordan = "algebra J over QQ { gens x, y; rels x*y - y*x - x*x; }";

struct CorpusEntry {
    std::string label;
    PresentationPtr algebra;
    int dim;  // global dimension
};

std::vector<CorpusEntry> corpus() {
    return {
        {"k[x]", alg("algebra K over QQ { gens x; }"), 1},
        {"k[x,y]", alg("algebra P over QQ { gens x, y; rels x*y - y*x; }"), 2},
        {"skew(2)", share(skew2(q(2))), 2},
        {"jordan", alg(kJordan), 2},
        {"skew3(2,3,5)", testing::skew3(q(2), q(3), q(5)), 3},
        {"skew3(1,1,2)", testing::skew3(q(1), q(1), q(2)), 3},
    };
}

// ---------------------------------------------------------------------------

void criterion1(Check& c) {
    for (const Rational& a : {Rational(1), Rational(2), Rational(-1), Rational(7, 3)}) {
        auto s = skew2(qq(a));
        auto expected = two_var("E", {{{0, q(1)}}, {{1, qq(a)}, {2, q(1)}}, {{3, q(1)}}});
        c.expect(same_relation_space(quadratic_dual(s), expected), "dual at alpha=" + a.get_str());
    }
}

void criterion2(Check& c) {
    auto j = alg(kJordan);
    auto nu = nakayama_regular(j, 2);
    // columns are images: nu(x) = x, nu(y) = 2x + y
    c.expect(nu.matrix == Matrix::from_rows({{q(1), q(2)}, {q(0), q(1)}}, 2), "jordan nu");
    auto eta = frobenius_data(TruncatedAlgebra(quadratic_dual(*j), 3)).nakayama;
    c.expect(eta.matrix == Matrix::from_rows({{q(-1), q(0)}, {q(-2), q(-1)}}, 2), "jordan dual eta");

    for (auto [a1, a2, a3] : {std::array<long, 3>{2, 3, 5}, std::array<long, 3>{1, 1, 1}}) {
        auto s = testing::skew3(q(a1), q(a2), q(a3));
        auto n = nakayama_regular(s, 3);
        Matrix want(3, 3);
        want(0, 0) = q(a3, a1);
        want(1, 1) = q(a1, a2);
        want(2, 2) = q(a2, a3);
        c.expect(n.matrix == want, "skew3 nu");
    }
}

void criterion3(Check& c) {
    for (const Rational& a : {Rational(2), Rational(-1), Rational(7, 3)}) {
        auto s = share(skew2(qq(a)));
        auto tw = zhang_twist(*s, invert(nakayama_regular(s, 2)));
        c.expect(same_relation_space(tw, skew2(qq(a).inverse())), "6.1(1) twist at " + a.get_str());
    }
    auto j = alg(kJordan);
    auto tj = zhang_twist(*j, invert(nakayama_regular(j, 2)));
    c.expect(same_relation_space(tj, parse_presentation("algebra T over QQ { gens x, y; rels x*y - y*x + x*x; }")),
             "jordan twist");

    for (auto [a1, a2, a3] :
         {std::array<long, 3>{2, 3, 5}, std::array<long, 3>{-1, 4, 7}, std::array<long, 3>{1, 1, 2}}) {
        auto s = testing::skew3(q(a1), q(a2), q(a3));
        auto tw = zhang_twist(*s, invert(nakayama_regular(s, 3)));
        FieldElement b1 = q(a2 * a3) / q(a1), b2 = q(a1 * a3) / q(a2), b3 = q(a1 * a2) / q(a3);
        c.expect(same_relation_space(tw, *testing::skew3(b1, b2, b3)), "skew3 twist");
    }
}

void criterion4(Check& c) {
    for (auto& [label, p, d] : corpus()) {
        auto nu = nakayama_regular(p, d);
        for (const auto& sigma : {identity_map(p), minus_one(p), nu, invert(nu)}) {
            auto pair = share(trivial_extension_pair_form(*p, TwistSpec(sigma)));
            auto ext = share(trivial_extension(*p, TwistSpec(sigma)));
            auto phi = verify_iso(make_map("Phi", pair, ext, Matrix::identity(p->num_generators() + 1)));
            c.expect(phi.replay(), label + " Phi");

            auto hat = hat_automorphism(sigma, ext);
            auto lhs = share(zhang_twist(*ext, invert(hat)));
            auto twisted = share(zhang_twist(*p, invert(sigma)));
            auto rhs = share(trivial_extension(*twisted, TwistSpec(identity_map(twisted))));
            auto cert = verify_iso(make_map("cmp", lhs, rhs, Matrix::identity(lhs->num_generators())));
            c.expect(cert.replay(), label + " twisted extension");
        }
        c.expect(dual_of_square_zero_extension_check(*p).pass(), label + " square-zero dual");
    }
}

void criterion5(Check& c) {
    std::size_t pairs = 0;
    for (auto& [label, p, d] : corpus()) {
        auto loc = localize_z2_degree0(quadratic_dual(*p));
        c.expect(loc.socle_degree == d, label + " socle degree");
        c.expect(loc.z_squared_central, label + " z^2 central");
        c.expect(loc.psi.pass() && loc.psi.failures == 0, label + " Psi");
        std::size_t dim = loc.lambda.dimension();
        c.expect(loc.psi.pairs_checked == dim * dim, label + " exhaustive pairs");
        pairs += loc.psi.pairs_checked;
    }
    c.notes << pairs << " basis pairs";
}

void criterion6(Check& c) {
    const int top = 7;
    for (auto& [label, p, d] : corpus()) {
        auto nu = nakayama_regular(p, d);
        for (const auto& sigma : {identity_map(p), invert(nu)}) {
            auto a = trivial_extension(*p, TwistSpec(sigma));
            auto verdict = koszul_certificate(TruncatedAlgebra(a, 6), 5);
            c.expect(verdict.koszul, label + " KoszulUpTo(5)");
            auto hd = hilbert_prefix(quadratic_dual(a), top);
            for (int i = 0; i <= 5; ++i)
                c.expect(verdict.table(i, i) == hd[i], label + " beta_ii = dim dual_i");

            auto ha = hilbert_prefix(a, top);
            auto hs = hilbert_prefix(*p, top);
            for (int k = 0; k <= top; ++k)
                c.expect(ha[k] == hs[k] + (k ? hs[k - 1] : 0), label + " H_A = (1+t)H_S");
            for (int k = 0; k <= top; ++k) {
                long s = 0;
                for (int i = 0; i <= k; ++i)
                    s += (i % 2 ? -1L : 1L) * static_cast<long>(hd[i]) * static_cast<long>(ha[k - i]);
                c.expect(s == (k == 0 ? 1 : 0), label + " H_A(t) H_dual(-t)");
            }
        }
    }
}

skew3::SkewParams random_params(std::mt19937& rng) {
    auto r = [&] { return qq(oracle::random_rational(rng, true)); };
    return skew3::SkewParams(r(), r(), r());
}

// Mix of unrelated pairs, orbit elements, sign flips and matched products.
skew3::SkewParams related_params(std::mt19937& rng, const skew3::SkewParams& a) {
    std::uniform_int_distribution<int> pick(0, 5), kind(0, 3), coin(0, 1);
    skew3::SkewParams b;
    switch (kind(rng)) {
        case 0:
            return random_params(rng);
        case 1:
            b.alpha = skew3::iso_orbit(a)[pick(rng)].second;
            return b;
        case 2:
            b.alpha = skew3::iso_orbit(a)[pick(rng)].second;
            b.alpha[0] = -b.alpha[0];
            b.alpha[1 + coin(rng)] *= q(-1);
            return b;
        default:
            b = random_params(rng);
            b.alpha[2] = a.product() / (b.alpha[0] * b.alpha[1]);
            return b;
    }
}

void criterion7(Check& c) {
    std::mt19937 rng(2024);
    std::size_t agree = 0, positives = 0;
    for (int k = 0; k < 100; ++k) {
        auto a = random_params(rng);
        auto b = related_params(rng, a);
        auto r = skew3::cross_validate(a, b, 4);
        if (r.agree()) ++agree;
        if (r.closed_form_stable_cm) ++positives;
        c.expect(r.hilbert_preserved, "twist keeps Hilbert series");
        auto v = skew3::classify(a, b);
        c.expect(!v.isomorphic() || v.stable_cm_equivalent(), "iso => stable CM");
        c.expect(!v.stable_cm_equivalent() || v.graded_morita(), "stable CM => Morita");
    }
    c.expect(agree == 100, "cross_validate agreement");

    auto cm = skew3::find_counterexamples(skew3::HuntMode::CmNotIso, 10000, 1);
    auto mo = skew3::find_counterexamples(skew3::HuntMode::MoritaNotCm, 10000, 1);
    c.expect(!cm.pairs.empty() && !mo.pairs.empty(), "counterexamples found");
    for (auto& [a, b] : cm.pairs) {
        auto v = skew3::classify(a, b);
        c.expect(v.stable_cm_equivalent() && !v.isomorphic(), "cm_not_iso reverified");
    }
    for (auto& [a, b] : mo.pairs) {
        auto v = skew3::classify(a, b);
        c.expect(v.graded_morita() && !v.stable_cm_equivalent(), "morita_not_cm reverified");
    }
    c.notes << agree << "/100 agree, " << positives << " positive";
    if (!cm.pairs.empty()) c.notes << "; cm_not_iso " << cm.pairs[0].first.to_string() << " | "
                                   << cm.pairs[0].second.to_string() << " (" << cm.trials << " trials)";
    if (!mo.pairs.empty()) c.notes << "; morita_not_cm " << mo.pairs[0].first.to_string() << " | "
                                   << mo.pairs[0].second.to_string() << " (" << mo.trials << " trials)";
}

void criterion8(Check& c) {
    for (auto& [label, p, d] : corpus()) {
        auto nu = nakayama_regular(p, d);
        auto hs = hilbert_prefix(*p, 8);
        auto bs = betti_table(TruncatedAlgebra(*p, 6), 4);
        for (const auto& sigma : {minus_one(p), nu, invert(nu)}) {
            auto tw = zhang_twist(*p, sigma);
            c.expect(hilbert_prefix(tw, 8) == hs, label + " Hilbert");
            c.expect(betti_table(TruncatedAlgebra(tw, 6), 4).entries == bs.entries, label + " Betti");
        }
        // and the trivial extensions, twisted by hat(nu^-1)
        auto ext = share(trivial_extension(*p, TwistSpec(invert(nu))));
        auto hat = hat_automorphism(invert(nu), ext);
        auto twe = zhang_twist(*ext, hat);
        c.expect(hilbert_prefix(twe, 6) == hilbert_prefix(*ext, 6), label + " extension Hilbert");
        c.expect(betti_table(TruncatedAlgebra(twe, 5), 4).entries == betti_table(TruncatedAlgebra(*ext, 5), 4).entries,
                 label + " extension Betti");
    }
}

void criterion9(Check& c) {
    std::vector<QuadraticPresentation> algebras;
    for (auto& e : corpus()) algebras.push_back(*e.algebra);
    algebras.push_back(parse_presentation("algebra A over QQ { gens x, y; rels x*y - y*x, y*y; }"));
    std::mt19937 rng(77);
    for (int k = 0; k < 12; ++k) algebras.push_back(testing::random_presentation(rng, 2 + k % 2, 1 + k % 4, 2));

    for (const auto& p : algebras) {
        const int top = p.num_generators() > 2 ? 5 : 6;
        TruncatedAlgebra t(p, top);
        oracle::NaiveAlgebra naive(p.num_generators(), testing::relation_rows(p), top);
        for (int d = 0; d <= top; ++d) {
            c.expect(t.dim(d) == naive.dim(d), p.name() + " dim");
            c.expect(t.ideal_dim(d) == naive.ideal_dims[d], p.name() + " ideal dim");
        }
        c.expect(rank(p.relations()) == oracle::bareiss_rank(testing::relation_rows(p), p.relations().cols()),
                 p.name() + " relation rank");
    }
    for (int k = 0; k < 40; ++k) {
        std::uniform_int_distribution<int> size(1, 7);
        std::size_t r = size(rng), cols = size(rng);
        oracle::QMatrix qm(r, std::vector<Rational>(cols));
        Matrix m(r, cols);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = qq(qm[i][j] = oracle::random_rational(rng));
        c.expect(rref(m).rank == oracle::bareiss_rank(qm, cols), "random rank");
    }

    auto ysq = parse_presentation("algebra A over QQ { gens x, y; rels x*y - y*x, y*y; }");
    const int N = 6, hp = 5;
    auto table = betti_table(TruncatedAlgebra(ysq, N), hp);
    oracle::NaiveAlgebra naive(2, testing::relation_rows(ysq), N);
    auto tor = oracle::bar_complex_betti(naive, hp, N);
    for (int i = 0; i <= hp; ++i)
        for (int j = 0; j <= N; ++j) c.expect(table(i, j) == tor[i][j], "k[x,y]/(y^2) beta");
    c.notes << "k[x,y]/(y^2) resolution matches through i<=" << hp << ", j<=" << N;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"Koszul dual of the 2-variable skew plane", criterion1},
        {"Nakayama automorphisms (2- and 3-variable examples)", criterion2},
        {"Zhang twists by nu^-1", criterion3},
        {"Phi, twisted trivial extension and square-zero dual isomorphisms", criterion4},
        {"Psi multiplicativity on the corpus duals", criterion5},
        {"Koszulity and Hilbert identities of trivial extensions", criterion6},
        {"skew3 cross-validation and counterexample search", criterion7},
        {"Zhang-twist invariance of Hilbert series and Betti tables", criterion8},
        {"oracle equivalence", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.notes << " exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!c.ok) ++failed;
        char time[32];
        std::snprintf(time, sizeof time, "%.2fs", secs);
        std::cout << (c.ok ? "PASS" : "FAIL") << " " << i + 1 << ". " << criteria[i].first << " [" << c.count
                  << " checks, " << time << "]";
        if (!c.notes.str().empty()) std::cout << " " << c.notes.str();
        std::cout << "\n";
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failing" : std::string("acceptance: all pass"))
              << "\n";
    return failed ? 1 : 0;
}
