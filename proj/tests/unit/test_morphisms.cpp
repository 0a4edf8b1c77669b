#include "doctest.h"
#include "helpers.hpp"

using namespace kszl;
using testing::alg;
using testing::diag;
using testing::q;

namespace {

const char* kSkew2 = "algebra S over QQ { gens x, y; rels x*y - 2*y*x; }";
const char* kJordan = "algebra J over QQ { gens x, y; rels x*y - y*x - x*x; }";
const char* kPoly2 = "algebra P over QQ { gens x, y; rels x*y - y*x; }";
const char* kPoly3 = "algebra P3 over QQ { gens x, y, z; rels x*y - y*x, y*z - z*y, z*x - x*z; }";
const char* kGauss = "algebra G over QQ adjoin t mod t^2 + 1 { gens x, y; rels x*y - (t)*y*x; }";

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

Matrix rows(std::initializer_list<std::initializer_list<FieldElement>> r) {
    std::vector<Vector> v;
    for (auto& row : r) v.emplace_back(row);
    return Matrix::from_rows(v, v.empty() ? 0 : v[0].size());
}

/// Presentations of Koszul AS-regular algebras with their global dimension.
std::vector<std::pair<PresentationPtr, int>> regular_corpus() {
    return {{alg(kSkew2), 2}, {alg(kJordan), 2}, {alg(kPoly2), 2},
            {alg(kGauss), 2}, {testing::skew3(q(2), q(3), q(5)), 3}, {alg(kPoly3), 3}};
}

}  // namespace

TEST_CASE("verify_map examples") {
    auto s = alg(kSkew2);
    auto nu_inv = diag(s, {q(2), q(1, 2)});
    CHECK(nu_inv.verified);
    CHECK(nu_inv.automorphism);

    auto j = alg(kJordan);
    auto m = verify_map(make_map("nu_inv", j, j, rows({{q(1), q(-2)}, {q(0), q(1)}})));
    CHECK(m.automorphism);

    try {
        verify_map(make_map("swap", s, s, rows({{q(0), q(1)}, {q(1), q(0)}})));
        FAIL("expected RelationNotPreserved");
    } catch (const RelationNotPreserved& e) {
        CHECK(e.index() == 0);
        CHECK(e.code() == ErrorCode::RelationNotPreserved);
    }
    CHECK_FALSE(preserves_relations(make_map("swap", s, s, rows({{q(0), q(1)}, {q(1), q(0)}}))));

    // a verified but singular endomorphism is not an automorphism
    auto zero = verify_map(make_map("zero", s, s, Matrix(2, 2)));
    CHECK(zero.verified);
    CHECK_FALSE(zero.automorphism);

    auto g = alg(kGauss);
    CHECK(code_of([&] { verify_map(make_map("f", s, g, Matrix::identity(2))); }) == ErrorCode::FieldMismatch);
    CHECK(code_of([&] { make_map("f", s, s, Matrix(3, 2)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("verify_iso and certificates") {
    auto s = alg(kSkew2);
    auto id = verify_iso(identity_map(s));
    CHECK(id.inverse == Matrix::identity(2));
    CHECK(id.replay());

    auto nu_inv = diag(s, {q(2), q(1, 2)});
    auto cert = verify_iso(nu_inv);
    CHECK(cert.replay());
    auto back = verify_iso(cert.inverse_map());
    CHECK(back.replay());
    CHECK(back.inverse == nu_inv.matrix);

    auto j = alg(kJordan);
    auto kx = alg("algebra K over QQ { gens x; }");
    CHECK(code_of([&] { verify_iso(make_map("f", kx, s, rows({{q(1)}, {q(0)}}))); }) == ErrorCode::NotInvertible);
    auto free2 = alg("algebra F over QQ { gens x, y; }");
    CHECK(code_of([&] { verify_iso(make_map("f", free2, s, Matrix::identity(2))); }) ==
          ErrorCode::RelationDimMismatch);
    CHECK(code_of([&] { verify_iso(make_map("f", s, j, Matrix::identity(2))); }) == ErrorCode::RelationNotPreserved);
    CHECK(code_of([&] { verify_iso(make_map("f", s, s, Matrix(2, 2))); }) == ErrorCode::NotInvertible);
}

TEST_CASE("Phi: pair form of the trivial extension") {
    for (auto& [p, d] : regular_corpus()) {
        (void)d;
        for (const auto& sigma : {identity_map(p), minus_one(p), nakayama_regular(p, d)}) {
            auto pair = share(trivial_extension_pair_form(*p, TwistSpec(sigma)));
            auto ext = share(trivial_extension(*p, TwistSpec(sigma)));
            CHECK(pair->generators() == ext->generators());
            auto cert = verify_iso(make_map("Phi", pair, ext, Matrix::identity(p->num_generators() + 1)));
            CHECK(cert.replay());
            CHECK(same_relation_space(*pair, *ext));
        }
    }
}

TEST_CASE("compose and invert") {
    auto j = alg(kJordan);
    auto nu = nakayama_regular(j, 2);
    auto nu_inv = invert(nu);
    auto both = compose(nu, nu_inv);
    CHECK(both.matrix == Matrix::identity(2));
    CHECK(both.verified);
    CHECK(both.automorphism);
    CHECK(code_of([&] { invert(make_map("z", j, j, Matrix(2, 2))); }) == ErrorCode::NotInvertible);
    auto kx = alg("algebra K over QQ { gens x; }");
    CHECK(code_of([&] { compose(identity_map(kx), nu); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("frobenius_data examples") {
    auto d = quadratic_dual(*alg(kSkew2));
    auto fd = frobenius_data(TruncatedAlgebra(d, 3));
    CHECK(fd.socle_degree == 2);
    CHECK(fd.nondegenerate);
    CHECK(fd.nakayama.matrix == rows({{q(-1, 2), q(0)}, {q(0), q(-2)}}));
    CHECK(fd.nakayama.automorphism);
    REQUIRE(fd.nakayama_full.size() == 4);
    CHECK(fd.nakayama_full[2] == rows({{q(1)}}));  // -1/2 * -2 on the socle

    auto kx2 = parse_presentation("algebra D over QQ { gens x; rels x*x; }");
    auto fx = frobenius_data(TruncatedAlgebra(kx2, 2));
    CHECK(fx.socle_degree == 1);
    CHECK(fx.nakayama.matrix == Matrix::identity(1));

    auto d3 = quadratic_dual(*testing::skew3(q(2), q(3), q(5)));
    auto f3 = frobenius_data(TruncatedAlgebra(d3, 4));
    CHECK(f3.socle_degree == 3);
    CHECK(f3.nakayama.matrix == rows({{q(5, 2), q(0), q(0)}, {q(0), q(2, 3), q(0)}, {q(0), q(0), q(3, 5)}}));

    // eta on the dual of the Jordan plane pins the transpose convention
    auto dj = quadratic_dual(*alg(kJordan));
    CHECK(frobenius_data(TruncatedAlgebra(dj, 3)).nakayama.matrix == rows({{q(-1), q(0)}, {q(-2), q(-1)}}));

    // a*b = b*eta(a) holds on all of A_1 x A_{n-1}
    for (auto& [p, dim] : regular_corpus()) {
        TruncatedAlgebra t(quadratic_dual(*p), dim + 1);
        auto f = frobenius_data(t);
        for (std::size_t a = 0; a < t.num_generators(); ++a)
            for (std::size_t b = 0; b < t.dim(dim - 1); ++b) {
                Element eta_a{1, f.nakayama.matrix.col_vector(a)};
                CHECK(t.multiply(t.generator(a), t.basis(dim - 1, b)) == t.multiply(t.basis(dim - 1, b), eta_a));
            }
    }

    auto poly = parse_presentation(kPoly2);
    CHECK(code_of([&] { frobenius_data(TruncatedAlgebra(poly, 4)); }) == ErrorCode::TruncationTooShallow);
    auto wide = parse_presentation("algebra W over QQ { gens x, y; rels x*x, x*y, y*x, y*y; }");
    CHECK(code_of([&] { frobenius_data(TruncatedAlgebra(wide, 3)); }) == ErrorCode::NotFrobenius);
    auto degenerate = parse_presentation(
        "algebra E over QQ { gens x, y, z; rels x*x, x*z, y*x, y*y, y*z, z*x, z*y, z*z; }");
    CHECK(code_of([&] { frobenius_data(TruncatedAlgebra(degenerate, 3)); }) == ErrorCode::NotFrobenius);
}

TEST_CASE("nakayama_regular examples") {
    CHECK(nakayama_regular(alg(kJordan), 2).matrix == rows({{q(1), q(2)}, {q(0), q(1)}}));
    CHECK(nakayama_regular(alg(kSkew2), 2).matrix == rows({{q(1, 2), q(0)}, {q(0), q(2)}}));
    CHECK(nakayama_regular(alg("algebra K over QQ { gens x; }"), 1).matrix == Matrix::identity(1));
    CHECK(nakayama_regular(alg(kPoly2), 2).matrix == Matrix::identity(2));
    CHECK(nakayama_regular(alg(kPoly3), 3).matrix == Matrix::identity(3));
    CHECK(nakayama_regular(testing::skew3(q(2), q(3), q(5)), 3).matrix ==
          rows({{q(5, 2), q(0), q(0)}, {q(0), q(2, 3), q(0)}, {q(0), q(0), q(3, 5)}}));

    CHECK(code_of([&] { nakayama_regular(alg(kSkew2), 3); }) == ErrorCode::NotFrobenius);
    CHECK(code_of([&] { nakayama_regular(alg("algebra M over QQ { gens x, y; rels x*y; }"), 2); }) ==
          ErrorCode::NotFrobenius);
    CHECK(code_of([&] { nakayama_regular(alg(kSkew2), 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("twisting the trivial extension by hat inverse") {
    std::size_t checked = 0;
    for (auto& [p, d] : regular_corpus()) {
        auto nu = nakayama_regular(p, d);
        for (const auto& sigma : {identity_map(p), minus_one(p), nu, invert(nu)}) {
            auto ext = share(trivial_extension(*p, TwistSpec(sigma)));
            auto hat = hat_automorphism(sigma, ext);
            auto lhs = share(zhang_twist(*ext, invert(hat)));
            auto twisted = share(zhang_twist(*p, invert(sigma)));
            auto rhs = share(trivial_extension(*twisted, TwistSpec(identity_map(twisted))));
            CHECK(same_relation_space(*lhs, *rhs));
            auto cert = verify_iso(make_map("cmp", lhs, rhs, Matrix::identity(lhs->num_generators())));
            CHECK(cert.replay());
            ++checked;
        }
    }
    CHECK(checked == 24);
}

TEST_CASE("dual of square-zero and polynomial extensions") {
    auto kx = parse_presentation("algebra K over QQ { gens x; }");
    auto rep = dual_of_square_zero_extension_check(kx);
    CHECK(rep.pass());
    CHECK(same_relation_space(rep.extension_dual,
                              parse_presentation("algebra A over QQ { gens x, y; rels x*x, x*y + y*x; }")));
    CHECK(same_relation_space(rep.ore_of_dual, rep.extension_dual));
    CHECK(dual_of_square_zero_extension_check(parse_presentation(kPoly2)).pass());
    CHECK(dual_of_square_zero_extension_check(parse_presentation(kJordan)).pass());
    CHECK(dual_of_square_zero_extension_check(*testing::skew3(q(2), q(3), q(5))).pass());
    CHECK(dual_of_square_zero_extension_check(parse_presentation(kGauss)).pass());
}

TEST_CASE("localization of the dual at z^2") {
    auto kx2 = parse_presentation("algebra D over QQ { gens x; rels x*x; }");
    auto loc = localize_z2_degree0(kx2);
    CHECK(loc.socle_degree == 1);
    CHECK(loc.z_squared_central);
    REQUIRE(loc.lambda.dimension() == 2);
    CHECK(loc.lambda.labels == std::vector<std::string>{"1", "x*z^-1"});
    CHECK(is_zero(loc.lambda.mult[1][1]));
    CHECK(loc.lambda.mult[0][1] == Vector{q(0), q(1)});
    CHECK(loc.psi.pass());
    CHECK(loc.psi.pairs_checked == 4);
    CHECK(loc.lambda.is_associative());

    // sign rule (a z^-p)(b z^-q) = (-1)^{pq} ab z^-(p+q)
    auto d3 = quadratic_dual(*testing::skew3(q(2), q(3), q(5)));
    auto l3 = localize_z2_degree0(d3);
    CHECK(l3.socle_degree == 3);
    CHECK(l3.psi.pass());
    CHECK(l3.psi.pairs_checked == 64);
    auto base = FiniteAlgebraTable::from_truncated(TruncatedAlgebra(d3, 4));
    for (std::size_t i = 0; i < base.dimension(); ++i)
        for (std::size_t j = 0; j < base.dimension(); ++j) {
            Vector expect = base.mult[i][j];
            if ((base.degrees[i] * base.degrees[j]) % 2)
                for (auto& v : expect) v = -v;
            CHECK(l3.lambda.mult[i][j] == expect);
        }

    for (auto& [p, d] : regular_corpus()) {
        auto l = localize_z2_degree0(quadratic_dual(*p));
        CHECK(l.socle_degree == d);
        CHECK(l.psi.pass());
        CHECK(l.z_squared_central);
    }
    CHECK(code_of([&] { localize_z2_degree0(parse_presentation(kPoly2)); }) == ErrorCode::NotFiniteDimensional);
}

TEST_CASE("finite algebra tables") {
    auto t = FiniteAlgebraTable::from_truncated(TruncatedAlgebra(quadratic_dual(*alg(kJordan)), 3));
    CHECK(t.dimension() == 4);
    CHECK(t.dims == std::vector<std::size_t>{1, 2, 1});
    CHECK(t.is_associative());
    CHECK(t.is_unital());
    CHECK(code_of([&] { FiniteAlgebraTable::from_truncated(TruncatedAlgebra(parse_presentation(kPoly2), 3)); }) ==
          ErrorCode::NotFiniteDimensional);
}
