#include <random>

#include "doctest.h"
#include "kszl/field.hpp"
#include "kszl/matrix.hpp"
#include "oracle/oracle.hpp"

using namespace kszl;

namespace {

FieldSpec gaussian() { return FieldSpec::extension({1, 0, 1}); }  // t^2 + 1

FieldElement q(long p, long d = 1) { return FieldElement(Rational(p, d)); }

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int zero_bias = 0) {
    Matrix m(rows, cols);
    std::uniform_int_distribution<int> coin(0, 2 + zero_bias);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (coin(rng) < 2) m(r, c) = FieldElement(oracle::random_rational(rng));
    return m;
}

oracle::QMatrix to_q(const Matrix& m) {
    oracle::QMatrix out(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).constant();
    return out;
}

}  // namespace

TEST_CASE("field_inverse examples") {
    CHECK(field_inverse(q(2, 3), FieldSpec::rationals()) == q(3, 2));

    FieldSpec f = gaussian();
    FieldElement t = FieldElement::generator(f);
    CHECK(field_inverse(t, f) == -t);
    CHECK(t * (-t) == FieldElement(1));
    CHECK(field_inverse(FieldElement(1), f) == FieldElement(1));
    CHECK(field_inverse(FieldElement(1), FieldSpec::rationals()) == FieldElement(1));
}

TEST_CASE("field_inverse errors") {
    CHECK_THROWS_AS(field_inverse(FieldElement(), FieldSpec::rationals()), Error);
    try {
        (void)FieldElement().inverse();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroInverse);
    }
    // t^2 - 1 is squarefree but reducible: t + 1 is a zero divisor.
    FieldSpec split = FieldSpec::extension({-1, 0, 1});
    FieldElement t = FieldElement::generator(split);
    try {
        (void)(t + FieldElement(1)).inverse();
        FAIL("expected NotInvertible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInvertible);
    }
}

TEST_CASE("field validation") {
    CHECK_THROWS(FieldSpec::extension({1, 2}));      // not monic
    CHECK_THROWS(FieldSpec::extension({1, 2, 1}));   // (t+1)^2
    CHECK_THROWS(FieldSpec::extension({5}));         // degree 0
    CHECK(FieldSpec::extension({1, 0, 1}) == gaussian());
    CHECK(gaussian().degree() == 2);
    CHECK(gaussian().to_string() == "QQ adjoin t mod t^2 + 1");
}

TEST_CASE("canonical forms and printing") {
    FieldSpec f = gaussian();
    FieldElement t = FieldElement::generator(f);
    FieldElement a = (q(1, 2) + t) * FieldElement(2) - t * FieldElement(2);
    CHECK(a == FieldElement(1));
    CHECK(a.is_one());
    CHECK((t * t).to_string() == "-1");
    CHECK((q(1, 2) * t + q(3)).to_string() == "1/2*t + 3");
    CHECK(q(-6, 4).to_string() == "-3/2");
    CHECK(FieldElement::parse("1/2*t + 3", f) == q(1, 2) * t + q(3));
    CHECK(FieldElement::parse("-7/21", FieldSpec::rationals()) == q(-1, 3));
    CHECK_THROWS(FieldElement::parse("t", FieldSpec::rationals()));
    CHECK((q(2) * t).dense(f) == std::vector<Rational>{0, 2});

    // cube roots of unity: t^2 + t + 1
    FieldSpec z3 = FieldSpec::extension({1, 1, 1});
    FieldElement w = FieldElement::generator(z3);
    CHECK(w * w * w == FieldElement(1));
    CHECK(w.inverse() == w * w);
}

TEST_CASE("double inverse is the identity") {
    std::mt19937 rng(11);
    FieldSpec f = FieldSpec::extension({-2, 0, 0, 1});  // t^3 - 2
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Rational> coeffs;
        for (int k = 0; k < 3; ++k) coeffs.push_back(oracle::random_rational(rng));
        FieldElement x(f, coeffs);
        if (x.is_zero()) continue;
        CHECK(x.inverse().inverse() == x);
        CHECK(x * x.inverse() == FieldElement(1));
    }
}

TEST_CASE("rref examples") {
    auto id = rref(Matrix::identity(2));
    CHECK(id.rank == 2);
    CHECK(id.reduced == Matrix::identity(2));
    CHECK(id.pivots == std::vector<std::size_t>{0, 1});

    Matrix m = Matrix::from_rows({{q(1), q(2)}, {q(2), q(4)}}, 2);
    auto r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.reduced == Matrix::from_rows({{q(1), q(2)}, {q(0), q(0)}}, 2));
    CHECK(r.pivots == std::vector<std::size_t>{0});

    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix a = random_matrix(rng, 5, 7, trial % 3);
        CHECK(rref(a).rank == oracle::bareiss_rank(to_q(a), 7));
    }
}

TEST_CASE("rref properties") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> sz(1, 8);
        Matrix a = random_matrix(rng, sz(rng), sz(rng), trial % 4);
        auto r = rref(a);
        CHECK(rref(r.reduced).reduced == r.reduced);
        CHECK(r.rank == rank(a.transpose()));
        CHECK(r.rank == r.pivots.size());
        // pivot rows: leading 1 with zeros above and below
        for (std::size_t i = 0; i < r.rank; ++i)
            for (std::size_t k = 0; k < r.rank; ++k)
                CHECK(r.reduced(k, r.pivots[i]) == FieldElement(k == i ? 1 : 0));
    }
}

TEST_CASE("solve_membership") {
    Matrix e1 = Matrix::from_rows({{q(1), q(0)}}, 2);
    auto c = solve_membership(e1, Vector{q(3), q(0)});
    REQUIRE(c);
    CHECK(*c == Vector{q(3)});
    CHECK_FALSE(solve_membership(e1, Vector{q(0), q(1)}));
    CHECK_THROWS_AS(solve_membership(e1, Vector{q(1)}), Error);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix span = random_matrix(rng, 4, 6, trial % 3);
        Vector coeffs(4);
        for (auto& x : coeffs) x = FieldElement(oracle::random_rational(rng));
        Vector v(6);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 6; ++j) v[j] += coeffs[i] * span(i, j);
        auto sol = solve_membership(span, v);
        REQUIRE(sol);
        Vector back(6);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 6; ++j) back[j] += (*sol)[i] * span(i, j);
        CHECK(back == v);
    }
}

TEST_CASE("nullspace and inverse") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix a = random_matrix(rng, 4, 7, trial % 3);
        Matrix k = nullspace(a);
        CHECK(k.rows() + rank(a) == 7);
        for (std::size_t r = 0; r < k.rows(); ++r) CHECK(is_zero(a.apply(k.row(r))));
    }
    Matrix m = Matrix::from_rows({{q(2), q(1)}, {q(1), q(1)}}, 2);
    CHECK(m * inverse(m) == Matrix::identity(2));
    CHECK_THROWS(inverse(Matrix::from_rows({{q(1), q(2)}, {q(2), q(4)}}, 2)));
}
