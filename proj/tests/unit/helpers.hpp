#pragma once

#include <random>
#include <string>

#include "kszl/constructions.hpp"
#include "kszl/engine.hpp"
#include "kszl/morphisms.hpp"
#include "kszl/presentation.hpp"
#include "oracle/oracle.hpp"

namespace testing {

inline kszl::FieldElement q(long p, long d = 1) { return kszl::FieldElement(kszl::Rational(p, d)); }

inline oracle::QMatrix relation_rows(const kszl::QuadraticPresentation& p) {
    const auto& r = p.relations();
    oracle::QMatrix out(r.rows(), std::vector<kszl::Rational>(r.cols()));
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) out[i][j] = r(i, j).constant();
    return out;
}

/// Random presentation over QQ: n generators, `k` random sparse relations.
inline kszl::QuadraticPresentation random_presentation(std::mt19937& rng, std::size_t n, std::size_t k,
                                                       int sparsity = 3) {
    static const char* names[] = {"x", "y", "z", "w", "u", "v"};
    std::vector<std::string> gens(names, names + n);
    kszl::Matrix rels(0, n * n);
    std::uniform_int_distribution<int> coin(0, sparsity);
    for (std::size_t r = 0; r < k; ++r) {
        kszl::Vector v(n * n);
        for (auto& e : v)
            if (coin(rng) == 0) e = kszl::FieldElement(oracle::random_rational(rng));
        rels.append_row(v);
    }
    return kszl::QuadraticPresentation("R", kszl::FieldSpec::rationals(), gens, rels);
}

inline kszl::PresentationPtr alg(const std::string& text) { return kszl::share(kszl::parse_presentation(text)); }

inline kszl::GeneratorMap diag(kszl::PresentationPtr p, const std::vector<kszl::FieldElement>& d, std::string name = "d") {
    kszl::Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return kszl::verify_map(kszl::make_map(std::move(name), p, p, std::move(m)));
}

inline kszl::GeneratorMap matrix_map(kszl::PresentationPtr p, const std::vector<std::vector<kszl::FieldElement>>& rows) {
    return kszl::verify_map(kszl::make_map("m", p, p, kszl::Matrix::from_rows(rows, rows.size())));
}

/// The skew algebra xy - a1 yx, yz - a2 zy, zx - a3 xz.
inline kszl::PresentationPtr skew3(const kszl::FieldElement& a1, const kszl::FieldElement& a2,
                                   const kszl::FieldElement& a3) {
    kszl::Matrix r(3, 9);
    r(0, 1) = 1, r(0, 3) = -a1;
    r(1, 5) = 1, r(1, 7) = -a2;
    r(2, 6) = 1, r(2, 2) = -a3;
    return kszl::share(kszl::QuadraticPresentation("S", kszl::FieldSpec::rationals(), {"x", "y", "z"}, r));
}

}  // namespace testing
