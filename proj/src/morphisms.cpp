#include "kszl/morphisms.hpp"

#include "kszl/constructions.hpp"

namespace kszl {

GeneratorMap make_map(std::string name, PresentationPtr source, PresentationPtr target, Matrix matrix) {
    if (matrix.rows() != target->num_generators() || matrix.cols() != source->num_generators())
        throw Error(ErrorCode::DimensionMismatch, "map matrix must be n_target x n_source");
    GeneratorMap f;
    f.name = std::move(name);
    f.source = std::move(source);
    f.target = std::move(target);
    f.matrix = std::move(matrix);
    return f;
}

GeneratorMap identity_map(PresentationPtr p) {
    auto n = p->num_generators();
    return verify_map(make_map("id", p, p, Matrix::identity(n)));
}

GeneratorMap scalar_map(PresentationPtr p, const FieldElement& c, std::string name) {
    auto n = p->num_generators();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return verify_map(make_map(std::move(name), p, p, std::move(m)));
}

GeneratorMap minus_one(PresentationPtr p) { return scalar_map(std::move(p), FieldElement(-1), "minus_one"); }

namespace {

void check_fields(const GeneratorMap& f) {
    if (!(f.source->field() == f.target->field()))
        throw Error(ErrorCode::FieldMismatch, "map '" + f.name + "' joins algebras over different fields");
}

Vector image_of_relation(const GeneratorMap& f, std::size_t r) {
    return tensor_apply(f.matrix, f.matrix, f.source->relations().row(r));
}

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace

bool preserves_relations(const GeneratorMap& f) {
    check_fields(f);
    const Matrix& target = f.target->relations();
    for (std::size_t r = 0; r < f.source->relation_dim(); ++r)
        if (!solve_membership(target, image_of_relation(f, r))) return false;
    return true;
}

GeneratorMap verify_map(GeneratorMap f) {
    check_fields(f);
    const Matrix& target = f.target->relations();
    for (std::size_t r = 0; r < f.source->relation_dim(); ++r)
        if (!solve_membership(target, image_of_relation(f, r))) throw RelationNotPreserved(r);
    f.verified = true;
    f.automorphism = *f.source == *f.target && invertible(f.matrix) &&
                     f.source->relation_dim() == f.target->relation_dim();
    return f;
}

IsoCertificate verify_iso(const GeneratorMap& f) {
    check_fields(f);
    if (f.matrix.rows() != f.matrix.cols())
        throw Error(ErrorCode::NotInvertible, "generator counts differ: " + std::to_string(f.matrix.cols()) +
                                                  " -> " + std::to_string(f.matrix.rows()));
    if (f.source->relation_dim() != f.target->relation_dim())
        throw Error(ErrorCode::RelationDimMismatch, "dim R " + std::to_string(f.source->relation_dim()) +
                                                        " vs " + std::to_string(f.target->relation_dim()));
    IsoCertificate cert;
    for (std::size_t r = 0; r < f.source->relation_dim(); ++r) {
        auto coeffs = solve_membership(f.target->relations(), image_of_relation(f, r));
        if (!coeffs) throw RelationNotPreserved(r);
        cert.checks.emplace_back(r, std::move(*coeffs));
    }
    cert.inverse = inverse(f.matrix);
    cert.map = f;
    cert.map.verified = true;
    cert.map.automorphism = *f.source == *f.target;
    return cert;
}

bool IsoCertificate::replay() const {
    if (!(map.matrix * inverse == Matrix::identity(map.matrix.rows()))) return false;
    const Matrix& target = map.target->relations();
    for (const auto& [r, coeffs] : checks) {
        Vector img = tensor_apply(map.matrix, map.matrix, map.source->relations().row(r));
        Vector sum(img.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += coeffs[i] * target(i, j);
        if (!(sum == img)) return false;
    }
    return checks.size() == map.source->relation_dim();
}

GeneratorMap IsoCertificate::inverse_map() const {
    return make_map(map.name + "_inv", map.target, map.source, inverse);
}

GeneratorMap compose(const GeneratorMap& f, const GeneratorMap& g) {
    if (!(*g.target == *f.source) || f.matrix.cols() != g.matrix.rows())
        throw Error(ErrorCode::DimensionMismatch, "cannot compose " + f.name + " after " + g.name);
    GeneratorMap h = make_map(f.name + "_o_" + g.name, g.source, f.target, f.matrix * g.matrix);
    h.verified = f.verified && g.verified;
    h.automorphism = f.automorphism && g.automorphism;
    return h;
}

GeneratorMap invert(const GeneratorMap& f) {
    GeneratorMap h = make_map(f.name + "_inv", f.target, f.source, inverse(f.matrix));
    h.verified = f.automorphism;
    h.automorphism = f.automorphism;
    return h;
}

std::vector<Matrix> graded_extension(const TruncatedAlgebra& t, const Matrix& m) {
    const std::size_t n = t.num_generators();
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "endomorphism must be n x n");
    std::vector<Element> images;
    for (std::size_t g = 0; g < n; ++g) images.push_back(Element{1, m.col_vector(g)});
    std::vector<Matrix> out;
    for (int d = 0; d <= t.max_degree(); ++d) {
        Matrix md(t.dim(d), t.dim(d));
        for (std::size_t k = 0; k < t.dim(d); ++k) {
            Element cur = t.one();
            for (int g : t.normal_words(d)[k]) cur = t.multiply(cur, images[g]);
            for (std::size_t r = 0; r < t.dim(d); ++r) md(r, k) = cur.coeffs[r];
        }
        out.push_back(std::move(md));
    }
    return out;
}

FrobeniusData frobenius_data(const TruncatedAlgebra& t) {
    int top = -1;
    for (int d = 1; d <= t.max_degree(); ++d)
        if (t.dim(d) == 0) {
            top = d - 1;
            break;
        }
    if (top < 0)
        throw Error(ErrorCode::TruncationTooShallow,
                    "no vanishing degree within the window 0.." + std::to_string(t.max_degree()));
    if (t.dim(top) != 1)
        throw Error(ErrorCode::NotFrobenius, "top degree " + std::to_string(top) + " has dimension " +
                                                 std::to_string(t.dim(top)));
    FrobeniusData fd;
    fd.socle_degree = top;
    fd.nondegenerate = true;
    for (int i = 0; i <= top; ++i) {
        Matrix pm(t.dim(i), t.dim(top - i));
        for (std::size_t a = 0; a < t.dim(i); ++a)
            for (std::size_t b = 0; b < t.dim(top - i); ++b)
                pm(a, b) = t.multiply(t.basis(i, a), t.basis(top - i, b)).coeffs[0];
        if (!invertible(pm)) fd.nondegenerate = false;
        fd.pairings.push_back(std::move(pm));
    }
    if (!fd.nondegenerate) throw Error(ErrorCode::NotFrobenius, "the socle pairing is degenerate");

    auto pres = share(t.presentation());
    const std::size_t n = t.num_generators();
    Matrix eta(n, n);
    if (top >= 1) {
        // a*b = b*eta(a): sum_k c_k pair_{n-1}(b, g_k) = pair_1(a, b) for all b.
        const Matrix& q = fd.pairings[top - 1];
        Matrix q_inv = inverse(q);
        const Matrix& p1 = fd.pairings[1];
        for (std::size_t a = 0; a < n; ++a) {
            Vector rhs = p1.row_vector(a);
            Vector c = q_inv.apply(rhs);
            for (std::size_t k = 0; k < n; ++k) eta(k, a) = c[k];
        }
    }
    GeneratorMap map = make_map("eta", pres, pres, eta);
    try {
        fd.nakayama = verify_map(map);
    } catch (const RelationNotPreserved&) {
        throw Error(ErrorCode::VerificationFailed, "computed Nakayama map does not preserve relations");
    }
    if (!fd.nakayama.automorphism) throw Error(ErrorCode::VerificationFailed, "Nakayama map is not invertible");
    fd.nakayama_full = graded_extension(t, eta);
    return fd;
}

GeneratorMap nakayama_regular(PresentationPtr p, int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
    QuadraticPresentation dual = quadratic_dual(*p);
    TruncatedAlgebra t(dual, std::max(d + 1, 2));
    FrobeniusData fd = frobenius_data(t);
    if (fd.socle_degree != d)
        throw Error(ErrorCode::NotFrobenius, "the dual has socle degree " + std::to_string(fd.socle_degree) +
                                                 ", expected " + std::to_string(d));
    Matrix nu = fd.nakayama.matrix.transpose();
    if ((d + 1) % 2 != 0)
        for (std::size_t i = 0; i < nu.rows(); ++i)
            for (std::size_t j = 0; j < nu.cols(); ++j) nu(i, j) = -nu(i, j);
    GeneratorMap map = make_map("nu", p, p, std::move(nu));
    try {
        map = verify_map(std::move(map));
    } catch (const RelationNotPreserved& e) {
        throw Error(ErrorCode::VerificationFailed, std::string("nu does not preserve relations: ") + e.what());
    }
    if (!map.automorphism) throw Error(ErrorCode::VerificationFailed, "nu is not an automorphism");
    return map;
}

GeneratorMap nakayama_regular(const QuadraticPresentation& p, int d) { return nakayama_regular(share(p), d); }

}  // namespace kszl
