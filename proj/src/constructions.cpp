#include "kszl/constructions.hpp"

#include <algorithm>

namespace kszl {

// ---------------------------------------------------------------------------
// FiniteAlgebraTable

Vector FiniteAlgebraTable::multiply(const Vector& a, const Vector& b) const {
    Vector out(dimension());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            FieldElement c = a[i] * b[j];
            const Vector& e = mult[i][j];
            for (std::size_t k = 0; k < e.size(); ++k)
                if (!e[k].is_zero()) out[k] += c * e[k];
        }
    }
    return out;
}

bool FiniteAlgebraTable::is_associative() const {
    const std::size_t n = dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Vector ek(n);
                ek[k] = 1;
                Vector ei(n);
                ei[i] = 1;
                if (!(multiply(mult[i][j], ek) == multiply(ei, mult[j][k]))) return false;
            }
    return true;
}

bool FiniteAlgebraTable::is_unital() const {
    const std::size_t n = dimension();
    for (std::size_t i = 0; i < n; ++i) {
        Vector ei(n);
        ei[i] = 1;
        if (!(mult[unit][i] == ei) || !(mult[i][unit] == ei)) return false;
    }
    return true;
}

FiniteAlgebraTable FiniteAlgebraTable::from_truncated(const TruncatedAlgebra& t) {
    int top = -1;
    for (int d = 0; d <= t.max_degree(); ++d)
        if (t.dim(d) == 0) {
            top = d - 1;
            break;
        }
    if (top < 0) throw Error(ErrorCode::NotFiniteDimensional, "algebra does not vanish within the window");

    FiniteAlgebraTable tab;
    std::vector<std::size_t> offset;
    for (int d = 0; d <= top; ++d) {
        offset.push_back(tab.labels.size());
        tab.dims.push_back(t.dim(d));
        for (const auto& w : t.normal_words(d)) {
            std::string label;
            for (std::size_t i = 0; i < w.size(); ++i)
                label += (i ? "*" : "") + t.presentation().generators()[w[i]];
            tab.labels.push_back(label.empty() ? "1" : label);
            tab.degrees.push_back(d);
        }
    }
    const std::size_t n = tab.labels.size();
    tab.mult.assign(n, std::vector<Vector>(n, Vector(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int p = tab.degrees[i], q = tab.degrees[j];
            if (p + q > top) continue;
            Element prod = t.multiply(t.basis(p, i - offset[p]), t.basis(q, j - offset[q]));
            for (std::size_t k = 0; k < prod.coeffs.size(); ++k) tab.mult[i][j][offset[p + q] + k] = prod.coeffs[k];
        }
    return tab;
}

// ---------------------------------------------------------------------------
// constructions

QuadraticPresentation quadratic_dual(const QuadraticPresentation& p) {
    const std::size_t n = p.num_generators();
    Matrix perp = p.relation_dim() == 0 ? Matrix::identity(n * n) : nullspace(p.relations());
    return QuadraticPresentation(p.name() + "_dual", p.field(), p.generators(), perp);
}

namespace {

void require_automorphism_of(const GeneratorMap& sigma, const QuadraticPresentation& p) {
    if (!(*sigma.source == p) || !(*sigma.target == p))
        throw Error(ErrorCode::NotAnAutomorphism, "'" + sigma.name + "' is not a map from " + p.name() + " to itself");
    if (sigma.automorphism) return;
    GeneratorMap checked;
    try {
        checked = verify_map(sigma);
    } catch (const RelationNotPreserved& e) {
        throw Error(ErrorCode::NotAnAutomorphism, e.what());
    }
    if (!checked.automorphism) throw Error(ErrorCode::NotAnAutomorphism, "'" + sigma.name + "' is not invertible");
}

}  // namespace

QuadraticPresentation zhang_twist(const QuadraticPresentation& p, const GeneratorMap& sigma) {
    require_automorphism_of(sigma, p);
    const std::size_t n = p.num_generators();
    Matrix id = Matrix::identity(n);
    Matrix inv = inverse(sigma.matrix);
    Matrix rels(0, n * n);
    for (std::size_t r = 0; r < p.relation_dim(); ++r) rels.append_row(tensor_apply(id, inv, p.relations().row(r)));
    return QuadraticPresentation(p.name() + "_tw", p.field(), p.generators(), rels);
}

namespace {

Matrix embed_relations(const QuadraticPresentation& p, std::size_t n_new) {
    const std::size_t n = p.num_generators();
    Matrix out(0, n_new * n_new);
    Vector row(n_new * n_new);
    for (std::size_t r = 0; r < p.relation_dim(); ++r) {
        std::fill(row.begin(), row.end(), FieldElement());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) row[i * n_new + j] = p.relations()(r, i * n + j);
        out.append_row(row);
    }
    return out;
}

}  // namespace

QuadraticPresentation ore_extension(const QuadraticPresentation& p, const GeneratorMap& sigma,
                                    const std::string& new_name) {
    if (p.generator_index(new_name))
        throw Error(ErrorCode::NameCollision, "'" + new_name + "' is already a generator of " + p.name());
    require_automorphism_of(sigma, p);
    const std::size_t n = p.num_generators(), m = n + 1;
    Matrix rels = embed_relations(p, m);
    for (std::size_t a = 0; a < n; ++a) {
        Vector row(m * m);
        row[n * m + a] = 1;  // x a
        for (std::size_t b = 0; b < n; ++b) row[b * m + n] -= sigma.matrix(b, a);  // - sigma(a) x
        rels.append_row(row);
    }
    auto gens = p.generators();
    gens.push_back(new_name);
    return QuadraticPresentation(p.name() + "_ore", p.field(), gens, rels);
}

std::string fresh_generator_name(const QuadraticPresentation& p) {
    for (const char* c : {"x", "y", "z", "w", "u", "v"})
        if (!p.generator_index(c)) return c;
    for (int k = 1;; ++k) {
        std::string s = "x" + std::to_string(k);
        if (!p.generator_index(s)) return s;
    }
}

QuadraticPresentation trivial_extension(const QuadraticPresentation& p, const TwistSpec& l,
                                        const std::string& new_name) {
    std::string name = new_name.empty() ? fresh_generator_name(p) : new_name;
    QuadraticPresentation ore = ore_extension(p, l.automorphism(), name);
    const std::size_t m = ore.num_generators();
    Matrix rels = ore.relations();
    Vector sq(m * m);
    sq[(m - 1) * m + (m - 1)] = 1;
    rels.append_row(sq);
    return QuadraticPresentation(p.name() + "_trivext", p.field(), ore.generators(), rels);
}

QuadraticPresentation trivial_extension_pair_form(const QuadraticPresentation& p, const TwistSpec& l,
                                                  const std::string& new_name) {
    const GeneratorMap& sigma = l.automorphism();
    require_automorphism_of(sigma, p);
    std::string name = new_name.empty() ? fresh_generator_name(p) : new_name;
    if (p.generator_index(name))
        throw Error(ErrorCode::NameCollision, "'" + name + "' is already a generator of " + p.name());

    // Degree 2 of A |x L is A_2 (+) L_2 with L_2 = A_1.  Column (i, j) holds
    // the product of generators i and j, where index n is (0, 1).
    TruncatedAlgebra t(p, 2);
    const std::size_t n = p.num_generators(), m = n + 1, h2 = t.dim(2);
    Matrix products(h2 + n, m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t col = i * m + j;
            if (i < n && j < n) {
                // (g_i, 0)(g_j, 0) = (g_i g_j, 0)
                Element e = t.normal_form(Word{static_cast<int>(i), static_cast<int>(j)});
                for (std::size_t k = 0; k < h2; ++k) products(k, col) = e.coeffs[k];
            } else if (i < n) {
                // (g_i, 0)(0, 1) = (0, g_i * 1)
                products(h2 + i, col) = 1;
            } else if (j < n) {
                // (0, 1)(g_j, 0) = (0, 1 * sigma(g_j))
                for (std::size_t k = 0; k < n; ++k) products(h2 + k, col) = sigma.matrix(k, j);
            }
            // (0, 1)(0, 1) = 0
        }
    auto gens = p.generators();
    gens.push_back(name);
    return QuadraticPresentation(p.name() + "_pairs", p.field(), gens, nullspace(products));
}

GeneratorMap hat_automorphism(const GeneratorMap& sigma, PresentationPtr extension) {
    const std::size_t n = sigma.matrix.rows();
    if (extension->num_generators() != n + 1)
        throw Error(ErrorCode::DimensionMismatch, "extension must have exactly one extra generator");
    Matrix m(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = sigma.matrix(i, j);
    m(n, n) = 1;
    GeneratorMap hat = make_map(sigma.name + "_hat", extension, extension, std::move(m));
    try {
        hat = verify_map(std::move(hat));
    } catch (const RelationNotPreserved& e) {
        throw Error(ErrorCode::VerificationFailed, e.what());
    }
    if (!hat.automorphism) throw Error(ErrorCode::VerificationFailed, "sigma-hat is not invertible");
    return hat;
}

SquareZeroDualReport dual_of_square_zero_extension_check(const QuadraticPresentation& s) {
    auto sp = share(s);
    GeneratorMap id = identity_map(sp);
    std::string x = fresh_generator_name(s);

    QuadraticPresentation square_zero = trivial_extension(s, TwistSpec(id), x);
    QuadraticPresentation polynomial = ore_extension(s, id, x);

    auto dual = share(quadratic_dual(s));
    QuadraticPresentation ore_dual = ore_extension(*dual, minus_one(dual), x);
    QuadraticPresentation ore_sq = trivial_extension(*dual, TwistSpec(minus_one(dual)), x);

    SquareZeroDualReport rep{quadratic_dual(square_zero), ore_dual, false, quadratic_dual(polynomial), ore_sq, false};
    rep.extension_matches = same_relation_space(rep.extension_dual, rep.ore_of_dual);
    rep.polynomial_matches = same_relation_space(rep.polynomial_dual, rep.ore_mod_square);
    return rep;
}

LocalizationResult localize_z2_degree0(const QuadraticPresentation& dual, std::size_t word_budget) {
    LocalizationResult res;
    const int top = vanishing_degree(dual, 16, word_budget) - 1;
    res.socle_degree = top;
    TruncatedAlgebra d_alg(dual, std::max(top + 1, 2), word_budget);

    auto dp = share(dual);
    std::string z = fresh_generator_name(dual);
    if (!dual.generator_index("z")) z = "z";
    QuadraticPresentation e_pres = ore_extension(dual, minus_one(dp), z);
    const int z_index = static_cast<int>(dual.num_generators());
    TruncatedAlgebra e_alg(e_pres, std::max(2 * top, 3), word_budget);

    // z^2 commutes with every generator of E.
    res.z_squared_central = true;
    for (int g = 0; g <= z_index; ++g)
        if (!(e_alg.normal_form(Word{z_index, z_index, g}) == e_alg.normal_form(Word{g, z_index, z_index})))
            res.z_squared_central = false;

    // z^p b = sum_b' C[b'][b] b' z^p, read off from E.
    res.commutation.assign(top + 1, std::vector<Matrix>(top + 1));
    for (int p = 0; p <= top; ++p)
        for (int q = 0; q <= top; ++q) {
            const auto& words = d_alg.normal_words(q);
            Word zp(p, z_index);
            Matrix right(0, e_alg.dim(p + q));  // rows: b' z^p
            for (const auto& w : words) {
                Word bw = w;
                bw.insert(bw.end(), zp.begin(), zp.end());
                right.append_row(e_alg.normal_form(bw).coeffs);
            }
            if (rank(right) != words.size())
                throw Error(ErrorCode::VerificationFailed, "E is not free over the dual on powers of z");
            Matrix c(words.size(), words.size());
            for (std::size_t b = 0; b < words.size(); ++b) {
                Word left = zp;
                left.insert(left.end(), words[b].begin(), words[b].end());
                auto coeffs = solve_membership(right, e_alg.normal_form(left).coeffs);
                if (!coeffs) throw Error(ErrorCode::VerificationFailed, "z is not normal in E");
                for (std::size_t k = 0; k < words.size(); ++k) c(k, b) = (*coeffs)[k];
            }
            res.commutation[p][q] = std::move(c);
        }

    // Lambda has basis a z^{-p}; (a z^{-p})(b z^{-q}) = a (z^{-p} b) z^{-(p+q)} and
    // z^{-p} b = (C_{p,q}^{-1} b) z^{-p}.
    FiniteAlgebraTable base = FiniteAlgebraTable::from_truncated(d_alg);
    FiniteAlgebraTable& lam = res.lambda;
    lam.dims = base.dims;
    lam.degrees = base.degrees;
    lam.unit = base.unit;
    for (std::size_t i = 0; i < base.dimension(); ++i) {
        int p = base.degrees[i];
        lam.labels.push_back(p == 0 ? base.labels[i]
                                    : base.labels[i] + "*" + z + "^-" + std::to_string(p));
    }
    std::vector<std::size_t> offset;
    for (std::size_t acc = 0, d = 0; d < base.dims.size(); acc += base.dims[d], ++d) offset.push_back(acc);
    const std::size_t n = base.dimension();
    lam.mult.assign(n, std::vector<Vector>(n, Vector(n)));
    std::vector<std::vector<Matrix>> c_inv(top + 1, std::vector<Matrix>(top + 1));
    for (int p = 0; p <= top; ++p)
        for (int q = 0; q <= top; ++q) c_inv[p][q] = inverse(res.commutation[p][q]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int p = lam.degrees[i], q = lam.degrees[j];
            const Matrix& ci = c_inv[p][q];
            Vector moved(n);  // z^{-p} b as an element of D
            for (std::size_t k = 0; k < base.dims[q]; ++k) moved[offset[q] + k] = ci(k, j - offset[q]);
            Vector ea(n);
            ea[i] = 1;
            lam.mult[i][j] = base.multiply(ea, moved);
        }

    // Psi(a) = (-1)^{p(p-1)/2} a z^{-p}
    auto sign = [](int p) { return FieldElement(((p * (p - 1) / 2) % 2 == 0) ? 1 : -1); };
    PsiReport& psi = res.psi;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int p = lam.degrees[i], q = lam.degrees[j];
            Vector lhs = lam.mult[i][j];
            for (auto& v : lhs) v *= sign(p) * sign(q);
            Vector rhs = base.mult[i][j];
            for (std::size_t k = 0; k < n; ++k) rhs[k] *= sign(lam.degrees[k]);
            ++psi.pairs_checked;
            if (!(lhs == rhs)) ++psi.failures;
        }
    psi.unital = lam.is_unital() && sign(0).is_one();
    psi.bijective = true;  // Psi is diagonal with entries +-1 in these bases
    psi.lambda_associative = lam.is_associative();
    return res;
}

}  // namespace kszl
