#include "kszl/resolution.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "kszl/constructions.hpp"

namespace kszl {

namespace {

bool in_window(const TruncatedAlgebra& t, int d) { return d >= 0 && d <= t.max_degree(); }

std::size_t safe_dim(const TruncatedAlgebra& t, int d) { return in_window(t, d) ? t.dim(d) : 0; }

Element empty_element(const TruncatedAlgebra& t, int d) {
    return in_window(t, d) ? t.zero(d) : Element{d, {}};
}

Element mul(const TruncatedAlgebra& t, const Element& a, const Element& b) {
    const int d = a.degree + b.degree;
    if (!in_window(t, a.degree) || !in_window(t, b.degree) || !in_window(t, d)) return Element{d, {}};
    return t.multiply(a, b);
}

// Products a * w for every normal word w, grouped by degree of w, built along
// word prefixes (normal words are closed under taking prefixes).
class RightWords {
public:
    explicit RightWords(const TruncatedAlgebra& t) : t_(t) {
        for (int e = 1; e <= t.max_degree(); ++e) {
            std::map<Word, std::size_t> prev;
            const auto& shorter = t.normal_words(e - 1);
            for (std::size_t k = 0; k < shorter.size(); ++k) prev.emplace(shorter[k], k);
            std::vector<std::pair<std::size_t, int>> steps;
            for (const auto& w : t.normal_words(e)) {
                Word pre(w.begin(), w.end() - 1);
                auto it = prev.find(pre);
                if (it == prev.end()) throw Error(ErrorCode::VerificationFailed, "normal words are not prefix closed");
                steps.emplace_back(it->second, w.back());
            }
            steps_.push_back(std::move(steps));
        }
    }

    /// out[e][k] = a * (k-th normal word of degree e), for e <= max_e.
    std::vector<std::vector<Element>> products(const Element& a, int max_e) const {
        std::vector<std::vector<Element>> out;
        if (max_e < 0) return out;
        out.push_back({a});
        for (int e = 1; e <= max_e; ++e) {
            std::vector<Element> row;
            row.reserve(steps_[e - 1].size());
            for (const auto& [pre, g] : steps_[e - 1]) row.push_back(t_.multiply_generator(out[e - 1][pre], g));
            out.push_back(std::move(row));
        }
        return out;
    }

private:
    const TruncatedAlgebra& t_;
    std::vector<std::vector<std::pair<std::size_t, int>>> steps_;
};

// Coordinates of the degree-j piece of a free module with given generator degrees.
struct Layout {
    std::vector<std::size_t> offset;
    std::size_t total = 0;
};

Layout layout(const TruncatedAlgebra& t, const std::vector<int>& degrees, int j) {
    Layout l;
    for (int dg : degrees) {
        l.offset.push_back(l.total);
        l.total += safe_dim(t, j - dg);
    }
    return l;
}

Vector flatten(const TruncatedAlgebra& t, const std::vector<int>& degrees, int j, const ModuleElement& x) {
    Layout l = layout(t, degrees, j);
    Vector v(l.total);
    for (std::size_t h = 0; h < degrees.size(); ++h) {
        const auto& c = x[h].coeffs;
        for (std::size_t k = 0; k < c.size(); ++k) v[l.offset[h] + k] = c[k];
    }
    return v;
}

ModuleElement unflatten(const TruncatedAlgebra& t, const std::vector<int>& degrees, int j, const Vector& v) {
    Layout l = layout(t, degrees, j);
    ModuleElement x;
    for (std::size_t h = 0; h < degrees.size(); ++h) {
        Element e = empty_element(t, j - degrees[h]);
        for (std::size_t k = 0; k < e.coeffs.size(); ++k) e.coeffs[k] = v[l.offset[h] + k];
        x.push_back(std::move(e));
    }
    return x;
}

// Images of g * w (w normal words) under the differential, flattened in the
// target module; images[g][e] lists them for deg w = e.
using ImageTable = std::vector<std::vector<std::vector<Vector>>>;

std::vector<std::vector<Vector>> images_of(const TruncatedAlgebra& t, const RightWords& rw,
                                           const std::vector<int>& target_degrees, int gen_degree,
                                           const ModuleElement& image) {
    const int max_e = t.max_degree() - gen_degree;
    std::vector<std::vector<std::vector<Element>>> comps;
    for (const auto& c : image)
        comps.push_back(in_window(t, c.degree) ? rw.products(c, max_e) : std::vector<std::vector<Element>>{});
    std::vector<std::vector<Vector>> out;
    for (int e = 0; e <= max_e; ++e) {
        const int j = gen_degree + e;
        std::vector<Vector> row;
        for (std::size_t k = 0; k < t.dim(e); ++k) {
            ModuleElement x;
            for (std::size_t h = 0; h < image.size(); ++h) {
                const int d = image[h].degree + e;
                if (!comps[h].empty() && in_window(t, d))
                    x.push_back(comps[h][e][k]);
                else
                    x.push_back(Element{d, {}});
            }
            row.push_back(flatten(t, target_degrees, j, x));
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

MinimalResolution minimal_resolution(const TruncatedAlgebra& t, int p, std::size_t budget) {
    const int N = t.max_degree();
    if (p < 1 || p > N)
        throw Error(ErrorCode::InvalidArgument,
                    "homological bound must satisfy 1 <= p <= N (p=" + std::to_string(p) + ", N=" + std::to_string(N) + ")");
    RightWords rw(t);
    MinimalResolution r;
    r.homological_bound = p;
    r.internal_bound = N;
    r.degrees.push_back({0});
    r.differential.push_back({});

    ImageTable prev_images;  // images of d_{i-1} on F_{i-1}
    for (int i = 1; i <= p; ++i) {
        const auto& src = r.degrees[i - 1];
        std::vector<int> degs;
        std::vector<ModuleElement> diff;
        ImageTable images;
        for (int j = 0; j <= N; ++j) {
            Layout lf = layout(t, src, j);
            if (lf.total > budget)
                throw Error(ErrorCode::BudgetExceeded, "free module piece of dimension " + std::to_string(lf.total) +
                                                           " exceeds budget " + std::to_string(budget));
            if (lf.total == 0) continue;
            // kernel of d_{i-1} in degree j
            Matrix kernel(0, lf.total);
            if (i == 1) {
                if (j >= 1) kernel = Matrix::identity(lf.total);
            } else {
                Matrix m(0, layout(t, r.degrees[i - 2], j).total);
                for (std::size_t g = 0; g < src.size(); ++g) {
                    const int e = j - src[g];
                    if (e < 0) continue;
                    for (const auto& v : prev_images[g][e]) m.append_row(v);
                }
                kernel = m.cols() == 0 ? Matrix::identity(lf.total) : nullspace(m.transpose());
            }
            if (kernel.rows() == 0) continue;
            // image of the generators found so far
            Matrix span(0, lf.total);
            for (std::size_t g = 0; g < degs.size(); ++g) {
                const int e = j - degs[g];
                for (const auto& v : images[g][e]) span.append_row(v);
            }
            std::size_t current = rank(span);
            if (current == kernel.rows()) continue;
            span = row_basis(span);
            for (std::size_t k = 0; k < kernel.rows() && current < kernel.rows(); ++k) {
                Vector v = kernel.row_vector(k);
                Matrix grown = span;
                grown.append_row(v);
                if (rank(grown) == current) continue;
                span = std::move(grown);
                ++current;
                degs.push_back(j);
                diff.push_back(unflatten(t, src, j, v));
                images.push_back(images_of(t, rw, src, j, diff.back()));
            }
        }
        r.degrees.push_back(std::move(degs));
        r.differential.push_back(std::move(diff));
        prev_images = std::move(images);
    }
    return r;
}

ModuleElement apply_differential(const TruncatedAlgebra& t, const MinimalResolution& r, int i,
                                 const ModuleElement& x) {
    if (i < 1 || i >= static_cast<int>(r.degrees.size()) || x.size() != r.degrees[i].size())
        throw Error(ErrorCode::DimensionMismatch, "element does not belong to F_" + std::to_string(i));
    const auto& src = r.degrees[i];
    const auto& tgt = r.degrees[i - 1];
    const int deg = x.empty() ? 0 : x[0].degree + src[0];
    ModuleElement out;
    for (std::size_t h = 0; h < tgt.size(); ++h) {
        Element acc = empty_element(t, deg - tgt[h]);
        for (std::size_t g = 0; g < src.size(); ++g) {
            Element term = mul(t, r.differential[i][g][h], x[g]);
            if (term.coeffs.empty() || acc.coeffs.empty()) continue;
            acc = t.add(acc, term);
        }
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<std::size_t> BettiTable::diagonal() const {
    std::vector<std::size_t> d;
    for (int i = 0; i <= homological_bound; ++i) d.push_back(i <= internal_bound ? entries[i][i] : 0);
    return d;
}

std::string BettiTable::to_string() const {
    std::size_t width = std::to_string(internal_bound).size() + 2;
    for (const auto& row : entries)
        for (auto v : row) width = std::max(width, std::to_string(v).size() + 1);
    std::ostringstream out;
    out << "i\\j";
    for (int j = 0; j <= internal_bound; ++j)
        out << std::setw(static_cast<int>(width)) << (std::to_string(j) + (j == internal_bound ? "*" : ""));
    out << '\n';
    for (int i = 0; i <= homological_bound; ++i) {
        out << std::setw(3) << i;
        for (int j = 0; j <= internal_bound; ++j) out << std::setw(static_cast<int>(width)) << entries[i][j];
        out << '\n';
    }
    out << "(* boundary degree, not used for verdicts)\n";
    return out.str();
}

BettiTable betti_table(const MinimalResolution& r) {
    BettiTable b;
    b.homological_bound = r.homological_bound;
    b.internal_bound = r.internal_bound;
    b.entries.assign(r.homological_bound + 1, std::vector<std::size_t>(r.internal_bound + 1, 0));
    for (int i = 0; i <= r.homological_bound; ++i)
        for (int d : r.degrees[i]) ++b.entries[i][d];
    return b;
}

BettiTable betti_table(const TruncatedAlgebra& t, int p, std::size_t budget) {
    return betti_table(minimal_resolution(t, p, budget));
}

std::string KoszulVerdict::to_string() const {
    std::string window = "[window i<=" + std::to_string(homological_bound) + ", j<=" +
                         std::to_string(reliable_degree) + "]";
    if (koszul) return "KoszulUpTo(" + std::to_string(homological_bound) + ") " + window;
    return "FailsAt(" + std::to_string(fail_i) + "," + std::to_string(fail_j) + ") " + window;
}

KoszulVerdict koszul_certificate(const TruncatedAlgebra& t, int p, std::size_t budget) {
    KoszulVerdict v;
    v.table = betti_table(t, p, budget);
    v.homological_bound = p;
    v.reliable_degree = v.table.reliable_degree();
    v.koszul = true;
    for (int i = 0; i <= p && v.koszul; ++i)
        for (int j = 0; j <= v.reliable_degree; ++j)
            if (j != i && v.table(i, j) != 0) {
                v.koszul = false;
                v.fail_i = i;
                v.fail_j = j;
                break;
            }
    v.diagonal = v.table.diagonal();

    TruncatedAlgebra dual(quadratic_dual(t.presentation()), std::max(p, 2), budget);
    for (int i = 0; i <= p; ++i) v.dual_dims.push_back(dual.dim(i));
    v.dual_matches = v.dual_dims == v.diagonal;

    // (sum_i (-1)^i b_ii t^i) * H_A(t) = 1 + O(t^{m+1})
    const int m = std::min(p, v.reliable_degree);
    v.hilbert_identity = true;
    for (int k = 0; k <= m; ++k) {
        long long s = 0;
        for (int i = 0; i <= k; ++i)
            s += (i % 2 ? -1LL : 1LL) * static_cast<long long>(v.diagonal[i]) * static_cast<long long>(t.dim(k - i));
        if (s != (k == 0 ? 1 : 0)) v.hilbert_identity = false;
    }
    return v;
}

SyzygyPresentation syzygy_presentation(const TruncatedAlgebra& t, int d, std::size_t budget) {
    if (d < 0) throw Error(ErrorCode::InvalidArgument, "syzygy stage must be nonnegative");
    MinimalResolution r = minimal_resolution(t, d + 1, budget);
    SyzygyPresentation s;
    s.stage = d;
    s.valid_to = t.max_degree();
    for (int g : r.degrees[d]) s.generator_degrees.push_back(g - d);
    if (d >= 1) s.generator_images = r.differential[d];
    s.relations = r.differential[d + 1];
    return s;
}

}  // namespace kszl
