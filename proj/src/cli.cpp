#include "kszl/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kszl/constructions.hpp"
#include "kszl/engine.hpp"
#include "kszl/morphisms.hpp"
#include "kszl/presentation.hpp"
#include "kszl/resolution.hpp"
#include "kszl/skew3.hpp"

namespace kszl::cli {

using Json = nlohmann::ordered_json;

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Options {
    int max_degree = kDefaultMaxDegree;
    int homological = 5;
    std::size_t word_budget = kDefaultWordBudget;
    bool json = false;
    std::uint64_t seed = 1;
};

// Everything a handler writes.
struct Ctx {
    Options opt;
    Json inputs = Json::array();
    Json results = Json::object();
    Json verdicts = Json::array();
    std::ostringstream text;

    Json window(bool with_homological = false) const {
        Json w;
        w["max_degree"] = opt.max_degree;
        w["reliable_degree"] = opt.max_degree - 1;
        if (with_homological) w["homological"] = opt.homological;
        w["word_budget"] = opt.word_budget;
        return w;
    }

    bool verdict(const std::string& name, bool value, Json win) {
        Json v;
        v["name"] = name;
        v["value"] = value;
        v["window"] = std::move(win);
        verdicts.push_back(std::move(v));
        text << name << ": " << (value ? "true" : "false") << '\n';
        return value;
    }
};

// ---------------------------------------------------------------------------
// input

std::string read_file(Ctx& ctx, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    std::string data = s.str();
    Json entry;
    entry["path"] = path;
    entry["fnv1a64"] = fnv1a_hex(data);
    ctx.inputs.push_back(std::move(entry));
    return data;
}

void note_input(Ctx& ctx, const std::string& label, const std::string& value) {
    Json entry;
    entry["value"] = label + "=" + value;
    entry["fnv1a64"] = fnv1a_hex(value);
    ctx.inputs.push_back(std::move(entry));
}

struct Loaded {
    Document doc;
    PresentationPtr algebra;
};

Loaded load(Ctx& ctx, const std::string& path, const std::string& algebra_name) {
    Loaded l;
    l.doc = parse_document(read_file(ctx, path));
    if (l.doc.algebras.empty()) throw Error(ErrorCode::UnknownAlgebra, "'" + path + "' declares no algebra");
    if (algebra_name.empty()) {
        l.algebra = l.doc.algebras.front();
    } else {
        l.algebra = l.doc.find_algebra(algebra_name);
        if (!l.algebra) throw Error(ErrorCode::UnknownAlgebra, "no algebra named '" + algebra_name + "' in " + path);
    }
    return l;
}

FieldSpec parse_field(const std::string& text) {
    if (text.empty() || text == "QQ") return FieldSpec::rationals();
    return parse_presentation("algebra F over " + text + " { gens x; }").field();
}

// ---------------------------------------------------------------------------
// JSON renderings

Json dims_json(const HilbertPrefix& h) {
    // a quadratic algebra stays zero after its first zero degree
    Json a = Json::array();
    for (std::size_t d = 0; d < h.size(); ++d) {
        a.push_back(h[d]);
        if (h[d] == 0) break;
    }
    return a;
}

std::string dims_text(const Json& dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? ", " : "") + std::to_string(dims[i].get<std::size_t>());
    return s + "]";
}

Json presentation_json(const QuadraticPresentation& p) {
    Json j;
    j["name"] = p.name();
    j["field"] = p.field().to_string();
    j["generators"] = p.generators();
    Json rels = Json::array();
    for (std::size_t r = 0; r < p.relation_dim(); ++r) rels.push_back(format_relation(p, r));
    j["relations"] = rels;
    j["relation_dim"] = p.relation_dim();
    j["text"] = print_presentation(p);
    return j;
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

Json images_json(const GeneratorMap& f) {
    Json j = Json::object();
    for (std::size_t g = 0; g < f.source->num_generators(); ++g) j[f.source->generators()[g]] = f.image_string(g);
    return j;
}

Json map_json(const GeneratorMap& f) {
    Json j;
    j["name"] = f.name;
    j["source"] = f.source->name();
    j["target"] = f.target->name();
    j["images"] = images_json(f);
    j["matrix"] = matrix_json(f.matrix);
    j["verified"] = f.verified;
    j["automorphism"] = f.automorphism;
    return j;
}

std::string element_string(const TruncatedAlgebra& t, const Element& e) {
    if (e.coeffs.empty()) return "0";
    return format_combination(e.coeffs, t.normal_words(e.degree), t.presentation().generators());
}

Json module_element_json(const TruncatedAlgebra& t, const ModuleElement& x) {
    Json j = Json::array();
    for (const auto& c : x) j.push_back(element_string(t, c));
    return j;
}

void text_map(Ctx& ctx, const std::string& label, const GeneratorMap& f) {
    ctx.text << label << ":";
    for (std::size_t g = 0; g < f.source->num_generators(); ++g)
        ctx.text << (g ? "," : "") << " " << f.source->generators()[g] << " -> " << f.image_string(g);
    ctx.text << '\n';
}

// ---------------------------------------------------------------------------
// automorphism selection

GeneratorMap select_sigma(const Loaded& l, const std::string& choice, int dim) {
    if (choice == "id") return identity_map(l.algebra);
    if (choice == "minus_one") return minus_one(l.algebra);
    if (choice == "nu" || choice == "nu_inv") {
        if (dim < 1) throw Error(ErrorCode::InvalidArgument, "--sigma " + choice + " needs --dim");
        GeneratorMap nu = nakayama_regular(l.algebra, dim);
        return choice == "nu" ? nu : invert(nu);
    }
    const GeneratorMap* m = l.doc.find_map(choice);
    if (!m) throw Error(ErrorCode::InvalidArgument, "unknown automorphism '" + choice + "' (id, minus_one, nu, nu_inv or a map name)");
    if (!(*m->source == *l.algebra) || !(*m->target == *l.algebra))
        throw Error(ErrorCode::NotAnAutomorphism, "map '" + choice + "' is not an endomorphism of " + l.algebra->name());
    return make_map(m->name, l.algebra, l.algebra, m->matrix);
}

const GeneratorMap& require_map(const Loaded& l, const std::string& name) {
    if (l.doc.maps.empty()) throw Error(ErrorCode::InvalidArgument, "the file declares no map");
    if (name.empty()) return l.doc.maps.front();
    const GeneratorMap* m = l.doc.find_map(name);
    if (!m) throw Error(ErrorCode::InvalidArgument, "no map named '" + name + "'");
    return *m;
}

// ---------------------------------------------------------------------------
// commands

struct Args {
    std::string file, algebra, map, sigma = "id", var, mode = "cm_not_iso", csv, a, b, field;
    int dim = 0, stage = 1, random = 0;
    std::size_t budget = 10000;
    bool dualize = false;
};

int cmd_show(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    ctx.results["algebra"] = presentation_json(*l.algebra);
    Json maps = Json::array();
    for (const auto& m : l.doc.maps) maps.push_back(map_json(m));
    ctx.results["maps"] = maps;
    ctx.text << print_presentation(*l.algebra);
    for (const auto& m : l.doc.maps) ctx.text << print_map(m);
    return kOk;
}

int cmd_hilbert(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    auto h = hilbert_prefix(*l.algebra, ctx.opt.max_degree, ctx.opt.word_budget);
    ctx.results["dims"] = dims_json(h);
    ctx.results["window"] = ctx.window();
    ctx.text << "dims " << dims_text(ctx.results["dims"]) << " (degrees 0.." << ctx.opt.max_degree << ")\n";
    return kOk;
}

int cmd_dual(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    auto d = quadratic_dual(*l.algebra);
    ctx.results["dual"] = presentation_json(d);
    ctx.results["dims"] = dims_json(hilbert_prefix(d, ctx.opt.max_degree, ctx.opt.word_budget));
    ctx.results["window"] = ctx.window();
    ctx.text << print_presentation(d) << "dims " << dims_text(ctx.results["dims"]) << '\n';
    return kOk;
}

int cmd_twist(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    GeneratorMap sigma = select_sigma(l, a.sigma, a.dim);
    auto tw = zhang_twist(*l.algebra, sigma);
    ctx.results["sigma"] = map_json(verify_map(sigma));
    ctx.results["twisted"] = presentation_json(tw);
    text_map(ctx, "sigma", sigma);
    ctx.text << print_presentation(tw);
    auto h0 = hilbert_prefix(*l.algebra, ctx.opt.max_degree, ctx.opt.word_budget);
    auto h1 = hilbert_prefix(tw, ctx.opt.max_degree, ctx.opt.word_budget);
    ctx.results["dims"] = dims_json(h1);
    return ctx.verdict("hilbert_preserved", h0 == h1, ctx.window()) ? kOk : kVerdictFalse;
}

int extension_common(Ctx& ctx, const Args& a, bool square_zero) {
    Loaded l = load(ctx, a.file, a.algebra);
    GeneratorMap sigma = select_sigma(l, a.sigma, a.dim);
    std::string var = a.var.empty() ? fresh_generator_name(*l.algebra) : a.var;
    auto ext = square_zero ? trivial_extension(*l.algebra, TwistSpec(sigma), var)
                           : ore_extension(*l.algebra, sigma, var);
    ctx.results["sigma"] = map_json(verify_map(sigma));
    ctx.results["extension"] = presentation_json(ext);
    text_map(ctx, "sigma", sigma);
    ctx.text << print_presentation(ext);
    const int N = ctx.opt.max_degree;
    auto hp = hilbert_prefix(*l.algebra, N, ctx.opt.word_budget);
    auto he = hilbert_prefix(ext, N, ctx.opt.word_budget);
    ctx.results["dims"] = dims_json(he);
    bool law = he[0] == 1;
    for (int d = 1; d <= N; ++d) {
        std::size_t expect = 0;
        if (square_zero)
            expect = hp[d] + hp[d - 1];
        else
            for (int k = 0; k <= d; ++k) expect += hp[k];
        if (he[d] != expect) law = false;
    }
    bool ok = ctx.verdict(square_zero ? "hilbert_one_plus_t" : "hilbert_over_one_minus_t", law, ctx.window());
    if (square_zero) {
        auto pe = share(ext);
        auto pair = share(trivial_extension_pair_form(*l.algebra, TwistSpec(sigma), var));
        bool phi = false;
        try {
            phi = verify_iso(make_map("Phi", pair, pe, Matrix::identity(pe->num_generators()))).replay();
        } catch (const Error&) {
            phi = false;
        }
        ctx.results["pair_form"] = presentation_json(*pair);
        ok = ctx.verdict("phi_isomorphism", phi, Json::object()) && ok;
    }
    return ok ? kOk : kVerdictFalse;
}

int cmd_dual_square(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    auto rep = dual_of_square_zero_extension_check(*l.algebra);
    ctx.results["extension_dual"] = presentation_json(rep.extension_dual);
    ctx.results["ore_of_dual"] = presentation_json(rep.ore_of_dual);
    ctx.results["polynomial_dual"] = presentation_json(rep.polynomial_dual);
    ctx.results["ore_mod_square"] = presentation_json(rep.ore_mod_square);
    bool a1 = ctx.verdict("square_zero_dual_is_ore_of_dual", rep.extension_matches, Json::object());
    bool a2 = ctx.verdict("polynomial_dual_is_ore_mod_square", rep.polynomial_matches, Json::object());
    return a1 && a2 ? kOk : kVerdictFalse;
}

int cmd_localize(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    QuadraticPresentation d = a.dualize ? quadratic_dual(*l.algebra) : *l.algebra;
    auto loc = localize_z2_degree0(d, ctx.opt.word_budget);
    ctx.results["dual"] = presentation_json(d);
    ctx.results["socle_degree"] = loc.socle_degree;
    Json lam;
    lam["dimension"] = loc.lambda.dimension();
    lam["basis"] = loc.lambda.labels;
    lam["dims"] = loc.lambda.dims;
    ctx.results["lambda"] = lam;
    Json psi;
    psi["pairs_checked"] = loc.psi.pairs_checked;
    psi["failures"] = loc.psi.failures;
    psi["unital"] = loc.psi.unital;
    psi["bijective"] = loc.psi.bijective;
    psi["lambda_associative"] = loc.psi.lambda_associative;
    ctx.results["psi"] = psi;
    ctx.text << "socle degree " << loc.socle_degree << ", Lambda of dimension " << loc.lambda.dimension() << '\n'
             << "Psi checked on " << loc.psi.pairs_checked << " basis pairs, " << loc.psi.failures << " failures\n";
    bool c = ctx.verdict("z_squared_central", loc.z_squared_central, Json::object());
    bool p = ctx.verdict("psi_isomorphism", loc.psi.pass(), Json::object());
    return c && p ? kOk : kVerdictFalse;
}

int cmd_nakayama(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    if (a.dim > 0) {
        GeneratorMap nu = nakayama_regular(l.algebra, a.dim);
        ctx.results["dim"] = a.dim;
        ctx.results["nu"] = images_json(nu);
        ctx.results["matrix"] = matrix_json(nu.matrix);
        text_map(ctx, "nu", nu);
        return kOk;
    }
    TruncatedAlgebra t(*l.algebra, ctx.opt.max_degree, ctx.opt.word_budget);
    FrobeniusData fd = frobenius_data(t);
    ctx.results["socle_degree"] = fd.socle_degree;
    ctx.results["eta"] = images_json(fd.nakayama);
    ctx.results["matrix"] = matrix_json(fd.nakayama.matrix);
    ctx.results["window"] = ctx.window();
    ctx.text << "socle degree " << fd.socle_degree << '\n';
    text_map(ctx, "eta", fd.nakayama);
    return kOk;
}

int cmd_verify_map(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    const GeneratorMap& f = require_map(l, a.map);
    try {
        GeneratorMap v = verify_map(f);
        ctx.results["map"] = map_json(v);
        text_map(ctx, f.name, v);
        ctx.verdict("verified", true, Json::object());
        ctx.verdict("automorphism", v.automorphism, Json::object());
        return kOk;
    } catch (const RelationNotPreserved& e) {
        ctx.results["map"] = map_json(f);
        ctx.results["failing_relation"] = e.index();
        ctx.results["failing_relation_text"] = format_relation(*f.source, e.index());
        ctx.text << "relation " << e.index() << " (" << format_relation(*f.source, e.index())
                 << ") is not preserved\n";
        ctx.verdict("verified", false, Json::object());
        return kVerdictFalse;
    }
}

int cmd_verify_iso(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    const GeneratorMap& f = require_map(l, a.map);
    ctx.results["map"] = map_json(f);
    try {
        IsoCertificate cert = verify_iso(f);
        Json checks = Json::array();
        for (const auto& [r, coeffs] : cert.checks) {
            Json c;
            c["relation"] = r;
            Json co = Json::array();
            for (const auto& x : coeffs) co.push_back(x.to_string());
            c["coefficients"] = co;
            checks.push_back(c);
        }
        ctx.results["checks"] = checks;
        ctx.results["inverse"] = images_json(cert.inverse_map());
        text_map(ctx, f.name, f);
        text_map(ctx, "inverse", cert.inverse_map());
        bool ok = ctx.verdict("isomorphism", cert.replay(), Json::object());
        return ok ? kOk : kVerdictFalse;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInvertible && e.code() != ErrorCode::RelationDimMismatch &&
            e.code() != ErrorCode::RelationNotPreserved)
            throw;
        ctx.results["reason"] = e.what();
        ctx.text << e.what() << '\n';
        ctx.verdict("isomorphism", false, Json::object());
        return kVerdictFalse;
    }
}

Json betti_json(const BettiTable& b) {
    Json j;
    j["entries"] = b.entries;
    j["diagonal"] = b.diagonal();
    j["reliable_degree"] = b.reliable_degree();
    j["grid"] = b.to_string();
    return j;
}

int cmd_betti(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    TruncatedAlgebra t(*l.algebra, ctx.opt.max_degree, ctx.opt.word_budget);
    BettiTable b = betti_table(t, ctx.opt.homological, ctx.opt.word_budget);
    ctx.results["betti"] = betti_json(b);
    ctx.results["window"] = ctx.window(true);
    ctx.text << b.to_string();
    return kOk;
}

int cmd_koszul(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    TruncatedAlgebra t(*l.algebra, ctx.opt.max_degree, ctx.opt.word_budget);
    KoszulVerdict v = koszul_certificate(t, ctx.opt.homological, ctx.opt.word_budget);
    ctx.results["verdict"] = v.to_string();
    if (!v.koszul) ctx.results["fails_at"] = Json::array({v.fail_i, v.fail_j});
    ctx.results["betti"] = betti_json(v.table);
    ctx.results["dual_dims"] = v.dual_dims;
    ctx.text << v.to_string() << '\n' << v.table.to_string();
    bool k = ctx.verdict("koszul", v.koszul, ctx.window(true));
    ctx.verdict("diagonal_matches_dual", v.dual_matches, ctx.window(true));
    ctx.verdict("hilbert_identity", v.hilbert_identity, ctx.window(true));
    return k && v.dual_matches && v.hilbert_identity ? kOk : kVerdictFalse;
}

int cmd_syzygy(Ctx& ctx, const Args& a) {
    Loaded l = load(ctx, a.file, a.algebra);
    TruncatedAlgebra t(*l.algebra, ctx.opt.max_degree, ctx.opt.word_budget);
    SyzygyPresentation s = syzygy_presentation(t, a.stage, ctx.opt.word_budget);
    ctx.results["stage"] = s.stage;
    ctx.results["generator_degrees"] = s.generator_degrees;
    Json imgs = Json::array();
    for (const auto& g : s.generator_images) imgs.push_back(module_element_json(t, g));
    ctx.results["generator_images"] = imgs;
    Json rels = Json::array();
    for (const auto& r : s.relations) rels.push_back(module_element_json(t, r));
    ctx.results["relations"] = rels;
    ctx.results["free"] = s.free();
    ctx.results["window"] = ctx.window();
    ctx.text << "Omega^" << s.stage << " k(" << s.stage << "): " << s.generator_degrees.size() << " generators, "
             << s.relations.size() << " relations within degree " << s.valid_to << (s.free() ? " (free)" : "")
             << '\n';
    for (std::size_t g = 0; g < s.generator_images.size(); ++g)
        ctx.text << "  g" << g << " -> " << imgs[g].dump() << '\n';
    for (std::size_t r = 0; r < s.relations.size(); ++r) ctx.text << "  r" << r << " = " << rels[r].dump() << '\n';
    return kOk;
}

// --- skew3

Json verdict_json(const skew3::SkewVerdict& v) {
    Json j;
    j["isomorphic"] = v.isomorphic();
    j["stable_cm_equivalent"] = v.stable_cm_equivalent();
    j["graded_morita"] = v.graded_morita();
    Json w;
    w["iso"] = v.iso_witness();
    w["stable_cm"] = v.cm_witness();
    w["morita"] = v.morita_witness();
    j["witness"] = w;
    return j;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int cmd_skew_classify(Ctx& ctx, const Args& a) {
    FieldSpec f = parse_field(a.field);
    if (!a.csv.empty()) {
        std::istringstream in(read_file(ctx, a.csv));
        std::string line;
        Json rows = Json::array();
        ctx.text << "a1,a2,a3,b1,b2,b3,isomorphic,stable_cm_equivalent,graded_morita\n";
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            auto cells = split_csv(line);
            if (cells.size() != 6)
                throw Error(ErrorCode::InvalidArgument, a.csv + ":" + std::to_string(lineno) + ": expected 6 columns");
            skew3::SkewParams pa, pb;
            try {
                pa = skew3::SkewParams::parse(cells[0] + "," + cells[1] + "," + cells[2], f);
                pb = skew3::SkewParams::parse(cells[3] + "," + cells[4] + "," + cells[5], f);
            } catch (const Error&) {
                if (rows.empty() && lineno == 1) continue;  // header row
                throw;
            }
            auto v = skew3::classify(pa, pb);
            Json row;
            row["a"] = pa.to_string();
            row["b"] = pb.to_string();
            row["verdict"] = verdict_json(v);
            rows.push_back(row);
            for (const auto& c : cells) ctx.text << c << ',';
            ctx.text << (v.isomorphic() ? "true" : "false") << ',' << (v.stable_cm_equivalent() ? "true" : "false")
                     << ',' << (v.graded_morita() ? "true" : "false") << '\n';
        }
        ctx.results["rows"] = rows;
        return kOk;
    }
    if (a.a.empty() || a.b.empty()) throw Error(ErrorCode::InvalidArgument, "classify needs --a and --b, or --csv");
    note_input(ctx, "a", a.a);
    note_input(ctx, "b", a.b);
    auto pa = skew3::SkewParams::parse(a.a, f), pb = skew3::SkewParams::parse(a.b, f);
    auto v = skew3::classify(pa, pb);
    ctx.results["a"] = pa.to_string();
    ctx.results["b"] = pb.to_string();
    Json vj = verdict_json(v);
    for (auto& [k, val] : vj.items()) ctx.results[k] = val;
    ctx.text << "a = (" << pa.to_string() << "), b = (" << pb.to_string() << ")\n"
             << "isomorphic: " << v.isomorphic() << (v.isomorphic() ? " via " + v.iso_witness() : "") << '\n'
             << "stable_cm_equivalent: " << v.stable_cm_equivalent()
             << (v.stable_cm_equivalent() ? " via " + v.cm_witness() : "") << '\n'
             << "graded_morita: " << v.graded_morita() << (v.graded_morita() ? " via " + v.morita_witness() : "")
             << '\n';
    return kOk;
}

Json cross_json(const skew3::CrossReport& r) {
    Json j;
    j["a"] = r.a.to_string();
    j["b"] = r.b.to_string();
    j["nu_a"] = {r.nu_a[0].to_string(), r.nu_a[1].to_string(), r.nu_a[2].to_string()};
    j["nu_b"] = {r.nu_b[0].to_string(), r.nu_b[1].to_string(), r.nu_b[2].to_string()};
    j["twisted_a"] = r.twisted_a.to_string();
    j["twisted_b"] = r.twisted_b.to_string();
    j["pipeline_stable_cm"] = r.pipeline_stable_cm;
    j["closed_form_stable_cm"] = r.closed_form_stable_cm;
    j["hilbert_preserved"] = r.hilbert_preserved;
    j["agree"] = r.agree();
    return j;
}

int cmd_skew_cross(Ctx& ctx, const Args& a) {
    FieldSpec f = parse_field(a.field);
    const int N = std::min(ctx.opt.max_degree, 4);
    Json cases = Json::array();
    std::size_t agreed = 0;
    if (a.random > 0) {
        note_input(ctx, "seed", std::to_string(ctx.opt.seed));
        std::mt19937_64 rng(ctx.opt.seed);
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3), pick(0, 5), kind(0, 2);
        auto small = [&] {
            int n = 0;
            while (n == 0) n = num(rng);
            return FieldElement(Rational(n, den(rng)));
        };
        for (int k = 0; k < a.random; ++k) {
            skew3::SkewParams pa(small(), small(), small()), pb(small(), small(), small());
            int how = kind(rng);
            if (how >= 1) pb.alpha = skew3::iso_orbit(pa)[pick(rng)].second;
            if (how == 2) pb.alpha[0] = -pb.alpha[0], pb.alpha[1] = -pb.alpha[1];
            auto r = skew3::cross_validate(pa, pb, N);
            if (r.agree()) ++agreed;
            cases.push_back(cross_json(r));
        }
    } else {
        if (a.a.empty() || a.b.empty()) throw Error(ErrorCode::InvalidArgument, "cross needs --a and --b, or --random K");
        note_input(ctx, "a", a.a);
        note_input(ctx, "b", a.b);
        auto r = skew3::cross_validate(skew3::SkewParams::parse(a.a, f), skew3::SkewParams::parse(a.b, f), N);
        if (r.agree()) ++agreed;
        cases.push_back(cross_json(r));
        ctx.text << "twisted a = (" << r.twisted_a.to_string() << "), twisted b = (" << r.twisted_b.to_string()
                 << ")\npipeline stable CM: " << r.pipeline_stable_cm
                 << ", closed form: " << r.closed_form_stable_cm << '\n';
    }
    ctx.results["cases"] = cases;
    ctx.results["agreed"] = agreed;
    ctx.results["total"] = cases.size();
    ctx.text << "agreement " << agreed << "/" << cases.size() << '\n';
    Json w;
    w["max_degree"] = N;
    return ctx.verdict("agreement", agreed == cases.size(), w) ? kOk : kVerdictFalse;
}

int cmd_skew_hunt(Ctx& ctx, const Args& a) {
    auto mode = skew3::parse_hunt_mode(a.mode);
    note_input(ctx, "seed", std::to_string(ctx.opt.seed));
    auto res = skew3::find_counterexamples(mode, a.budget, ctx.opt.seed);
    Json pairs = Json::array();
    for (const auto& [pa, pb] : res.pairs) {
        Json p;
        p["a"] = pa.to_string();
        p["b"] = pb.to_string();
        p["verdict"] = verdict_json(skew3::classify(pa, pb));
        pairs.push_back(p);
        ctx.text << "(" << pa.to_string() << ") vs (" << pb.to_string() << ")\n";
    }
    ctx.results["mode"] = skew3::to_string(mode);
    ctx.results["trials"] = res.trials;
    ctx.results["budget"] = a.budget;
    ctx.results["pairs"] = pairs;
    ctx.results["inconclusive"] = res.inconclusive;
    ctx.text << res.pairs.size() << " pairs in " << res.trials << " trials"
             << (res.inconclusive ? " (inconclusive)" : "") << '\n';
    return res.inconclusive ? kVerdictFalse : kOk;
}

// ---------------------------------------------------------------------------
// dispatch

int classify_error(const Error& e) {
    switch (e.code()) {
        case ErrorCode::BudgetExceeded:
            return kBudgetError;
        case ErrorCode::VerificationFailed:
            return kVerdictFalse;
        default:
            return kInputError;
    }
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
}

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

Outcome execute_impl(const std::vector<std::string>& args, int depth);

int cmd_batch(Ctx& ctx, const Args& a, int depth) {
    if (depth > 0) throw Error(ErrorCode::InvalidArgument, "batch files cannot nest");
    std::istringstream in(read_file(ctx, a.file));
    std::string line;
    Json lines = Json::array();
    std::size_t n = 0, failures = 0, lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto words = split_words(line);
        if (words.empty() || words[0][0] == '#') continue;
        if (words[0] == "kszl") words.erase(words.begin());
        Outcome o = execute_impl(words, depth + 1);
        ++n;
        if (o.exit_code != kOk) ++failures;
        Json entry;
        entry["line"] = lineno;
        entry["command"] = join(words);
        entry["exit_code"] = o.exit_code;
        entry["report"] = Json::parse(o.report_json);
        lines.push_back(entry);
        ctx.text << "[" << lineno << "] exit " << o.exit_code << ": " << join(words) << '\n';
        if (!o.diagnostics.empty()) ctx.text << "    " << o.diagnostics;
    }
    ctx.results["lines"] = lines;
    Json summary;
    summary["commands"] = n;
    summary["passed"] = n - failures;
    summary["failed"] = failures;
    ctx.results["summary"] = summary;
    ctx.text << "summary: " << n - failures << "/" << n << " passed\n";
    return failures == 0 ? kOk : kVerdictFalse;
}

Outcome execute_impl(const std::vector<std::string>& args, int depth) {
    const auto start = std::chrono::steady_clock::now();
    Ctx ctx;
    ctx.text << std::boolalpha;
    Args a;
    CLI::App app{"Exact computations with connected graded quadratic algebras", "kszl"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--max-degree", ctx.opt.max_degree, "internal degree window N")->check(CLI::Range(2, 64));
    app.add_option("--homological", ctx.opt.homological, "homological bound p")->check(CLI::Range(1, 64));
    app.add_option("--word-budget", ctx.opt.word_budget, "largest word space / module piece");
    app.add_flag("--json", ctx.opt.json, "emit the JSON report");
    app.add_option("--seed", ctx.opt.seed, "seed for search commands");

    std::function<int()> handler;
    std::string command;
    auto file_cmd = [&](const std::string& name, const std::string& help, auto&& fn) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->add_option("file", a.file, "algebra file")->required();
        s->add_option("--algebra", a.algebra, "algebra to use (default: first in file)");
        s->callback([&, name, fn] {
            command = name;
            handler = [&, fn] { return fn(ctx, a); };
        });
        return s;
    };

    file_cmd("show", "print the parsed presentation", cmd_show);
    file_cmd("hilbert", "Hilbert series prefix", cmd_hilbert);
    file_cmd("dual", "quadratic dual", cmd_dual);
    auto add_sigma = [&](CLI::App* s) {
        s->add_option("--sigma", a.sigma, "id, minus_one, nu, nu_inv or a map name")->capture_default_str();
        s->add_option("--dim", a.dim, "global dimension (for nu, nu_inv)");
    };
    add_sigma(file_cmd("twist", "Zhang twist by an automorphism", cmd_twist));
    auto ore = file_cmd("ore", "Ore extension A[x; sigma]", [](Ctx& c, const Args& x) { return extension_common(c, x, false); });
    add_sigma(ore);
    ore->add_option("--var", a.var, "name of the new generator");
    auto triv = file_cmd("trivext", "trivial extension A[x; sigma]/(x^2)",
                         [](Ctx& c, const Args& x) { return extension_common(c, x, true); });
    add_sigma(triv);
    triv->add_option("--var", a.var, "name of the new generator");
    file_cmd("dual-square-check", "duals of S[x]/(x^2) and S[x] against Ore extensions of the dual", cmd_dual_square);
    file_cmd("localize", "degree-zero part of the localized dual at z^2", cmd_localize)
        ->add_flag("--dualize", a.dualize, "take the quadratic dual of the input first");
    file_cmd("nakayama", "Nakayama automorphism (regular with --dim, Frobenius otherwise)", cmd_nakayama)
        ->add_option("--dim", a.dim, "global dimension of the regular algebra");
    file_cmd("verify-map", "check that a map preserves relations", cmd_verify_map)
        ->add_option("--map", a.map, "map name (default: first in file)");
    file_cmd("verify-iso", "isomorphism certificate for a map", cmd_verify_iso)
        ->add_option("--map", a.map, "map name (default: first in file)");
    file_cmd("betti", "Betti table of the trivial module", cmd_betti);
    file_cmd("koszul", "Koszul certificate within the window", cmd_koszul);
    file_cmd("syzygy", "presentation of Omega^d k (d)", cmd_syzygy)
        ->add_option("--stage", a.stage, "syzygy stage d")
        ->capture_default_str();

    CLI::App* batch = app.add_subcommand("batch", "run one command per line");
    batch->fallthrough();
    batch->add_option("file", a.file, "script file")->required();
    batch->callback([&] {
        command = "batch";
        handler = [&] { return cmd_batch(ctx, a, depth); };
    });

    CLI::App* skew = app.add_subcommand("skew3", "3-variable skew polynomial algebras");
    skew->fallthrough();
    skew->require_subcommand(1);
    auto skew_sub = [&](const std::string& name, const std::string& help, auto&& fn) {
        CLI::App* s = skew->add_subcommand(name, help);
        s->fallthrough();
        s->add_option("--field", a.field, "coefficient field, e.g. \"QQ adjoin t mod t^2 + 1\"");
        s->callback([&, name, fn] {
            command = "skew3 " + name;
            handler = [&, fn] { return fn(ctx, a); };
        });
        return s;
    };
    auto cl = skew_sub("classify", "closed-form criteria", cmd_skew_classify);
    cl->add_option("--a", a.a, "a1,a2,a3");
    cl->add_option("--b", a.b, "b1,b2,b3");
    cl->add_option("--csv", a.csv, "CSV rows a1,a2,a3,b1,b2,b3");
    auto cr = skew_sub("cross", "pipeline vs closed form", cmd_skew_cross);
    cr->add_option("--a", a.a, "a1,a2,a3");
    cr->add_option("--b", a.b, "b1,b2,b3");
    cr->add_option("--random", a.random, "number of seeded random pairs");
    auto hu = skew_sub("hunt", "search pairs separating the criteria", cmd_skew_hunt);
    hu->add_option("--mode", a.mode, "cm_not_iso or morita_not_cm")->capture_default_str();
    hu->add_option("--budget", a.budget, "trials")->capture_default_str();

    Outcome out;
    Json report;
    report["schema"] = kReportSchema;
    int code = kOk;
    std::ostringstream diag;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        report["command"] = command;
        report["argv"] = args;
        code = handler();
    } catch (const CLI::CallForHelp&) {
        ctx.text << app.help();
        command = "help";
    } catch (const CLI::ParseError& e) {
        diag << "error: " << e.what() << '\n';
        if (!command.empty() || args.empty()) diag << "run 'kszl --help' for usage\n";
        code = kInputError;
        report["error"] = {{"code", "ParseError"}, {"message", e.what()}};
    } catch (const Error& e) {
        diag << "error: " << e.what() << '\n';
        code = classify_error(e);
        report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        code = kInputError;
        report["error"] = {{"code", "Exception"}, {"message", e.what()}};
    }
    if (!report.contains("command")) report["command"] = command;
    if (!report.contains("argv")) report["argv"] = args;
    Json inputs;
    inputs["items"] = ctx.inputs;
    std::string all;
    for (const auto& i : ctx.inputs) all += i["fnv1a64"].get<std::string>();
    inputs["digest"] = fnv1a_hex(all);
    report["inputs"] = inputs;
    report["window"] = ctx.window(true);
    report["results"] = ctx.results;
    report["verdicts"] = ctx.verdicts;
    report["exit_code"] = code;
    report["version"] = kVersion;
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing"] = {{"elapsed_ms", std::round(ms * 1000.0) / 1000.0}};

    out.exit_code = code;
    out.report_json = report.dump(2);
    out.text = ctx.text.str();
    out.diagnostics = diag.str();
    return out;
}

}  // namespace

Outcome execute(const std::vector<std::string>& args) { return execute_impl(args, 0); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    bool json = std::find(args.begin(), args.end(), "--json") != args.end();
    Outcome o = execute(args);
    if (json)
        out << o.report_json << '\n';
    else
        out << o.text;
    err << o.diagnostics;
    return o.exit_code;
}

}  // namespace kszl::cli
