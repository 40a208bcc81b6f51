#include "qtorus/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qtorus/image_kernels.hpp"
#include "qtorus/json_io.hpp"

namespace qtorus::cli {

namespace {

using io::json;

struct Options {
    std::string input = "-";
    bool json = false;
    bool dense = false;
    std::uint64_t prime = 0;
    std::uint64_t seed = 1;
    std::size_t trials = 10;
};

constexpr std::size_t kDenseLimit = 64;
constexpr std::size_t kBruteForceMaxN = 4;
constexpr std::int64_t kBruteForceMaxM = 8;

std::string read_input(const Options& opt, std::istream& in)
{
    std::ostringstream ss;
    if (opt.input.empty() || opt.input == "-") {
        ss << in.rdbuf();
    } else {
        std::ifstream f(opt.input);
        if (!f)
            throw io::FormatError("cannot read input file " + opt.input);
        ss << f.rdbuf();
    }
    return ss.str();
}

// Parameters resolved to one scalar domain, after dropping zero coordinates.
struct Params {
    ExponentData ed;
    bool symbolic = true;
    std::vector<CycScalar> values;
    std::vector<std::size_t> kept;
    std::optional<std::string> notice;
};

Params resolve(const ExponentData& full, const std::optional<std::vector<io::ScalarSpec>>& specs)
{
    full.validate();
    Params p;
    const std::size_t n = full.n();
    const bool all_sym =
        !specs || std::all_of(specs->begin(), specs->end(), [](const io::ScalarSpec& s) { return s.symbolic; });
    if (specs && specs->size() != n)
        throw DimensionError("alpha has " + std::to_string(specs->size()) + " entries, expected " + std::to_string(n));
    if (all_sym) {
        p.ed = full;
        for (std::size_t j = 0; j < n; ++j)
            p.kept.push_back(j);
        return p;
    }
    if (std::any_of(specs->begin(), specs->end(), [](const io::ScalarSpec& s) { return s.symbolic; }))
        throw InvalidParameterError("alpha mixes \"sym\" with concrete scalars; use one domain");
    std::vector<std::optional<CycScalar>> vals;
    for (const auto& s : *specs)
        vals.push_back(s.is_zero() ? std::nullopt : std::optional<CycScalar>(CycScalar(s.coeff, s.qexp, full.m)));
    auto red = reduce_zero_support(full, vals);
    p.symbolic = false;
    p.ed = std::move(red.ed);
    p.values = std::move(red.alpha);
    p.kept = std::move(red.kept);
    if (p.kept.size() != n) {
        std::ostringstream os;
        os << "zero parameters removed; generators kept:";
        for (auto j : p.kept)
            os << ' ' << (j + 1);
        p.notice = os.str();
    }
    return p;
}

template <class S>
json module_json(const SimpleModuleRep<S>& rep, const Options& opt)
{
    if (opt.dense && rep.dim() > kDenseLimit)
        throw InvalidParameterError("--dense needs dimension <= " + std::to_string(kDenseLimit) + ", got " +
                                    std::to_string(rep.dim()));
    auto mat = [&](const MonomialMatrix<S>& a) { return opt.dense ? io::to_json_dense(a) : io::to_json_sparse(a); };
    json xs = json::array(), big = json::array(), alpha = json::array();
    for (const auto& a : rep.x)
        xs.push_back(mat(a));
    for (const auto& a : rep.X)
        big.push_back(mat(a));
    for (const auto& a : rep.alpha)
        alpha.push_back(io::to_json(a));
    return {{"dimension", rep.dim()}, {"periods", rep.nf.klist}, {"alpha", alpha}, {"X", big}, {"x", xs}};
}

json kept_json(const Params& p)
{
    json k = json::array();
    for (auto j : p.kept)
        k.push_back(j + 1);
    return k;
}

// ---------------------------------------------------------------------------

int cmd_normal_form(const Options& opt, std::istream& in, std::ostream& out)
{
    auto inst = io::parse_instance(read_input(opt, in));
    inst.ed.validate();
    out << io::to_json(compute_normal_form(inst.ed)).dump(2) << '\n';
    return kOk;
}

int cmd_pi_degree(const Options& opt, std::istream& in, std::ostream& out)
{
    auto inst = io::parse_instance(read_input(opt, in));
    inst.ed.validate();
    const auto pid = pi_degree(inst.ed);
    const auto img = image_size_mod_m(inst.ed.H, inst.ed.m);
    json j = {{"pi_degree", pid}, {"image_size", io::to_json(img)}};
    bool agree = true;
    if (inst.ed.n() <= kBruteForceMaxN && inst.ed.m <= kBruteForceMaxM) {
        const auto brute = image_size_bruteforce_parallel(inst.ed.H, inst.ed.m);
        agree = mpz_class(static_cast<unsigned long>(brute)) == img;
        j["bruteforce"] = {{"image_size", brute}, {"agrees", agree}};
    }
    if (opt.json) {
        out << j.dump(2) << '\n';
    } else {
        out << pid << '\n';
        if (j.contains("bruteforce"))
            out << "brute-force image size " << j["bruteforce"]["image_size"] << " (" << (agree ? "agrees" : "DISAGREES")
                << " with " << img.get_str() << " = " << pid << "^2)\n";
    }
    return agree ? kOk : kVerificationFailed;
}

int cmd_build(const Options& opt, std::istream& in, std::ostream& out)
{
    auto inst = io::parse_instance(read_input(opt, in));
    const auto p = resolve(inst.ed, inst.alpha);
    const auto nf = compute_normal_form(p.ed);
    json j;
    if (p.symbolic) {
        j = module_json(build_symbolic(nf), opt);
        j["domain"] = "symbolic";
    } else {
        j = module_json(build_module(nf, p.values, CycScalar::qpower(1, nf.m)), opt);
        j["domain"] = "rational";
    }
    j["normal_form"] = io::to_json(nf);
    j["generators"] = kept_json(p);
    if (p.notice)
        j["notice"] = *p.notice;
    out << j.dump(opt.dense ? -1 : 2) << '\n';
    return kOk;
}

int cmd_verify(const Options& opt, std::istream& in, std::ostream& out)
{
    auto inst = io::parse_instance(read_input(opt, in));
    const auto p = resolve(inst.ed, inst.alpha);
    const auto nf = compute_normal_form(p.ed);
    const auto pid = pi_degree(p.ed, nf);

    const auto sym = build_symbolic(nf);
    RelationReport rel;
    if (p.symbolic) {
        rel = verify_relations(sym, p.ed.H);
    } else {
        rel = verify_relations(build_module(nf, p.values, CycScalar::qpower(1, nf.m)), p.ed.H);
    }
    const auto cert = formal_simplicity_certificate(nf);
    const bool dim_ok = sym.dim() == pid;

    json j = {{"dimension", sym.dim()}, {"pi_degree", pid}, {"dimension_ok", dim_ok},
              {"relations", io::to_json(rel)}, {"simplicity", io::to_json(cert)}};
    bool ok = dim_ok && rel.ok() && cert.ok();
    if (opt.trials > 0) {
        const std::uint64_t prime = opt.prime ? opt.prime : smallest_prime_one_mod(nf.m);
        const auto fam = instantiate_finite_field(sym, prime, opt.seed);
        const auto gen = random_vector_generation_test(fam.x, prime, opt.trials, opt.seed);
        auto gj = io::to_json(gen);
        gj["prime"] = prime;
        gj["q"] = fam.q;
        j["generation"] = gj;
        ok = ok && gen.ok;
    }
    if (p.notice)
        j["notice"] = *p.notice;
    j["ok"] = ok;

    if (opt.json) {
        out << j.dump(2) << '\n';
    } else {
        auto line = [&](bool pass, const std::string& what) { out << (pass ? "PASS " : "FAIL ") << what << '\n'; };
        if (p.notice)
            out << "note: " << *p.notice << '\n';
        line(dim_ok, "dimension " + std::to_string(sym.dim()) + " = PI degree " + std::to_string(pid));
        line(rel.ok(), "relations (" + std::to_string(rel.checked) + " ordered pairs, " +
                           (p.symbolic ? "symbolic" : "rational") + " scalars)");
        for (const auto& f : rel.failures)
            out << "  " << f.family << f.i + 1 << ", " << f.family << f.j + 1 << ": " << f.detail << '\n';
        line(cert.ok(), "formal simplicity (separated=" + std::string(cert.separated ? "yes" : "no") +
                            ", transitive=" + (cert.transitive ? "yes" : "no") + ")");
        if (j.contains("generation"))
            line(j["generation"]["ok"].get<bool>(),
                 "finite-field generation test (p=" + std::to_string(j["generation"]["prime"].get<std::uint64_t>()) +
                     ", " + std::to_string(opt.trials) + " trials)");
    }
    return ok ? kOk : kVerificationFailed;
}

struct PairSetup {
    Params a, b;
    bool same_support = true;
};

PairSetup setup_pair(const io::ProblemInstance& inst)
{
    if (!inst.alpha || !inst.beta)
        throw InvalidParameterError("this command needs both \"alpha\" and \"beta\"");
    auto symbolic = [](const std::vector<io::ScalarSpec>& v) {
        return std::any_of(v.begin(), v.end(), [](const io::ScalarSpec& s) { return s.symbolic; });
    };
    if (symbolic(*inst.alpha) || symbolic(*inst.beta))
        throw UnsupportedDomainError("isomorphism needs concrete parameters; \"sym\" entries are not decidable");
    PairSetup ps{resolve(inst.ed, inst.alpha), resolve(inst.ed, inst.beta)};
    ps.same_support = ps.a.kept == ps.b.kept;
    return ps;
}

int cmd_classify(const Options& opt, std::istream& in, std::ostream& out)
{
    const auto ps = setup_pair(io::parse_instance(read_input(opt, in)));
    json j = {{"generators", kept_json(ps.a)}};
    std::optional<IsoWitness<CycScalar>> w;
    if (ps.same_support) {
        const auto nf = compute_normal_form(ps.a.ed);
        w = are_isomorphic(nf, ps.a.values, ps.b.values, CycScalar::qpower(1, nf.m));
    } else {
        j["reason"] = "alpha and beta vanish on different generators";
    }
    j["isomorphic"] = w.has_value();
    if (w)
        j["witness"] = io::to_json(*w);
    if (opt.json)
        out << j.dump(2) << '\n';
    else if (w)
        out << io::to_json(*w).dump() << '\n';
    else
        out << "not isomorphic\n";
    return kOk;
}

int cmd_intertwine(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err)
{
    const auto ps = setup_pair(io::parse_instance(read_input(opt, in)));
    std::optional<IsoWitness<CycScalar>> w;
    std::optional<TorusNormalForm> nf;
    if (ps.same_support) {
        nf = compute_normal_form(ps.a.ed);
        w = are_isomorphic(*nf, ps.a.values, ps.b.values, CycScalar::qpower(1, nf->m));
    }
    if (!w) {
        err << "not isomorphic: no intertwiner exists\n";
        return kVerificationFailed;
    }
    const auto q = CycScalar::qpower(1, nf->m);
    const auto phi = build_intertwiner(*nf, ps.a.values, ps.b.values, *w, q);
    if (opt.dense && phi.dim() > kDenseLimit)
        throw InvalidParameterError("--dense needs dimension <= " + std::to_string(kDenseLimit));
    json j = {{"dimension", phi.dim()},
              {"witness", io::to_json(*w)},
              {"generators", kept_json(ps.a)},
              {"matrix", opt.dense ? io::to_json_dense(phi) : io::to_json_sparse(phi)}};
    out << j.dump(opt.dense ? -1 : 2) << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// Golden corpus for `selftest`.

struct Golden {
    std::string name;
    std::function<bool()> run;
};

std::vector<Golden> golden_corpus()
{
    const IntMatrix h3{{0, 1, 2}, {-1, 0, 0}, {-2, 0, 0}};
    const IntMatrix uni4{{0, 1, 1, 1}, {-1, 0, 1, 1}, {-1, -1, 0, 1}, {-1, -1, -1, 0}};
    return {
        {"order_of_qpower(4, 6) = 3", [] { return order_of_qpower(4, 6) == 3; }},
        {"canonical_divisor(8, 12) = 4", [] { return canonical_divisor(8, 12) == 4; }},
        {"smith diag(2,3) = diag(1,6)",
         [] {
             auto d = smith_divisors(IntMatrix{{2, 0}, {0, 3}});
             return d == std::vector<mpz_class>{1, 6};
         }},
        {"skew [[0,2,0],[-2,0,4],[0,-4,0]] -> d=(2), zrank 1",
         [] {
             auto c = skew_normal_form(IntMatrix{{0, 2, 0}, {-2, 0, 4}, {0, -4, 0}});
             return c.dlist == std::vector<mpz_class>{2} && c.zrank == 1;
         }},
        {"image size of [[0,1,2],[-1,0,0],[-2,0,0]] mod 4 = 16",
         [h3] { return image_size_mod_m(h3, 4) == 16 && image_size_bruteforce_serial(h3, 4) == 16; }},
        {"pi degree [[0,4],[-4,0]] mod 6 = 3", [] { return pi_degree({IntMatrix{{0, 4}, {-4, 0}}, 6}) == 3; }},
        {"normal form of [[0,1,2],[-1,0,0],[-2,0,0]] mod 4",
         [h3] {
             auto nf = compute_normal_form({h3, 4});
             return nf.s == 1 && nf.dlist == std::vector<mpz_class>{1} && nf.hlist == std::vector<std::int64_t>{1} &&
                    nf.klist == std::vector<std::int64_t>{4} && nf.crank == 1;
         }},
        {"uniparameter rank 4 mod 3 -> k = (3,3)",
         [uni4] {
             auto nf = compute_normal_form({uni4, 3});
             return nf.s == 2 && nf.klist == std::vector<std::int64_t>{3, 3} && nf.hlist == std::vector<std::int64_t>{1, 1};
         }},
        {"symbolic module of [[0,1,2],[-1,0,0],[-2,0,0]] satisfies all relations",
         [h3] {
             auto nf = compute_normal_form({h3, 4});
             auto rep = build_symbolic(nf);
             return rep.dim() == 4 && verify_relations(rep, h3).ok();
         }},
        {"finite-field oracle: [[0,1,2],[-1,0,0],[-2,0,0]] is simple over F_13",
         [h3] {
             auto rep = build_symbolic(compute_normal_form({h3, 4}));
             auto fam = instantiate_finite_field(rep, 13, 7);
             return fam.q == 8 && power(FpElem(fam.q, 13), 4).value() == 1 &&
                    power(FpElem(fam.q, 13), 2).value() != 1 && random_vector_generation_test(fam.x, 13, 8, 7).ok;
         }},
        {"isomorphism witness r = 1 for a shifted parameter",
         [] {
             const IntMatrix h{{0, 1}, {-1, 0}};
             auto nf = compute_normal_form({h, 4});
             std::vector<CycScalar> a{CycScalar(2, 0, 4), CycScalar(3, 1, 4)};
             std::vector<CycScalar> b{a[0], a[1] * CycScalar::qpower(-1, 4)};
             auto w = are_isomorphic(nf, a, b, CycScalar::qpower(1, 4));
             if (!w || w->r != std::vector<std::int64_t>{1})
                 return false;
             build_intertwiner(nf, a, b, *w, CycScalar::qpower(1, 4));
             return true;
         }},
    };
}

int cmd_selftest(const Options& opt, std::ostream& out)
{
    json cases = json::array();
    bool all = true;
    for (const auto& g : golden_corpus()) {
        bool ok = false;
        std::string error;
        try {
            ok = g.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        all = all && ok;
        cases.push_back({{"name", g.name}, {"ok", ok}});
        if (!opt.json)
            out << (ok ? "PASS " : "FAIL ") << g.name << (error.empty() ? "" : " (" + error + ")") << '\n';
    }
    if (opt.json)
        out << json{{"ok", all}, {"cases", cases}}.dump(2) << '\n';
    return all ? kOk : kVerificationFailed;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Simple modules over quantum tori at roots of unity", "qtorus"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool input) {
        if (input)
            sub->add_option("input", opt.input, "JSON instance file (default: standard input)");
        sub->add_flag("--json", opt.json, "Emit JSON instead of text");
    };
    auto* nf = app.add_subcommand("normal-form", "Print the torus normal form as JSON");
    add_common(nf, true);
    auto* pd = app.add_subcommand("pi-degree", "Print the PI degree with a brute-force cross-check");
    add_common(pd, true);
    auto* build = app.add_subcommand("build", "Emit the generator matrices of M(alpha)");
    add_common(build, true);
    build->add_flag("--dense", opt.dense, "Dense matrices (dimension <= 64)");
    auto* verify = app.add_subcommand("verify", "Check relations, dimension and simplicity");
    add_common(verify, true);
    verify->add_option("--prime", opt.prime, "Prime p = 1 mod m for the finite-field oracle");
    verify->add_option("--seed", opt.seed, "Seed for the finite-field oracle");
    verify->add_option("--trials", opt.trials, "Random-vector trials (0 skips the oracle)");
    auto* classify = app.add_subcommand("classify", "Decide whether M(alpha) and M(beta) are isomorphic");
    add_common(classify, true);
    auto* inter = app.add_subcommand("intertwine", "Print an isomorphism M(alpha) -> M(beta)");
    add_common(inter, true);
    inter->add_flag("--dense", opt.dense, "Dense matrix (dimension <= 64)");
    auto* self = app.add_subcommand("selftest", "Run the embedded golden corpus");
    add_common(self, false);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }

    try {
        if (nf->parsed())
            return cmd_normal_form(opt, in, out);
        if (pd->parsed())
            return cmd_pi_degree(opt, in, out);
        if (build->parsed())
            return cmd_build(opt, in, out);
        if (verify->parsed())
            return cmd_verify(opt, in, out);
        if (classify->parsed())
            return cmd_classify(opt, in, out);
        if (inter->parsed())
            return cmd_intertwine(opt, in, out, err);
        if (self->parsed())
            return cmd_selftest(opt, out);
    } catch (const io::FormatError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kPrecondition;
    } catch (const InvariantViolation& e) {
        err << "internal check failed: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kParseError;
}

} // namespace qtorus::cli
