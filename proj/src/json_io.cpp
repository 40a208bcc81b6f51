#include "qtorus/json_io.hpp"

namespace qtorus::io {

namespace {

const json& require(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

template <class T, class F>
std::vector<T> array_of(const json& j, const char* what, F&& f)
{
    if (!j.is_array())
        throw FormatError(std::string(what) + " must be an array");
    std::vector<T> out;
    for (const auto& e : j)
        out.push_back(f(e));
    return out;
}

} // namespace

json to_json(const mpz_class& x)
{
    if (x.fits_slong_p())
        return json(static_cast<std::int64_t>(x.get_si()));
    return json(x.get_str());
}

mpz_class mpz_from_json(const json& j)
{
    if (j.is_number_unsigned())
        return mpz_class(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer())
        return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        mpz_class x;
        if (x.set_str(j.get<std::string>(), 10) != 0)
            throw FormatError("not a decimal integer: " + j.get<std::string>());
        return x;
    }
    throw FormatError("expected an integer, got " + j.dump());
}

std::int64_t int64_from_json(const json& j, const char* what)
{
    if (!j.is_number_integer())
        throw FormatError(std::string(what) + " must be an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        throw FormatError(std::string(what) + " out of range");
    return j.get<std::int64_t>();
}

json to_json(const IntMatrix& a)
{
    json out = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j)
            row.push_back(to_json(a(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

IntMatrix matrix_from_json(const json& j)
{
    auto rows = array_of<std::vector<mpz_class>>(j, "matrix", [](const json& r) {
        return array_of<mpz_class>(r, "matrix row", [](const json& x) { return mpz_from_json(x); });
    });
    return IntMatrix::from_rows(rows);
}

json to_json(const AlphaMonomial& a) { return {{"avec", a.avec()}, {"qexp", a.qexp()}}; }

AlphaMonomial alpha_monomial_from_json(const json& j, std::int64_t m)
{
    auto avec = array_of<std::int64_t>(require(j, "avec"), "avec", [](const json& x) {
        return int64_from_json(x, "avec entry");
    });
    return AlphaMonomial(std::move(avec), int64_from_json(require(j, "qexp"), "qexp"), m);
}

json to_json(const CycScalar& c)
{
    return {{"num", to_json(mpz_class(c.coeff().get_num()))},
            {"den", to_json(mpz_class(c.coeff().get_den()))},
            {"qexp", c.qexp()}};
}

CycScalar cyc_scalar_from_json(const json& j, std::int64_t m)
{
    mpq_class c(mpz_from_json(require(j, "num")), j.contains("den") ? mpz_from_json(j.at("den")) : mpz_class(1));
    const auto e = j.contains("qexp") ? int64_from_json(j.at("qexp"), "qexp") : 0;
    return CycScalar(c, e, m);
}

json to_json(const TorusNormalForm& nf)
{
    json d = json::array(), cd = json::array();
    for (const auto& x : nf.dlist)
        d.push_back(to_json(x));
    for (const auto& x : nf.central_d)
        cd.push_back(to_json(x));
    return {{"s", nf.s},      {"d", d},         {"h", nf.hlist},         {"k", nf.klist}, {"U", to_json(nf.U)},
            {"crank", nf.crank}, {"central_d", cd}, {"n", nf.n},         {"m", nf.m}};
}

TorusNormalForm normal_form_from_json(const json& j)
{
    TorusNormalForm nf;
    nf.U = matrix_from_json(require(j, "U"));
    nf.n = nf.U.rows();
    nf.m = int64_from_json(require(j, "m"), "m");
    nf.s = static_cast<std::size_t>(int64_from_json(require(j, "s"), "s"));
    nf.crank = static_cast<std::size_t>(int64_from_json(require(j, "crank"), "crank"));
    nf.dlist = array_of<mpz_class>(require(j, "d"), "d", [](const json& x) { return mpz_from_json(x); });
    nf.hlist = array_of<std::int64_t>(require(j, "h"), "h", [](const json& x) { return int64_from_json(x, "h"); });
    nf.klist = array_of<std::int64_t>(require(j, "k"), "k", [](const json& x) { return int64_from_json(x, "k"); });
    if (j.contains("central_d"))
        nf.central_d = array_of<mpz_class>(j.at("central_d"), "central_d", [](const json& x) { return mpz_from_json(x); });
    if (nf.dlist.size() != nf.s || nf.hlist.size() != nf.s || nf.klist.size() != nf.s || 2 * nf.s + nf.crank != nf.n)
        throw FormatError("inconsistent normal form sizes");
    return nf;
}

json to_json(const IsoWitness<CycScalar>& w)
{
    json scale = json::array();
    for (const auto& c : w.scale)
        scale.push_back(to_json(c));
    return {{"r", w.r}, {"scale", scale}};
}

IsoWitness<CycScalar> witness_from_json(const json& j, std::int64_t m)
{
    IsoWitness<CycScalar> w;
    w.r = array_of<std::int64_t>(require(j, "r"), "r", [](const json& x) { return int64_from_json(x, "r"); });
    if (j.contains("scale"))
        w.scale = array_of<CycScalar>(j.at("scale"), "scale", [m](const json& x) { return cyc_scalar_from_json(x, m); });
    return w;
}

json to_json(const RelationReport& r)
{
    json fails = json::array();
    for (const auto& f : r.failures)
        fails.push_back({{"family", f.family}, {"i", f.i}, {"j", f.j}, {"detail", f.detail}});
    return {{"ok", r.ok()}, {"checked", r.checked}, {"failures", fails}};
}

json to_json(const SimplicityCertificate& c)
{
    return {{"ok", c.ok()},
            {"separated", c.separated},
            {"transitive", c.transitive},
            {"periods", c.periods},
            {"block_qexp", c.block_qexp},
            {"block_orders", c.block_orders}};
}

json to_json(const GenerationReport& g)
{
    return {{"ok", g.ok},
            {"dim", g.dim},
            {"trials", g.spanned.size()},
            {"spanned", g.spanned},
            {"eigen_fallbacks", g.eigen_fallbacks}};
}

namespace {

template <class S, class F>
MonomialMatrix<S> matrix_from_triplets(const json& j, F&& scalar)
{
    if (!j.is_array())
        throw FormatError("monomial matrix must be an array of triplets");
    const std::size_t dim = j.size();
    std::vector<std::size_t> cols(dim, dim);
    std::vector<std::optional<S>> vals(dim);
    for (const auto& t : j) {
        const auto r = int64_from_json(require(t, "row"), "row");
        const auto c = int64_from_json(require(t, "col"), "col");
        if (r < 0 || c < 0 || static_cast<std::size_t>(r) >= dim || static_cast<std::size_t>(c) >= dim ||
            vals[static_cast<std::size_t>(r)])
            throw FormatError("bad triplet index");
        cols[static_cast<std::size_t>(r)] = static_cast<std::size_t>(c);
        vals[static_cast<std::size_t>(r)] = scalar(require(t, "scalar"));
    }
    std::vector<S> out;
    for (auto& v : vals)
        out.push_back(std::move(*v));
    return MonomialMatrix<S>(std::move(cols), std::move(out));
}

} // namespace

MonomialMatrix<AlphaMonomial> alpha_matrix_from_json(const json& j, std::int64_t m)
{
    return matrix_from_triplets<AlphaMonomial>(j, [m](const json& x) { return alpha_monomial_from_json(x, m); });
}

MonomialMatrix<CycScalar> cyc_matrix_from_json(const json& j, std::int64_t m)
{
    return matrix_from_triplets<CycScalar>(j, [m](const json& x) { return cyc_scalar_from_json(x, m); });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ScalarSpec> scalar_specs(const json& j, const char* what)
{
    return array_of<ScalarSpec>(j, what, [what](const json& e) {
        ScalarSpec s;
        if (e.is_string()) {
            if (e.get<std::string>() != "sym")
                throw FormatError(std::string(what) + ": unknown scalar \"" + e.get<std::string>() + "\"");
            s.symbolic = true;
            return s;
        }
        if (!e.is_object())
            throw FormatError(std::string(what) + ": scalar must be \"sym\" or {\"num\",\"den\",\"qexp\"}");
        const mpz_class den = e.contains("den") ? mpz_from_json(e.at("den")) : mpz_class(1);
        if (den == 0)
            throw FormatError(std::string(what) + ": zero denominator");
        s.coeff = mpq_class(mpz_from_json(require(e, "num")), den);
        s.coeff.canonicalize();
        s.qexp = e.contains("qexp") ? int64_from_json(e.at("qexp"), "qexp") : 0;
        return s;
    });
}

} // namespace

ProblemInstance parse_instance(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw FormatError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                          ": " + e.what());
    }
    if (!doc.is_object())
        throw FormatError("instance must be a JSON object");
    ProblemInstance inst;
    inst.ed.m = int64_from_json(require(doc, "m"), "m");
    inst.ed.H = matrix_from_json(require(doc, "H"));
    if (doc.contains("alpha"))
        inst.alpha = scalar_specs(doc.at("alpha"), "alpha");
    if (doc.contains("beta"))
        inst.beta = scalar_specs(doc.at("beta"), "beta");
    return inst;
}

} // namespace qtorus::io
