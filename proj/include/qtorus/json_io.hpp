#pragma once

// JSON forms of the exported types. Integers that do not fit in 64 bits are
// written as decimal strings; readers accept either form.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtorus/analysis.hpp"

namespace qtorus::io {

using json = nlohmann::json;

/// Input schema violation (wrong type, missing key). Maps to exit status 2.
class FormatError : public Error {
public:
    using Error::Error;
};

json to_json(const mpz_class& x);
mpz_class mpz_from_json(const json& j);
std::int64_t int64_from_json(const json& j, const char* what);

json to_json(const IntMatrix& a);
IntMatrix matrix_from_json(const json& j);

json to_json(const AlphaMonomial& a);
AlphaMonomial alpha_monomial_from_json(const json& j, std::int64_t m);

json to_json(const CycScalar& c);
CycScalar cyc_scalar_from_json(const json& j, std::int64_t m);

inline json to_json(const FpElem& e) { return json(e.value()); }

json to_json(const TorusNormalForm& nf);
TorusNormalForm normal_form_from_json(const json& j);

json to_json(const IsoWitness<CycScalar>& w);
IsoWitness<CycScalar> witness_from_json(const json& j, std::int64_t m);

json to_json(const RelationReport& r);
json to_json(const SimplicityCertificate& c);
json to_json(const GenerationReport& g);

/// Sparse triplets [{"row", "col", "scalar"}, ...].
template <class S>
json to_json_sparse(const MonomialMatrix<S>& a)
{
    json out = json::array();
    for (std::size_t r = 0; r < a.dim(); ++r)
        out.push_back({{"row", r}, {"col", a.col(r)}, {"scalar", to_json(a.value(r))}});
    return out;
}

/// Dense rows with 0 for absent entries.
template <class S>
json to_json_dense(const MonomialMatrix<S>& a)
{
    json out = json::array();
    for (std::size_t r = 0; r < a.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.dim(); ++c)
            row.push_back(c == a.col(r) ? to_json(a.value(r)) : json(0));
        out.push_back(std::move(row));
    }
    return out;
}

MonomialMatrix<AlphaMonomial> alpha_matrix_from_json(const json& j, std::int64_t m);
MonomialMatrix<CycScalar> cyc_matrix_from_json(const json& j, std::int64_t m);

// ---------------------------------------------------------------------------
// Problem instances.

/// One entry of an alpha list: "sym", or {"num", "den", "qexp"} where num = 0
/// means the generator acts as zero.
struct ScalarSpec {
    bool symbolic = false;
    mpq_class coeff = 1;
    std::int64_t qexp = 0;

    bool is_zero() const { return !symbolic && coeff == 0; }
};

struct ProblemInstance {
    ExponentData ed;
    std::optional<std::vector<ScalarSpec>> alpha;
    std::optional<std::vector<ScalarSpec>> beta;
};

/// Parses the document text; syntax errors become FormatError with line and
/// column. Mathematical validation (antisymmetry) is left to the caller.
ProblemInstance parse_instance(const std::string& text);

} // namespace qtorus::io
