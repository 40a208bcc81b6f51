#include "qtorus/intlat.hpp"

#include <optional>
#include <ostream>
#include <utility>

namespace qtorus {

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool divides(const mpz_class& d, const mpz_class& x)
{
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

struct Pos {
    std::size_t i, j;
};

// Smallest nonzero |entry| in the lower-right block starting at (r0, c0).
// Ties go to the lexicographically lowest (row, col).
std::optional<Pos> min_abs_entry(const IntMatrix& a, std::size_t r0, std::size_t c0)
{
    std::optional<Pos> best;
    mpz_class best_abs;
    for (std::size_t i = r0; i < a.rows(); ++i)
        for (std::size_t j = c0; j < a.cols(); ++j) {
            const auto& x = a(i, j);
            if (x == 0)
                continue;
            mpz_class ax = abs(x);
            if (!best || ax < best_abs) {
                best = Pos{i, j};
                best_abs = ax;
            }
        }
    return best;
}

// Congruence transformations H -> P^T H P, with P accumulated into U.
class Congruence {
public:
    Congruence(IntMatrix& h, IntMatrix& u) : h_(h), u_(u) {}

    void swap(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        h_.swap_rows(a, b);
        h_.swap_cols(a, b);
        u_.swap_cols(a, b);
    }

    // basis vector k += c * basis vector j
    void add(std::size_t k, std::size_t j, const mpz_class& c)
    {
        if (c == 0)
            return;
        h_.add_col_multiple(k, j, c);
        h_.add_row_multiple(k, j, c);
        u_.add_col_multiple(k, j, c);
    }

private:
    IntMatrix& h_;
    IntMatrix& u_;
};

} // namespace

// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw ShapeError("ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows)
{
    IntMatrix a(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != a.cols_)
            throw ShapeError("ragged matrix: row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " + std::to_string(a.cols_));
        for (std::size_t j = 0; j < a.cols_; ++j)
            a(i, j) = rows[i][j];
    }
    return a;
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        a(i, i) = 1;
    return a;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

bool IntMatrix::is_antisymmetric() const
{
    if (!square())
        return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, i) != 0)
            return false;
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i))
                return false;
    }
    return true;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& c)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(dst, j) += c * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, dst) += c * (*this)(i, src);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntMatrix operator-(const IntMatrix& a)
{
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = -a(i, j);
    return r;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& a)
{
    os << '[';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < a.cols(); ++j)
            os << (j ? ", " : "") << a(i, j).get_str();
        os << ']';
    }
    return os << ']';
}

mpz_class determinant(const IntMatrix& a)
{
    if (!a.square())
        throw DimensionError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    mpz_class sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& u)
{
    if (!u.square())
        throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = u.rows();
    // Row-reduce [U | I] over Z; unimodularity keeps every pivot a unit.
    IntMatrix a = u;
    IntMatrix inv = IntMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        // Euclid on column c below the diagonal until a single nonzero remains.
        for (;;) {
            std::optional<std::size_t> piv;
            for (std::size_t i = c; i < n; ++i)
                if (a(i, c) != 0 && (!piv || abs(a(i, c)) < abs(a(*piv, c))))
                    piv = i;
            if (!piv)
                throw InvariantViolation("matrix is singular, not unimodular");
            a.swap_rows(c, *piv);
            inv.swap_rows(c, *piv);
            bool clean = true;
            for (std::size_t i = c + 1; i < n; ++i) {
                if (a(i, c) == 0)
                    continue;
                mpz_class q = -floor_div(a(i, c), a(c, c));
                a.add_row_multiple(i, c, q);
                inv.add_row_multiple(i, c, q);
                if (a(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (abs(a(c, c)) != 1)
            throw InvariantViolation("matrix is not unimodular");
        if (a(c, c) < 0) {
            a.add_row_multiple(c, c, -2);
            inv.add_row_multiple(c, c, -2);
        }
    }
    for (std::size_t c = n; c-- > 0;)
        for (std::size_t i = 0; i < c; ++i) {
            if (a(i, c) == 0)
                continue;
            mpz_class q = -a(i, c);
            a.add_row_multiple(i, c, q);
            inv.add_row_multiple(i, c, q);
        }
    return inv;
}

// ---------------------------------------------------------------------------

SmithResult smith_normal_form(const IntMatrix& a)
{
    SmithResult r{a, IntMatrix::identity(a.rows()), IntMatrix::identity(a.cols())};
    IntMatrix& s = r.S;
    const std::size_t kmax = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < kmax; ++t) {
        for (;;) {
            auto p = min_abs_entry(s, t, t);
            if (!p)
                goto done; // remaining block is zero
            s.swap_rows(t, p->i);
            r.U.swap_rows(t, p->i);
            s.swap_cols(t, p->j);
            r.V.swap_cols(t, p->j);

            const mpz_class piv = s(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s(i, t) == 0)
                    continue;
                mpz_class q = -floor_div(s(i, t), piv);
                s.add_row_multiple(i, t, q);
                r.U.add_row_multiple(i, t, q);
                clean = clean && s(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s(t, j) == 0)
                    continue;
                mpz_class q = -floor_div(s(t, j), piv);
                s.add_col_multiple(j, t, q);
                r.V.add_col_multiple(j, t, q);
                clean = clean && s(t, j) == 0;
            }
            if (!clean)
                continue;

            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < s.rows() && !bad_row; ++i)
                for (std::size_t j = t + 1; j < s.cols(); ++j)
                    if (!divides(piv, s(i, j))) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row)
                break;
            s.add_row_multiple(t, *bad_row, 1);
            r.U.add_row_multiple(t, *bad_row, 1);
        }
        if (s(t, t) < 0) {
            s.add_row_multiple(t, t, -2);
            r.U.add_row_multiple(t, t, -2);
        }
    }
done:
    return r;
}

std::vector<mpz_class> smith_divisors(const IntMatrix& a)
{
    auto r = smith_normal_form(a);
    std::vector<mpz_class> out;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        out.push_back(r.S(i, i));
    return out;
}

// ---------------------------------------------------------------------------

IntMatrix SkewNormalCertificate::block_matrix() const
{
    const std::size_t n = 2 * dlist.size() + zrank;
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < dlist.size(); ++i) {
        b(2 * i, 2 * i + 1) = dlist[i];
        b(2 * i + 1, 2 * i) = -dlist[i];
    }
    return b;
}

SkewNormalCertificate skew_normal_form(const IntMatrix& h)
{
    if (!h.is_antisymmetric())
        throw ShapeError("skew normal form needs an antisymmetric square matrix");
    const std::size_t n = h.rows();
    IntMatrix a = h;
    SkewNormalCertificate cert{IntMatrix::identity(n), {}, 0};
    Congruence cg(a, cert.U);

    std::size_t t = 0;
    while (t + 1 < n) {
        auto p = min_abs_entry(a, t, t);
        if (!p)
            break;
        for (;;) {
            // Lexicographic tie-break puts the pivot above the diagonal.
            std::size_t i = p->i, j = p->j;
            cg.swap(t, i);
            if (j == t)
                j = i;
            cg.swap(t + 1, j);

            const mpz_class piv = a(t, t + 1);
            for (std::size_t k = t + 2; k < n; ++k) {
                cg.add(k, t + 1, -floor_div(a(t, k), piv));
                cg.add(k, t, floor_div(a(t + 1, k), piv));
            }
            bool clean = true;
            for (std::size_t k = t + 2; k < n && clean; ++k)
                clean = a(t, k) == 0 && a(t + 1, k) == 0;

            if (clean) {
                std::optional<std::size_t> bad;
                for (std::size_t r = t + 2; r < n && !bad; ++r)
                    for (std::size_t c = r + 1; c < n; ++c)
                        if (!divides(piv, a(r, c))) {
                            bad = r;
                            break;
                        }
                if (!bad)
                    break;
                cg.add(t, *bad, 1);
            }
            p = min_abs_entry(a, t, t);
        }
        if (a(t, t + 1) < 0)
            cg.swap(t, t + 1);
        cert.dlist.push_back(a(t, t + 1));
        t += 2;
    }
    cert.zrank = n - 2 * cert.dlist.size();

    // Every later pivot is built from entries divisible by the earlier
    // ones, so the chain holds by construction; check it anyway.
    for (std::size_t i = 1; i < cert.dlist.size(); ++i)
        if (!divides(cert.dlist[i - 1], cert.dlist[i]))
            throw InvariantViolation("skew normal form divisibility chain broken");
    if (cert.U.transpose() * h * cert.U != cert.block_matrix())
        throw InvariantViolation("skew normal form congruence replay failed");
    return cert;
}

bool check_certificate(const IntMatrix& h, const SkewNormalCertificate& cert)
{
    const std::size_t n = h.rows();
    if (!h.square() || cert.U.rows() != n || cert.U.cols() != n)
        return false;
    if (2 * cert.dlist.size() + cert.zrank != n)
        return false;
    if (abs(determinant(cert.U)) != 1)
        return false;
    for (std::size_t i = 0; i < cert.dlist.size(); ++i) {
        if (cert.dlist[i] <= 0)
            return false;
        if (i > 0 && !divides(cert.dlist[i - 1], cert.dlist[i]))
            return false;
    }
    return cert.U.transpose() * h * cert.U == cert.block_matrix();
}

mpz_class image_size_mod_m(const IntMatrix& h, std::int64_t m)
{
    if (m < 1)
        throw InvalidOrderError("root of unity order must be positive, got " + std::to_string(m));
    if (!h.square())
        throw ShapeError("image size needs a square matrix");
    const mpz_class mm(static_cast<long>(m));
    auto divs = smith_divisors(h);
    mpz_class total = 1;
    for (const auto& s : divs) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), mm.get_mpz_t()); // gcd(0, m) = m
        total *= mm / g;
    }
    return total;
}

mpz_class entry_gcd(const IntMatrix& a)
{
    mpz_class g = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a(i, j).get_mpz_t());
    return g;
}

mpz_class exact_isqrt(const mpz_class& x)
{
    if (x < 0 || mpz_perfect_square_p(x.get_mpz_t()) == 0)
        throw InvariantViolation("expected a perfect square, got " + x.get_str());
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

} // namespace qtorus
