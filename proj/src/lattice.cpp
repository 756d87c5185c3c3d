#include "cyclo/lattice.hpp"

#include <algorithm>
#include <set>

#include "cyclo/errors.hpp"

namespace cyclo {

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<std::vector<std::int64_t>>& columns, std::size_t rows)
{
    IntegerMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw InputError("vector length does not match the lattice dimension");
        for (std::size_t i = 0; i < rows; ++i)
            m.at(i, j) = columns[j][i];
    }
    return m;
}

IntegerMatrix IntegerMatrix::transposed() const
{
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    t.row_labels = col_labels;
    t.col_labels = row_labels;
    return t;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
{
    if (a.cols() != b.rows())
        throw InternalError("matrix product dimension mismatch");
    IntegerMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

namespace {

// Working state for the Smith reduction; every operation is mirrored on the
// transforms and their inverses.
struct SmithState {
    IntegerMatrix a, u, u_inv, v, v_inv;

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t c = 0; c < a.cols(); ++c)
            std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c)
            std::swap(u.at(i, c), u.at(j, c));
        for (std::size_t r = 0; r < u_inv.rows(); ++r)
            std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t r = 0; r < a.rows(); ++r)
            std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r)
            std::swap(v.at(r, i), v.at(r, j));
        for (std::size_t c = 0; c < v_inv.cols(); ++c)
            std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }
    // row i += k * row j
    void add_row(std::size_t i, std::size_t j, const BigInt& k)
    {
        if (k == 0)
            return;
        for (std::size_t c = 0; c < a.cols(); ++c)
            a.at(i, c) += k * a.at(j, c);
        for (std::size_t c = 0; c < u.cols(); ++c)
            u.at(i, c) += k * u.at(j, c);
        for (std::size_t r = 0; r < u_inv.rows(); ++r)
            u_inv.at(r, j) -= k * u_inv.at(r, i);
    }
    // col i += k * col j
    void add_col(std::size_t i, std::size_t j, const BigInt& k)
    {
        if (k == 0)
            return;
        for (std::size_t r = 0; r < a.rows(); ++r)
            a.at(r, i) += k * a.at(r, j);
        for (std::size_t r = 0; r < v.rows(); ++r)
            v.at(r, i) += k * v.at(r, j);
        for (std::size_t c = 0; c < v_inv.cols(); ++c)
            v_inv.at(j, c) -= k * v_inv.at(i, c);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < a.cols(); ++c)
            a.at(i, c) = -a.at(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c)
            u.at(i, c) = -u.at(i, c);
        for (std::size_t r = 0; r < u_inv.rows(); ++r)
            u_inv.at(r, i) = -u_inv.at(r, i);
    }
};

} // namespace

SmithResult smith_normal_form(const IntegerMatrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithState st{m, IntegerMatrix::identity(rows), IntegerMatrix::identity(rows), IntegerMatrix::identity(cols),
                  IntegerMatrix::identity(cols)};
    auto& a = st.a;
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a.at(i, j) != 0 && (pi == rows || abs(a.at(i, j)) < abs(a.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                break;
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            const BigInt p = a.at(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                st.add_row(i, t, -BigInt(a.at(i, t) / p));
                if (a.at(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                st.add_col(j, t, -BigInt(a.at(t, j) / p));
                if (a.at(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < rows && divisible; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a.at(i, j) % p != 0) {
                        st.add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (a.at(t, t) == 0)
            break;
        if (a.at(t, t) < 0)
            st.negate_row(t);
    }

    SmithResult res;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (a.at(i, i) != 0)
            res.divisors.push_back(a.at(i, i));
    res.rank = res.divisors.size();
    res.D = a;
    res.U = st.u;
    res.V = st.v;

    bool ok = (st.u * m) * st.v == a && st.u * st.u_inv == IntegerMatrix::identity(rows) &&
              st.v * st.v_inv == IntegerMatrix::identity(cols);
    for (std::size_t i = 0; i < rows && ok; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (i != j && a.at(i, j) != 0) {
                ok = false;
                break;
            }
    for (std::size_t i = 1; i < res.divisors.size() && ok; ++i)
        if (res.divisors[i] % res.divisors[i - 1] != 0)
            ok = false;
    res.certificate_verified = ok;
    if (!ok)
        throw InternalError("Smith normal form certificate failed verification");
    return res;
}

namespace {

BigInt floor_div(const BigInt& x, const BigInt& p)
{
    BigInt q = x / p;
    if (q * p > x)
        q -= 1;
    return q;
}

} // namespace

IntegerMatrix hermite_normal_form(const IntegerMatrix& m)
{
    IntegerMatrix a = m.transposed();
    const std::size_t rows = a.rows(), cols = a.cols();
    auto row_axpy = [&](std::size_t i, std::size_t j, const BigInt& k) {
        for (std::size_t c = 0; c < cols; ++c)
            a.at(i, c) += k * a.at(j, c);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols; ++c)
            std::swap(a.at(i, c), a.at(j, c));
    };
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a.at(i, j) != 0 && (best == rows || abs(a.at(i, j)) < abs(a.at(best, j))))
                    best = i;
            if (best == rows)
                break;
            row_swap(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a.at(i, j) == 0)
                    continue;
                row_axpy(i, r, -BigInt(a.at(i, j) / a.at(r, j)));
                if (a.at(i, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (r >= rows || a.at(r, j) == 0)
            continue;
        if (a.at(r, j) < 0)
            for (std::size_t c = 0; c < cols; ++c)
                a.at(r, c) = -a.at(r, c);
        for (std::size_t i = 0; i < r; ++i)
            row_axpy(i, r, -floor_div(a.at(i, j), a.at(r, j)));
        ++r;
    }
    IntegerMatrix h(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            h.at(i, c) = a.at(i, c);
    return h;
}

DirectFactorReport is_direct_factor(const std::vector<std::vector<std::int64_t>>& vectors, std::size_t dimension)
{
    if (vectors.empty())
        throw InputError("is_direct_factor: no vectors");
    const auto snf = smith_normal_form(IntegerMatrix::from_columns(vectors, dimension));
    DirectFactorReport rep;
    rep.divisors = snf.divisors;
    rep.rank = snf.rank;
    rep.independent = snf.rank == vectors.size();
    rep.direct = std::all_of(snf.divisors.begin(), snf.divisors.end(), [](const BigInt& d) { return d == 1; });
    return rep;
}

BigInt determinant(const IntegerMatrix& m)
{
    if (m.rows() != m.cols())
        throw InputError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntegerMatrix a = m;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a.at(k, c), a.at(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

TriangularityReport triangularity_report(const IntegerMatrix& m, const std::vector<GKIndex>& rows,
                                         const std::vector<std::size_t>& pinned, const std::vector<bool>& exempt)
{
    if (rows.size() != m.rows() || pinned.size() != m.cols() || exempt.size() != m.cols())
        throw InputError("triangularity_report: label sizes do not match the matrix");
    TriangularityReport rep;
    const std::size_t cols = m.cols();
    std::set<std::size_t> distinct(pinned.begin(), pinned.end());
    rep.pinned_rows_distinct = distinct.size() == pinned.size();

    rep.column_order.resize(cols);
    for (std::size_t c = 0; c < cols; ++c)
        rep.column_order[c] = c;
    std::stable_sort(rep.column_order.begin(), rep.column_order.end(), [&](std::size_t x, std::size_t y) {
        return tuple_order_less(rows.at(pinned[x]), rows.at(pinned[y]));
    });

    for (std::size_t pos = 0; pos < cols; ++pos) {
        const auto c = rep.column_order[pos];
        const auto p = pinned[c];
        const auto d = m.at(p, c).convert_to<std::int64_t>();
        rep.diagonal.push_back(d);
        if (d != 1 && d != -1)
            rep.bad_diagonal.push_back({c, p, d});
        if (exempt[c]) {
            rep.exceptions.push_back(c);
            continue;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (m.at(r, c) == 0 || r == p)
                continue;
            const bool same_level_before = rows[r].omega == rows[p].omega && tuple_order_less(rows[r], rows[p]);
            bool earlier_pinned = false;
            for (std::size_t q = 0; q < pos; ++q)
                if (pinned[rep.column_order[q]] == r)
                    earlier_pinned = true;
            if (same_level_before || earlier_pinned)
                rep.violations.push_back({c, r, m.at(r, c).convert_to<std::int64_t>()});
        }
    }

    if (rep.pinned_rows_distinct) {
        IntegerMatrix sq(cols, cols);
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                sq.at(i, j) = m.at(pinned[rep.column_order[i]], rep.column_order[j]);
        rep.pinned_determinant = determinant(sq);
    }
    rep.passed = rep.pinned_rows_distinct && rep.bad_diagonal.empty() && rep.violations.empty();
    return rep;
}

} // namespace cyclo
