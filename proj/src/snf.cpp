#include "pervcalc/snf.hpp"

#include <cstdint>
#include <numeric>
#include <optional>

namespace pervcalc {

std::vector<Scalar> SmithForm::invariant_factors() const
{
    std::vector<Scalar> d;
    d.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i)
        d.push_back(diagonal(i, i));
    return d;
}

namespace {

// Arithmetic policies for the reducer. Each works in place on its own element
// type so the elimination loops allocate nothing per operation.

struct PrimeFieldArithmetic {
    using Elem = std::uint64_t;
    static constexpr bool is_field = true;
    std::uint64_t p;

    Elem from(const Ring& ring, const Scalar& x) const { return ring.reduce(x).get_num().get_ui(); }
    Scalar to(Elem e) const { return Scalar(static_cast<unsigned long>(e)); }
    bool is_zero(Elem e) const { return e == 0; }
    bool norm_less(Elem a, Elem b) const { return a < b; }
    bool norm_is_one(Elem a) const { return a == 1; }
    Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<unsigned __int128>(a) * b % p); }
    Elem inverse(Elem a) const
    {
        // Fermat: a^(p-2).
        Elem result = 1, base = a;
        for (std::uint64_t e = p - 2; e; e >>= 1) {
            if (e & 1)
                result = mul(result, base);
            base = mul(base, base);
        }
        return result;
    }
    Elem quotient(Elem a, Elem b) const { return mul(a, inverse(b)); }
    bool divides(Elem b, Elem a) const { return b != 0 || a == 0; }
    void sub_mul(Elem& x, Elem q, Elem y) const
    {
        Elem t = mul(q, y);
        x = x >= t ? x - t : x + (p - t);
    }
    void add_mul(Elem& x, Elem q, Elem y) const
    {
        Elem t = mul(q, y);
        x = x >= p - t ? x - (p - t) : x + t;
    }
    void add(Elem& x, Elem y) const { add_mul(x, 1, y); }
    void sub(Elem& x, Elem y) const { sub_mul(x, 1, y); }
    Elem normalizing_unit(Elem a) const { return inverse(a); }
    void scale(Elem& x, Elem u) const { x = mul(x, u); }
};

struct IntegerArithmetic {
    using Elem = Integer;
    static constexpr bool is_field = false;

    Elem from(const Ring& ring, const Scalar& x) const { return ring.reduce(x).get_num(); }
    Scalar to(const Elem& e) const { return Scalar(e); }
    bool is_zero(const Elem& e) const { return sgn(e) == 0; }
    bool norm_less(const Elem& a, const Elem& b) const { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
    bool norm_is_one(const Elem& a) const { return mpz_cmpabs_ui(a.get_mpz_t(), 1) == 0; }
    /// Quotient leaving a remainder in [0, |b|).
    Elem quotient(const Elem& a, const Elem& b) const
    {
        Elem q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (sgn(r) != 0 && sgn(b) < 0)
            q += 1;
        return q;
    }
    bool divides(const Elem& b, const Elem& a) const
    {
        if (sgn(b) == 0)
            return sgn(a) == 0;
        return mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
    }
    void sub_mul(Elem& x, const Elem& q, const Elem& y) const { mpz_submul(x.get_mpz_t(), q.get_mpz_t(), y.get_mpz_t()); }
    void add_mul(Elem& x, const Elem& q, const Elem& y) const { mpz_addmul(x.get_mpz_t(), q.get_mpz_t(), y.get_mpz_t()); }
    void add(Elem& x, const Elem& y) const { x += y; }
    void sub(Elem& x, const Elem& y) const { x -= y; }
    Elem normalizing_unit(const Elem& a) const { return Elem(sgn(a) < 0 ? -1 : 1); }
    Elem inverse(const Elem& a) const { return a; }
    void scale(Elem& x, const Elem& u) const
    {
        if (sgn(u) < 0)
            mpz_neg(x.get_mpz_t(), x.get_mpz_t());
    }
};

struct RationalArithmetic {
    using Elem = Scalar;
    static constexpr bool is_field = true;
    mutable Scalar tmp;
    mutable Integer lhs, rhs;

    Elem from(const Ring& ring, const Scalar& x) const { return ring.reduce(x); }
    Scalar to(const Elem& e) const { return e; }
    bool is_zero(const Elem& e) const { return sgn(e) == 0; }
    bool norm_less(const Elem& a, const Elem& b) const
    {
        // |a.num| * b.den < |b.num| * a.den
        mpz_mul(lhs.get_mpz_t(), a.get_num_mpz_t(), b.get_den_mpz_t());
        mpz_mul(rhs.get_mpz_t(), b.get_num_mpz_t(), a.get_den_mpz_t());
        return mpz_cmpabs(lhs.get_mpz_t(), rhs.get_mpz_t()) < 0;
    }
    bool norm_is_one(const Elem& a) const
    {
        return mpz_cmp_ui(a.get_den_mpz_t(), 1) == 0 && mpz_cmpabs_ui(a.get_num_mpz_t(), 1) == 0;
    }
    Elem inverse(const Elem& a) const
    {
        Elem r;
        mpq_inv(r.get_mpq_t(), a.get_mpq_t());
        return r;
    }
    Elem quotient(const Elem& a, const Elem& b) const
    {
        Elem r;
        mpq_div(r.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
        return r;
    }
    bool divides(const Elem& b, const Elem& a) const { return sgn(b) != 0 || sgn(a) == 0; }
    void sub_mul(Elem& x, const Elem& q, const Elem& y) const
    {
        mpq_mul(tmp.get_mpq_t(), q.get_mpq_t(), y.get_mpq_t());
        mpq_sub(x.get_mpq_t(), x.get_mpq_t(), tmp.get_mpq_t());
    }
    void add_mul(Elem& x, const Elem& q, const Elem& y) const
    {
        mpq_mul(tmp.get_mpq_t(), q.get_mpq_t(), y.get_mpq_t());
        mpq_add(x.get_mpq_t(), x.get_mpq_t(), tmp.get_mpq_t());
    }
    void add(Elem& x, const Elem& y) const { mpq_add(x.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t()); }
    void sub(Elem& x, const Elem& y) const { mpq_sub(x.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t()); }
    Elem normalizing_unit(const Elem& a) const { return inverse(a); }
    void scale(Elem& x, const Elem& u) const { mpq_mul(x.get_mpq_t(), x.get_mpq_t(), u.get_mpq_t()); }
};

template <class Arith>
class SmithReducer {
    using Elem = typename Arith::Elem;

    struct Grid {
        std::size_t rows = 0, cols = 0;
        std::vector<Elem> data;

        Grid() = default;
        Grid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
        Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
        const Elem& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
        void swap_rows(std::size_t x, std::size_t y)
        {
            for (std::size_t j = 0; j < cols; ++j)
                std::swap((*this)(x, j), (*this)(y, j));
        }
        void swap_columns(std::size_t x, std::size_t y)
        {
            for (std::size_t i = 0; i < rows; ++i)
                std::swap((*this)(i, x), (*this)(i, y));
        }
    };

public:
    SmithReducer(const Ring& ring, const Matrix& a, SmithOptions options, Arith arith)
        : arith_(std::move(arith)), options_(options), m_(a.rows()), n_(a.cols()), a_(m_, n_)
    {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                a_(i, j) = arith_.from(ring, a(i, j));
        if (options_.track_left)
            u_ = identity(m_);
        if (options_.track_left_inverse)
            uinv_ = identity(m_);
        if (options_.track_right)
            v_ = identity(n_);
    }

    SmithForm run()
    {
        std::size_t t = 0;
        for (; t < std::min(m_, n_); ++t) {
            auto pivot = find_pivot(t);
            if (!pivot)
                break;
            swap_rows(t, pivot->first);
            swap_columns(t, pivot->second);
            settle_pivot(t);
            Elem unit = arith_.normalizing_unit(a_(t, t));
            if (arith_.to(unit) != 1)
                scale_row(t, unit);
        }
        SmithForm result;
        result.rank = t;
        result.diagonal = export_grid(a_);
        if (options_.track_left)
            result.left = export_grid(u_);
        if (options_.track_left_inverse)
            result.left_inverse = export_grid(uinv_);
        if (options_.track_right)
            result.right = export_grid(v_);
        return result;
    }

private:
    Grid identity(std::size_t n) const
    {
        Grid g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            g(i, i) = Elem(1);
        return g;
    }

    Matrix export_grid(const Grid& g) const
    {
        Matrix m(g.rows, g.cols);
        for (std::size_t i = 0; i < g.rows; ++i)
            for (std::size_t j = 0; j < g.cols; ++j)
                if (!arith_.is_zero(g(i, j)))
                    m(i, j) = arith_.to(g(i, j));
        return m;
    }

    std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < m_; ++i)
            for (std::size_t j = t; j < n_; ++j) {
                const Elem& x = a_(i, j);
                if (arith_.is_zero(x))
                    continue;
                if (!best || arith_.norm_less(x, a_(best->first, best->second))) {
                    best = {i, j};
                    if (arith_.norm_is_one(x))
                        return best;
                }
            }
        return best;
    }

    // Clears row t and column t outside the pivot and, over Z, makes the pivot
    // divide the remaining block.
    void settle_pivot(std::size_t t)
    {
        for (;;) {
            for (std::size_t i = t + 1; i < m_; ++i) {
                if (arith_.is_zero(a_(i, t)))
                    continue;
                row_sub(i, t, arith_.quotient(a_(i, t), a_(t, t)));
            }
            if (auto i = smallest_in_column(t)) {
                swap_rows(t, *i);
                continue;
            }
            for (std::size_t j = t + 1; j < n_; ++j) {
                if (arith_.is_zero(a_(t, j)))
                    continue;
                column_sub(j, t, arith_.quotient(a_(t, j), a_(t, t)));
            }
            if (auto j = smallest_in_row(t)) {
                swap_columns(t, *j);
                continue;
            }
            if constexpr (Arith::is_field)
                return;
            bool indivisible = false;
            for (std::size_t i = t + 1; i < m_ && !indivisible; ++i)
                for (std::size_t j = t + 1; j < n_; ++j)
                    if (!arith_.divides(a_(t, t), a_(i, j))) {
                        row_add(t, i);
                        indivisible = true;
                        break;
                    }
            if (!indivisible)
                return;
        }
    }

    std::optional<std::size_t> smallest_in_column(std::size_t t) const
    {
        std::optional<std::size_t> best;
        for (std::size_t i = t + 1; i < m_; ++i)
            if (!arith_.is_zero(a_(i, t)) && (!best || arith_.norm_less(a_(i, t), a_(*best, t))))
                best = i;
        return best;
    }

    std::optional<std::size_t> smallest_in_row(std::size_t t) const
    {
        std::optional<std::size_t> best;
        for (std::size_t j = t + 1; j < n_; ++j)
            if (!arith_.is_zero(a_(t, j)) && (!best || arith_.norm_less(a_(t, j), a_(t, *best))))
                best = j;
        return best;
    }

    void swap_rows(std::size_t x, std::size_t y)
    {
        if (x == y)
            return;
        a_.swap_rows(x, y);
        if (options_.track_left)
            u_.swap_rows(x, y);
        if (options_.track_left_inverse)
            uinv_.swap_columns(x, y);
    }

    void swap_columns(std::size_t x, std::size_t y)
    {
        if (x == y)
            return;
        a_.swap_columns(x, y);
        if (options_.track_right)
            v_.swap_columns(x, y);
    }

    // row_i -= q * row_t
    void row_sub(std::size_t i, std::size_t t, const Elem& q)
    {
        if (arith_.is_zero(q))
            return;
        for (std::size_t j = t; j < n_; ++j)
            if (!arith_.is_zero(a_(t, j)))
                arith_.sub_mul(a_(i, j), q, a_(t, j));
        if (options_.track_left)
            for (std::size_t j = 0; j < m_; ++j)
                if (!arith_.is_zero(u_(t, j)))
                    arith_.sub_mul(u_(i, j), q, u_(t, j));
        if (options_.track_left_inverse)
            for (std::size_t r = 0; r < m_; ++r)
                if (!arith_.is_zero(uinv_(r, i)))
                    arith_.add_mul(uinv_(r, t), q, uinv_(r, i));
    }

    // row_t += row_i
    void row_add(std::size_t t, std::size_t i)
    {
        for (std::size_t j = t; j < n_; ++j)
            arith_.add(a_(t, j), a_(i, j));
        if (options_.track_left)
            for (std::size_t j = 0; j < m_; ++j)
                arith_.add(u_(t, j), u_(i, j));
        if (options_.track_left_inverse)
            for (std::size_t r = 0; r < m_; ++r)
                arith_.sub(uinv_(r, i), uinv_(r, t));
    }

    // col_j -= q * col_t
    void column_sub(std::size_t j, std::size_t t, const Elem& q)
    {
        if (arith_.is_zero(q))
            return;
        for (std::size_t i = t; i < m_; ++i)
            if (!arith_.is_zero(a_(i, t)))
                arith_.sub_mul(a_(i, j), q, a_(i, t));
        if (options_.track_right)
            for (std::size_t r = 0; r < n_; ++r)
                if (!arith_.is_zero(v_(r, t)))
                    arith_.sub_mul(v_(r, j), q, v_(r, t));
    }

    void scale_row(std::size_t t, const Elem& unit)
    {
        Elem inv = arith_.inverse(unit);
        for (std::size_t j = t; j < n_; ++j)
            arith_.scale(a_(t, j), unit);
        if (options_.track_left)
            for (std::size_t j = 0; j < m_; ++j)
                arith_.scale(u_(t, j), unit);
        if (options_.track_left_inverse)
            for (std::size_t r = 0; r < m_; ++r)
                arith_.scale(uinv_(r, t), inv);
    }

    Arith arith_;
    SmithOptions options_;
    std::size_t m_, n_;
    Grid a_;
    Grid u_, uinv_, v_;
};

}  // namespace

SmithForm smith_normal_form(const Ring& ring, const Matrix& a, SmithOptions options)
{
    switch (ring.kind()) {
    case Ring::Kind::PrimeField:
        return SmithReducer<PrimeFieldArithmetic>(ring, a, options, {ring.characteristic()}).run();
    case Ring::Kind::Integers:
        return SmithReducer<IntegerArithmetic>(ring, a, options, {}).run();
    case Ring::Kind::Rationals:
        break;
    }
    return SmithReducer<RationalArithmetic>(ring, a, options, {}).run();
}

SmithForm smith_normal_form(const Matrix& a)
{
    if (!a.is_integral())
        throw InputError("smith_normal_form: matrix has non-integer entries");
    return smith_normal_form(Ring::integers(), a);
}

Matrix lattice_basis(const Ring& ring, const Matrix& generators)
{
    auto snf = smith_normal_form(ring, generators, {.track_left = false, .track_left_inverse = true, .track_right = false});
    Matrix basis(generators.rows(), snf.rank);
    for (std::size_t j = 0; j < snf.rank; ++j) {
        const Scalar& d = snf.diagonal(j, j);
        for (std::size_t i = 0; i < generators.rows(); ++i)
            basis(i, j) = ring.mul(snf.left_inverse(i, j), d);
    }
    return basis;
}

namespace {

// Null space over a field from the reduced row echelon form: one basis vector
// per free column, with a 1 in that column.
template <class Arith>
Matrix field_kernel_basis(const Ring& ring, const Matrix& a, const Arith& arith)
{
    using Elem = typename Arith::Elem;
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Elem> g(m * n);
    auto at = [&](std::size_t i, std::size_t j) -> Elem& { return g[i * n + j]; };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) != 0)
                at(i, j) = arith.from(ring, a(i, j));

    std::vector<std::size_t> pivot_cols;
    std::vector<bool> is_pivot(n, false);
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        // The reduced echelon form does not depend on the pivot row, so take
        // the sparsest one to limit fill-in.
        std::size_t p = m, best_count = n + 1;
        for (std::size_t i = row; i < m; ++i) {
            if (arith.is_zero(at(i, c)))
                continue;
            std::size_t count = 0;
            for (std::size_t j = c; j < n; ++j)
                count += arith.is_zero(at(i, j)) ? 0 : 1;
            if (count < best_count) {
                p = i;
                best_count = count;
            }
        }
        if (p == m)
            continue;
        if (p != row)
            for (std::size_t j = c; j < n; ++j)
                std::swap(at(p, j), at(row, j));
        Elem inv = arith.inverse(at(row, c));
        for (std::size_t j = c; j < n; ++j)
            if (!arith.is_zero(at(row, j)))
                arith.scale(at(row, j), inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || arith.is_zero(at(i, c)))
                continue;
            Elem q = at(i, c);
            for (std::size_t j = c; j < n; ++j)
                if (!arith.is_zero(at(row, j)))
                    arith.sub_mul(at(i, j), q, at(row, j));
        }
        pivot_cols.push_back(c);
        is_pivot[c] = true;
        ++row;
    }

    Matrix basis(n, n - pivot_cols.size());
    std::size_t k = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        basis(f, k) = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r)
            if (!arith.is_zero(at(r, f)))
                basis(pivot_cols[r], k) = ring.neg(arith.to(at(r, f)));
        ++k;
    }
    return basis;
}

// Null space over Q: the same reduced echelon form, computed with
// fraction-free integer row operations and primitive rows.
Matrix rational_kernel_basis(const Matrix& a)
{
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Integer> g(m * n);
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return g[i * n + j]; };
    Integer scale, t;
    for (std::size_t i = 0; i < m; ++i) {
        scale = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(a(i, j)) != 0)
                mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(a(i, j)) != 0) {
                mpz_divexact(t.get_mpz_t(), scale.get_mpz_t(), a(i, j).get_den_mpz_t());
                mpz_mul(at(i, j).get_mpz_t(), t.get_mpz_t(), a(i, j).get_num_mpz_t());
            }
    }
    auto make_primitive = [&](std::size_t i) {
        t = 0;
        for (std::size_t j = 0; j < n && t != 1; ++j)
            if (sgn(at(i, j)) != 0)
                mpz_gcd(t.get_mpz_t(), t.get_mpz_t(), at(i, j).get_mpz_t());
        if (t > 1)
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(at(i, j)) != 0)
                    mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), t.get_mpz_t());
    };

    std::vector<std::size_t> pivot_cols;
    std::vector<bool> is_pivot(n, false);
    Integer x, y;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        std::size_t p = m, best_count = n + 1;
        for (std::size_t i = row; i < m; ++i) {
            if (sgn(at(i, c)) == 0)
                continue;
            std::size_t count = 0;
            for (std::size_t j = c; j < n; ++j)
                count += sgn(at(i, j)) == 0 ? 0 : 1;
            if (count < best_count) {
                p = i;
                best_count = count;
            }
        }
        if (p == m)
            continue;
        if (p != row)
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(p, j), at(row, j));
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || sgn(at(i, c)) == 0)
                continue;
            // row_i = (p / g) row_i - (a_ic / g) row_pivot with g = gcd(p, a_ic)
            mpz_gcd(t.get_mpz_t(), at(row, c).get_mpz_t(), at(i, c).get_mpz_t());
            mpz_divexact(x.get_mpz_t(), at(row, c).get_mpz_t(), t.get_mpz_t());
            mpz_divexact(y.get_mpz_t(), at(i, c).get_mpz_t(), t.get_mpz_t());
            for (std::size_t j = 0; j < n; ++j) {
                bool here = sgn(at(i, j)) != 0, there = sgn(at(row, j)) != 0;
                if (here)
                    mpz_mul(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), x.get_mpz_t());
                if (there)
                    mpz_submul(at(i, j).get_mpz_t(), y.get_mpz_t(), at(row, j).get_mpz_t());
            }
            make_primitive(i);
        }
        pivot_cols.push_back(c);
        is_pivot[c] = true;
        ++row;
    }

    Matrix basis(n, n - pivot_cols.size());
    std::size_t k = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        basis(f, k) = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r)
            if (sgn(at(r, f)) != 0) {
                Scalar& e = basis(pivot_cols[r], k);
                e = Scalar(-at(r, f), at(r, pivot_cols[r]));
                e.canonicalize();
            }
        ++k;
    }
    return basis;
}

// Kernel lattice over Z by column operations alone: A V = [H | 0] with V
// unimodular and H of full column rank, so the trailing columns of V span the
// kernel.
Matrix integer_kernel_basis(const Ring& ring, const Matrix& a)
{
    IntegerArithmetic arith;
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<Integer> g(m * n), v(n * n);
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return g[i * n + j]; };
    auto vt = [&](std::size_t i, std::size_t j) -> Integer& { return v[i * n + j]; };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (a(i, j) != 0)
                at(i, j) = arith.from(ring, a(i, j));
    for (std::size_t j = 0; j < n; ++j)
        vt(j, j) = 1;

    auto swap_columns = [&](std::size_t x, std::size_t y, std::size_t from_row) {
        if (x == y)
            return;
        for (std::size_t i = from_row; i < m; ++i)
            std::swap(at(i, x), at(i, y));
        for (std::size_t i = 0; i < n; ++i)
            std::swap(vt(i, x), vt(i, y));
    };
    std::size_t c = 0;
    for (std::size_t i = 0; i < m && c < n; ++i) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t j = c; j < n; ++j)
                if (!arith.is_zero(at(i, j)) && (!best || arith.norm_less(at(i, j), at(i, *best))))
                    best = j;
            if (!best)
                break;
            swap_columns(c, *best, i);
            bool cleared = true;
            for (std::size_t j = c + 1; j < n; ++j) {
                if (arith.is_zero(at(i, j)))
                    continue;
                Integer q = arith.quotient(at(i, j), at(i, c));
                for (std::size_t r = i; r < m; ++r)
                    if (!arith.is_zero(at(r, c)))
                        arith.sub_mul(at(r, j), q, at(r, c));
                for (std::size_t r = 0; r < n; ++r)
                    if (!arith.is_zero(vt(r, c)))
                        arith.sub_mul(vt(r, j), q, vt(r, c));
                cleared = cleared && arith.is_zero(at(i, j));
            }
            if (cleared) {
                ++c;
                break;
            }
        }
    }

    Matrix basis(n, n - c);
    for (std::size_t j = c; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            if (!arith.is_zero(vt(r, j)))
                basis(r, j - c) = arith.to(vt(r, j));
    return basis;
}

}  // namespace

Matrix kernel_basis(const Ring& ring, const Matrix& a)
{
    if (ring.kind() == Ring::Kind::PrimeField)
        return field_kernel_basis(ring, a, PrimeFieldArithmetic{ring.characteristic()});
    if (ring.kind() == Ring::Kind::Rationals)
        return rational_kernel_basis(a);
    return integer_kernel_basis(ring, a);
}

namespace {

std::optional<Matrix> solve_with(const Ring& ring, const SmithForm& snf, const Matrix& target)
{
    Matrix ux = reduce(ring, snf.left * target);
    Matrix y(snf.right.rows(), target.cols());
    for (std::size_t c = 0; c < target.cols(); ++c) {
        for (std::size_t i = 0; i < ux.rows(); ++i) {
            const Scalar& value = ux(i, c);
            if (i >= snf.rank) {
                if (value != 0)
                    return std::nullopt;
                continue;
            }
            const Scalar& d = snf.diagonal(i, i);
            if (!ring.divides(d, value))
                return std::nullopt;
            y(i, c) = ring.divmod(value, d).first;
        }
    }
    return reduce(ring, snf.right * y);
}

}  // namespace

std::optional<Matrix> solve_in_span(const Ring& ring, const Matrix& generators, const Matrix& target)
{
    if (generators.rows() != target.rows())
        throw InputError("solve_in_span: row count mismatch");
    auto snf = smith_normal_form(ring, generators, {.track_left = true, .track_left_inverse = false, .track_right = true});
    return solve_with(ring, snf, target);
}

bool in_span(const Ring& ring, const Matrix& generators, const Matrix& vectors)
{
    if (generators.rows() != vectors.rows())
        throw InputError("in_span: row count mismatch");
    auto snf = smith_normal_form(ring, generators, {.track_left = true, .track_left_inverse = false, .track_right = false});
    Matrix ux = reduce(ring, snf.left * vectors);
    for (std::size_t c = 0; c < vectors.cols(); ++c)
        for (std::size_t i = 0; i < ux.rows(); ++i) {
            if (i >= snf.rank) {
                if (ux(i, c) != 0)
                    return false;
            } else if (!ring.divides(snf.diagonal(i, i), ux(i, c))) {
                return false;
            }
        }
    return true;
}

}  // namespace pervcalc
