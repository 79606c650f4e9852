#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing in
// here calls into the Smith-form or factorization code it is used to check.

#include "pervcalc/matrix.hpp"
#include "pervcalc/module.hpp"
#include "pervcalc/random.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace testing {

using namespace pervcalc;

inline Matrix random_integer_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, long bound)
{
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = Scalar(rng.range(-bound, bound));
    return m;
}

/// Calls fn(det) for every k x k minor, enumerating row and column subsets.
inline void for_each_minor(const Matrix& a, std::size_t k, const std::function<void(const Scalar&)>& fn)
{
    std::vector<std::size_t> rows(k), cols(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t depth, std::size_t start) {
        if (depth == k) {
            pick_cols(0, 0);
            return;
        }
        for (std::size_t r = start; r < a.rows(); ++r) {
            rows[depth] = r;
            pick_rows(depth + 1, r + 1);
        }
    };
    pick_cols = [&](std::size_t depth, std::size_t start) {
        if (depth == k) {
            fn(determinant(a.select_rows(rows).select_columns(cols)));
            return;
        }
        for (std::size_t c = start; c < a.cols(); ++c) {
            cols[depth] = c;
            pick_cols(depth + 1, c + 1);
        }
    };
    pick_rows(0, 0);
}

/// gcd of all k x k minors.
inline Integer determinantal_divisor(const Matrix& a, std::size_t k)
{
    if (k == 0)
        return 1;
    Integer g = 0;
    for_each_minor(a, k, [&](const Scalar& det) { g = gcd(g, Integer(det.get_num())); });
    return abs(g);
}

/// Rank over a field as the largest k with a minor nonzero in the field.
inline std::size_t rank_by_minors(const Ring& ring, const Matrix& a)
{
    std::size_t rank = 0;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
        bool nonzero = false;
        for_each_minor(a, k, [&](const Scalar& det) { nonzero = nonzero || ring.reduce(det) != 0; });
        if (!nonzero)
            break;
        rank = k;
    }
    return rank;
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<Integer> invariant_factors_by_minors(const Matrix& a)
{
    std::vector<Integer> out;
    Integer previous = 1;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
        Integer dk = determinantal_divisor(a, k);
        if (dk == 0)
            break;
        out.push_back(dk / previous);
        previous = dk;
    }
    return out;
}

/// A finite abelian group Z/n_1 + ... + Z/n_k enumerated explicitly.
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<long> orders) : orders_(std::move(orders))
    {
        size_ = 1;
        for (long n : orders_)
            size_ *= n;
    }

    long size() const { return size_; }

    std::vector<long> element(long index) const
    {
        std::vector<long> e(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            e[i] = index % orders_[i];
            index /= orders_[i];
        }
        return e;
    }

    long index(const std::vector<long>& e) const
    {
        long idx = 0, stride = 1;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            idx += ((e[i] % orders_[i] + orders_[i]) % orders_[i]) * stride;
            stride *= orders_[i];
        }
        return idx;
    }

    long add(long x, long y) const
    {
        auto a = element(x), b = element(y);
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] += b[i];
        return index(a);
    }

    std::set<long> generated_by(const std::vector<long>& gens) const
    {
        std::set<long> sub{0};
        std::vector<long> frontier{0};
        while (!frontier.empty()) {
            long x = frontier.back();
            frontier.pop_back();
            for (long g : gens) {
                long y = add(x, g);
                if (sub.insert(y).second)
                    frontier.push_back(y);
            }
        }
        return sub;
    }

    /// Every subgroup, found by generating from tuples of up to rank elements.
    std::vector<std::set<long>> subgroups() const
    {
        std::set<std::set<long>> seen;
        std::size_t rank = std::max<std::size_t>(orders_.size(), 1);
        std::vector<long> gens;
        std::function<void()> rec = [&]() {
            seen.insert(generated_by(gens));
            if (gens.size() == rank)
                return;
            for (long x = 0; x < size_; ++x) {
                gens.push_back(x);
                rec();
                gens.pop_back();
            }
        };
        rec();
        return {seen.begin(), seen.end()};
    }

    long element_order(long x) const
    {
        long k = 1;
        for (long y = x; y != 0; y = add(y, x))
            ++k;
        return k;
    }

    /// Histogram of element orders of a subset (a subgroup); determines the
    /// isomorphism type of a finite abelian group.
    std::map<long, long> order_profile(const std::set<long>& subgroup) const
    {
        std::map<long, long> hist;
        for (long x : subgroup)
            ++hist[element_order(x)];
        return hist;
    }

private:
    std::vector<long> orders_;
    long size_ = 1;
};

/// Brute force: does N contain a subgroup isomorphic to M with a complement?
inline bool is_direct_summand_brute_force(const std::vector<long>& m_orders, const std::vector<long>& n_orders)
{
    FiniteAbelianGroup m(m_orders), n(n_orders);
    std::set<long> all_m;
    for (long x = 0; x < m.size(); ++x)
        all_m.insert(x);
    auto target = m.order_profile(all_m);
    auto subs = n.subgroups();
    for (const auto& a : subs) {
        if (static_cast<long>(a.size()) != m.size() || n.order_profile(a) != target)
            continue;
        for (const auto& b : subs) {
            if (static_cast<long>(a.size() * b.size()) != n.size())
                continue;
            std::vector<long> both;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
            if (both.size() == 1)
                return true;
        }
    }
    return false;
}

}  // namespace testing
