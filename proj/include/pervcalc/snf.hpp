#pragma once

#include "pervcalc/matrix.hpp"

#include <optional>
#include <vector>

namespace pervcalc {

/// U * A * V = D with U, V invertible over the ring and D diagonal with
/// d_1 | d_2 | ... | d_rank, followed by zeros. Over Z the d_i are positive
/// and U, V unimodular; over a field every d_i is 1.
struct SmithForm {
    Matrix left;
    Matrix left_inverse;
    Matrix diagonal;
    Matrix right;
    std::size_t rank = 0;

    std::vector<Scalar> invariant_factors() const;
};

struct SmithOptions {
    bool track_left = true;
    bool track_left_inverse = true;
    bool track_right = true;
};

/// Pivoting is deterministic: the smallest nonzero entry by absolute value,
/// scanning rows before columns, ties resolved by lowest index.
SmithForm smith_normal_form(const Ring& ring, const Matrix& a, SmithOptions options = {});

/// Integer Smith normal form.
SmithForm smith_normal_form(const Matrix& a);

/// Basis of the column span of `generators` (as columns).
Matrix lattice_basis(const Ring& ring, const Matrix& generators);

/// Basis of {x : a x = 0}.
Matrix kernel_basis(const Ring& ring, const Matrix& a);

/// Some y with generators * y = target, if target lies in the column span.
std::optional<Matrix> solve_in_span(const Ring& ring, const Matrix& generators, const Matrix& target);

/// True iff every column of `vectors` lies in the column span of `generators`.
bool in_span(const Ring& ring, const Matrix& generators, const Matrix& vectors);

}  // namespace pervcalc
