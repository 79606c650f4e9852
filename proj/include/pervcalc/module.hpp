#pragma once

#include "pervcalc/matrix.hpp"

#include <string>
#include <vector>

namespace pervcalc {

/// A finitely generated module in canonical form.
///
/// Over a field this is just a dimension. Over Z it is Z^free_rank followed by
/// Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k. Generators are ordered
/// free first, then torsion in increasing invariant-factor order, so two
/// canonical modules are isomorphic exactly when they compare equal.
class Module {
public:
    Module() : ring_(Ring::rationals()) {}

    static Module zero(const Ring& ring) { return Module(ring, 0, {}); }
    static Module free(const Ring& ring, std::size_t rank) { return Module(ring, rank, {}); }
    /// Over Z; validates the divisibility chain.
    static Module integer(std::size_t free_rank, std::vector<Integer> invariant_factors);

    const Ring& ring() const { return ring_; }
    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Integer>& invariant_factors() const { return torsion_; }
    std::size_t generators() const { return free_rank_ + torsion_.size(); }
    /// Over a field.
    std::size_t dimension() const { return free_rank_; }
    bool is_zero() const { return generators() == 0; }

    /// Order of generator i: 0 for a free generator.
    Integer order(std::size_t generator) const;
    /// generators() x (number of torsion generators) relation matrix.
    Matrix relations() const;
    /// Reduces the entry of generator `row` into its canonical range.
    Scalar reduce_entry(std::size_t row, const Scalar& x) const;
    /// Reduces every column (an element written on the generators).
    Matrix reduce_elements(Matrix elements) const;

    std::string to_string() const;

    friend bool operator==(const Module& a, const Module& b)
    {
        return a.ring_ == b.ring_ && a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
    }

private:
    Module(const Ring& ring, std::size_t free_rank, std::vector<Integer> torsion)
        : ring_(ring), free_rank_(free_rank), torsion_(std::move(torsion))
    {
    }

    Ring ring_;
    std::size_t free_rank_ = 0;
    std::vector<Integer> torsion_;
};

/// Ring^generators / (column span of relations); not necessarily canonical.
struct Presentation {
    Ring ring;
    std::size_t generators = 0;
    Matrix relations;

    static Presentation of(const Module& m) { return {m.ring(), m.generators(), m.relations()}; }
    static Presentation direct_sum(const std::vector<Module>& parts);
};

/// A homomorphism between canonical modules, written generator to generator:
/// column j is the image of domain generator j on the codomain generators.
/// Entries are kept reduced (mod p, and mod each codomain torsion order).
class ModuleMap {
public:
    ModuleMap() = default;
    /// Throws InputError on shape or ring mismatch or entries outside the ring.
    ModuleMap(Module domain, Module codomain, Matrix matrix);

    static ModuleMap zero(const Module& domain, const Module& codomain);
    static ModuleMap identity(const Module& m);
    static ModuleMap scalar(const Module& m, const Scalar& value);

    const Module& domain() const { return domain_; }
    const Module& codomain() const { return codomain_; }
    const Matrix& matrix() const { return matrix_; }
    const Ring& ring() const { return domain_.ring(); }

    /// Torsion generators must land on elements killed by their order.
    bool is_well_defined() const;
    bool is_zero() const { return matrix_.is_zero(); }
    bool is_endomorphism() const { return domain_ == codomain_; }

    friend bool operator==(const ModuleMap& a, const ModuleMap& b) = default;

private:
    Module domain_;
    Module codomain_;
    Matrix matrix_;
};

/// second after first.
ModuleMap compose(const ModuleMap& first, const ModuleMap& second);
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap subtract(const ModuleMap& f, const ModuleMap& g);
ModuleMap scale(const Scalar& s, const ModuleMap& f);

}  // namespace pervcalc
