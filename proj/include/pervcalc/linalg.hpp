#pragma once

#include "pervcalc/module.hpp"
#include "pervcalc/snf.hpp"

#include <vector>

namespace pervcalc {

/// The submodule (span(generators) + relations) / relations of a presented
/// ambient module, in canonical form.
class Subquotient {
public:
    const Module& module() const { return module_; }
    /// Ambient coordinates of each canonical generator (ambient gens x module gens).
    const Matrix& inclusion() const { return inclusion_; }

    /// Canonical coordinates of ambient elements (columns) lying in the
    /// submodule. Throws InputError for elements outside it.
    Matrix coordinates(const Matrix& elements) const;
    bool contains(const Matrix& elements) const;

    friend Subquotient submodule(const Presentation& ambient, const Matrix& generators);

private:
    Ring ring_ = Ring::rationals();
    Module module_;
    Matrix inclusion_;
    Matrix span_left_;
    std::vector<Scalar> span_diagonal_;
    Matrix relation_left_;
    std::vector<std::size_t> order_;

    std::optional<Matrix> basis_coordinates(const Matrix& elements) const;
};

Subquotient submodule(const Presentation& ambient, const Matrix& generators);

/// ambient / (span(generators) + relations) in canonical form.
struct QuotientModule {
    Module module;
    /// module gens x ambient gens; reduced.
    Matrix projection;
    /// ambient gens x module gens: a representative of each canonical generator.
    Matrix lifts;
};

QuotientModule quotient(const Presentation& ambient, const Matrix& generators);

/// {x : f x = 0 in codomain}, as a subquotient of the domain.
Subquotient kernel_of(const Presentation& domain, const Presentation& codomain, const Matrix& f);

/// Canonical form of Ring^rows / (column span of presentation).
Module canonical_decomposition(const Ring& ring, const Matrix& presentation);
Module canonical_decomposition(const Presentation& presentation);
inline Module canonical_decomposition(const Module& m) { return canonical_decomposition(Presentation::of(m)); }

/// Kernel, image and cokernel of a map with the maps relating them:
/// image_inclusion o coimage = f, coimage o kernel_inclusion = 0,
/// cokernel_projection o f = 0.
struct MapFactorization {
    Subquotient kernel_lattice;
    Subquotient image_lattice;
    QuotientModule cokernel_data;

    ModuleMap kernel_inclusion;
    ModuleMap coimage;
    ModuleMap image_inclusion;
    ModuleMap cokernel_projection;

    const Module& kernel() const { return kernel_inclusion.domain(); }
    const Module& image() const { return image_inclusion.domain(); }
    const Module& cokernel() const { return cokernel_projection.codomain(); }
};

MapFactorization map_factorization(const ModuleMap& f);

Module kernel(const ModuleMap& f);
Module image(const ModuleMap& f);
Module cokernel(const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphism(const ModuleMap& f);

/// Canonical direct sum with its structure maps.
struct DirectSum {
    Module sum;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};

DirectSum direct_sum(const std::vector<Module>& parts);

/// M <= N iff M + P = N for some module P.
bool module_leq(const Module& m, const Module& n);

/// For maps f_1, ..., f_k composing in sequence: entry j says whether
/// image(f_{j+1}) = kernel(f_{j+2}) (0-based j over interior junctions).
std::vector<bool> exactness_check(const std::vector<ModuleMap>& sequence);

/// ker(lambda * id - f) over a field.
Module eigen_kernel(const ModuleMap& f, const Scalar& lambda);

/// Characteristic polynomial det(x * id - f) evaluated at x, over a field.
Scalar characteristic_polynomial_at(const ModuleMap& f, const Scalar& x);

/// An unknown homomorphism X: domain -> codomain.
struct HomUnknown {
    Module domain;
    Module codomain;
};

/// left * X_unknown * right.
struct HomTerm {
    std::size_t unknown = 0;
    Matrix left;
    Matrix right;
};

/// sum of terms = 0 as a map from `columns` source generators into `target`.
struct HomEquation {
    Module target;
    std::size_t columns = 0;
    std::vector<HomTerm> terms;
};

/// The solution set as a module (a vector space over a field) together with
/// its canonical generators, each a tuple of maps (one per unknown).
struct HomSolution {
    Module module;
    std::vector<std::vector<ModuleMap>> generators;
};

HomSolution solve_hom_constraints(const std::vector<HomUnknown>& unknowns, const std::vector<HomEquation>& equations);

/// Some generating set of the same solutions, skipping the canonical form.
std::vector<std::vector<ModuleMap>> hom_constraint_generators(const std::vector<HomUnknown>& unknowns,
                                                              const std::vector<HomEquation>& equations);

}  // namespace pervcalc
