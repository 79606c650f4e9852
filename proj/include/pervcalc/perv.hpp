#pragma once

#include "pervcalc/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pervcalc {

/// A perverse sheaf on a germ of r smooth branches through one point,
/// recorded as the diagram (Psi_1..Psi_r, Phi, can_i : Psi_i -> Phi,
/// var_i : Phi -> Psi_i). Psi_i is the nearby-cycle contribution of branch i,
/// Phi the vanishing cycles at the origin.
///
/// Axioms (checked by validate_object, not by the constructor):
///   A1  id + var_i can_i is an automorphism of Psi_i, for every i;
///   A2  id + sum_i can_i var_i is an automorphism of Phi.
class PervObject {
public:
    PervObject() = default;
    /// Throws InputError when a map does not have the shape its slot requires.
    PervObject(std::vector<Module> psi, Module phi, std::vector<ModuleMap> can, std::vector<ModuleMap> var);

    static PervObject zero(const Ring& ring, std::size_t branches);

    const Ring& ring() const { return phi_.ring(); }
    std::size_t branches() const { return psi_.size(); }
    const Module& psi(std::size_t i) const { return psi_.at(i); }
    const std::vector<Module>& psi() const { return psi_; }
    const Module& phi() const { return phi_; }
    const ModuleMap& can(std::size_t i) const { return can_.at(i); }
    const ModuleMap& var(std::size_t i) const { return var_.at(i); }
    const std::vector<ModuleMap>& can() const { return can_; }
    const std::vector<ModuleMap>& var() const { return var_; }

    bool is_zero() const;

    /// id + var_i can_i.
    ModuleMap branch_monodromy(std::size_t i) const;
    /// id + sum_i can_i var_i.
    ModuleMap vanishing_monodromy() const;

    friend bool operator==(const PervObject& a, const PervObject& b) = default;

private:
    std::vector<Module> psi_;
    Module phi_;
    std::vector<ModuleMap> can_;
    std::vector<ModuleMap> var_;
};

/// Which model axiom failed, and where.
struct Violation {
    std::string axiom;                 // "A1", "A2", "well-defined", "commutes-can", "commutes-var"
    std::optional<std::size_t> branch; // 0-based
    std::string detail;
};

std::optional<Violation> validate_object(const PervObject& p);

/// Branch maps a_i : Psi_i -> Psi'_i and b : Phi -> Phi' with
/// b can_i = can'_i a_i and a_i var_i = var'_i b.
class PervMorphism {
public:
    PervMorphism() = default;
    /// Throws InputError on ring, branch-count or shape mismatch.
    PervMorphism(PervObject source, PervObject target, std::vector<ModuleMap> a, ModuleMap b);

    static PervMorphism identity(const PervObject& p);
    static PervMorphism zero(const PervObject& source, const PervObject& target);

    const PervObject& source() const { return source_; }
    const PervObject& target() const { return target_; }
    const ModuleMap& a(std::size_t i) const { return a_.at(i); }
    const std::vector<ModuleMap>& a() const { return a_; }
    const ModuleMap& b() const { return b_; }
    const Ring& ring() const { return source_.ring(); }
    std::size_t branches() const { return source_.branches(); }

    bool is_zero() const;
    bool is_endomorphism() const { return source_ == target_; }

    friend bool operator==(const PervMorphism& x, const PervMorphism& y) = default;

private:
    PervObject source_;
    PervObject target_;
    std::vector<ModuleMap> a_;
    ModuleMap b_;
};

/// Validates source and target, then both commutation families.
std::optional<Violation> validate_morphism(const PervMorphism& t);

/// second after first; requires first.target() == second.source().
PervMorphism compose(const PervMorphism& first, const PervMorphism& second);
PervMorphism add(const PervMorphism& t, const PervMorphism& u);
PervMorphism subtract(const PervMorphism& t, const PervMorphism& u);
PervMorphism scale(const Scalar& s, const PervMorphism& t);
/// lambda * id - t for an endomorphism.
PervMorphism shifted_endomorphism(const PervMorphism& t, const Scalar& lambda);

/// Kernel, image and cokernel of T together with
/// 0 -> K -iota-> P -alpha-> I -> 0 and 0 -> I -beta-> Q -pi-> C -> 0,
/// where T = beta o alpha.
struct PervFactorization {
    PervObject kernel;
    PervObject image;
    PervObject cokernel;
    PervMorphism iota;
    PervMorphism alpha;
    PervMorphism beta;
    PervMorphism pi;

    /// Component factorizations, branch maps first, then the vanishing map.
    std::vector<MapFactorization> components;
};

/// Throws InputError when T fails validation.
PervFactorization perv_factorization(const PervMorphism& t);

struct PervDirectSum {
    PervObject sum;
    std::vector<PervMorphism> injections;
    std::vector<PervMorphism> projections;
};

PervDirectSum direct_sum_with_maps(const std::vector<PervObject>& parts);
PervObject direct_sum(const PervObject& p, const PervObject& q);
PervMorphism direct_sum(const PervMorphism& t, const PervMorphism& u);

/// Hom(P, Q) as a module with canonical generators (a basis over a field).
struct HomSpace {
    Module module;
    std::vector<PervMorphism> generators;

    std::size_t dimension() const { return module.generators(); }
    /// True when the generators form a basis (field rings, or free Hom groups).
    bool is_basis() const { return module.invariant_factors().empty(); }
};

HomSpace hom_space(const PervObject& p, const PervObject& q);
/// A generating set of Hom(P, Q), not canonicalized (over Z it may be redundant).
std::vector<PervMorphism> hom_generators(const PervObject& p, const PervObject& q);

/// Linear combination sum_k coefficients[k] * generators[k].
PervMorphism combine(const HomSpace& hom, const std::vector<Scalar>& coefficients);

struct MorphismFlags {
    bool injective = false;
    bool surjective = false;
    bool zero = false;
    bool isomorphism = false;
};

MorphismFlags morphism_classify(const PervMorphism& t);

/// Outcome of the randomized isomorphism search.
struct IsomorphismResult {
    enum class Verdict { Isomorphic, Distinguished, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::optional<PervMorphism> isomorphism;
    std::string witness;       // differing invariant, when distinguished
    std::size_t trials_used = 0;
    bool invariants_only = false; // ring without a randomized search (Z)
};

constexpr std::size_t default_isomorphism_trials = 64;

IsomorphismResult find_isomorphism(const PervObject& p, const PervObject& q,
                                   std::size_t trials = default_isomorphism_trials, std::uint64_t seed = 0);

/// True iff every component of T is bijective.
bool is_isomorphism(const PervMorphism& t);
/// Componentwise, so no factorization is built.
bool is_injective(const PervMorphism& t);
bool is_surjective(const PervMorphism& t);

}  // namespace pervcalc
