#pragma once

#include "pervcalc/perv.hpp"

#include <map>
#include <string>
#include <vector>

namespace pervcalc {

/// A point of the germ: the origin, or a generic point on branch `index` (0-based).
struct Location {
    enum class Kind { Origin, Branch };
    Kind kind = Kind::Origin;
    std::size_t index = 0;

    static Location origin() { return {}; }
    static Location branch(std::size_t i) { return {Kind::Branch, i}; }
    bool is_origin() const { return kind == Kind::Origin; }

    /// "origin" or "branch:i" with i 1-based.
    static Location parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const Location&, const Location&) = default;
};

/// Stalk cohomology in degrees -1 and 0.
struct StalkReport {
    Location location;
    std::map<int, Module> groups;
};

struct StalkMaps {
    Location location;
    std::map<int, ModuleMap> maps;
};

/// Throws InputError for a branch index past the object's branch count.
StalkReport stalk_cohomology(const PervObject& p, const Location& at);
StalkMaps induced_stalk_maps(const PervMorphism& t, const Location& at);

/// Every location of the germ, origin first.
std::vector<Location> all_locations(std::size_t branches);

struct SupportComponent {
    Location location;  // the branch, or the origin for a point component
    int dimension = 0;
    friend bool operator==(const SupportComponent&, const SupportComponent&) = default;
};

struct SupportSet {
    std::vector<bool> branch_flags;
    bool origin_flag = false;

    bool empty() const { return !origin_flag; }
    std::vector<SupportComponent> components() const;
    std::string to_string() const;

    /// Closure of the given flags: any branch forces the origin.
    static SupportSet closure(std::vector<bool> branches, bool origin);

    friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

SupportSet support(const PervObject& p);

/// ker / coker of the total can map (+ over branches of can_i).
ModuleMap total_can(const PervObject& p);

struct NearbyVanishing {
    Module psi;                // + Psi_i
    ModuleMap psi_monodromy;   // block diagonal of id + var_i can_i
    Module phi;
    ModuleMap phi_monodromy;   // id + sum can_i var_i
};

struct NearbyVanishingMaps {
    ModuleMap psi;  // + a_i
    ModuleMap phi;  // b
};

NearbyVanishing nearby_and_vanishing(const PervObject& p);
NearbyVanishingMaps nearby_and_vanishing(const PervMorphism& t);

/// 0 -> Phi(K) -> Phi(P) -> Phi(Q) -> Phi(C) -> 0 for a factorization of t,
/// as five maps with zero modules at both ends.
std::vector<ModuleMap> vanishing_sequence(const PervMorphism& t, const PervFactorization& f);

/// The map on vanishing cycles of the canonical isolating function at `at`:
/// b at the origin, a_i at a point of branch i.
ModuleMap isolating_map(const PervMorphism& t, const Location& at);

struct CharacteristicCycle {
    std::vector<Integer> branch;
    Integer origin = 0;

    bool is_zero() const;
    SupportSet underlying_set() const;
    std::string to_string() const;

    friend CharacteristicCycle operator+(const CharacteristicCycle& x, const CharacteristicCycle& y);
    friend bool operator==(const CharacteristicCycle&, const CharacteristicCycle&) = default;
};

/// Fields only; throws UnsupportedRingError over Z.
CharacteristicCycle characteristic_cycle(const PervObject& p);

}  // namespace pervcalc
