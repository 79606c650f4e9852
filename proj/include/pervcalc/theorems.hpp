#pragma once

#include "pervcalc/functors.hpp"
#include "pervcalc/io.hpp"
#include "pervcalc/perv.hpp"
#include "pervcalc/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pervcalc {

enum class Verdict { Pass, Fail, ExpectedCounterexampleConfirmed, Unsupported };

std::string to_string(Verdict v);

/// What was checked on the failing input: the input itself and both sides.
struct Witness {
    Json input;
    std::string lhs;
    std::string rhs;
    std::string detail;
};

struct CheckReport {
    std::string suite;
    Verdict verdict = Verdict::Pass;
    std::string ring;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t max_dim = 0;
    std::size_t passed = 0;
    std::optional<Witness> witness;
    std::optional<std::size_t> failing_trial;
    std::optional<std::uint64_t> trial_seed;
    std::vector<std::string> notes;
    std::vector<CheckReport> parts;

    bool failed() const { return verdict == Verdict::Fail; }
};

Json to_json(const CheckReport& report);
std::string to_text(const CheckReport& report);

enum class Mode { Kernel, Image, Cokernel };
std::string to_string(Mode m);

/// Support theorem (item 1 and the minimality statement of item 2) for one mode.
CheckReport check_support_theorem(const PervMorphism& t, Mode mode);
/// Same, reusing f = perv_factorization(t).
CheckReport check_support_theorem(const PervMorphism& t, const PervFactorization& f, Mode mode);
/// injective / surjective / zero against the isolating maps at every location.
CheckReport check_corollary(const PervMorphism& t);
/// Endomorphism theorem over a field, kernel and cokernel versions plus
/// CC(ker) = CC(coker). Throws UnsupportedRingError over Z.
CheckReport check_endo_theorem(const PervMorphism& t);
/// The image version of the endomorphism theorem, which is false in general.
/// With expect_counterexample set, a failure of the statement is the
/// expected outcome and a success is reported as Fail.
CheckReport check_endo_image_variant(const PervMorphism& t, bool expect_counterexample);
/// For each lambda: ker(lambda - T) != 0 iff some stalk map has lambda as an eigenvalue.
CheckReport check_eigenvalue_remark(const PervMorphism& t, const std::vector<Scalar>& candidates);
std::vector<Scalar> default_eigen_candidates(const Ring& ring);
/// CC underlying set = support, and CC = 0 iff the object is 0.
CheckReport check_cc_properties(const PervObject& p);
/// Additivity of CC along 0 -> K -> P -> I -> 0 and 0 -> I -> Q -> C -> 0.
CheckReport check_cc_properties(const PervMorphism& t, const PervFactorization& f);

// Seeded generators. Every output is valid by construction.
Module random_module(const Ring& ring, std::size_t max_dim, SplitMix64& rng);
ModuleMap random_module_map(const Module& domain, const Module& codomain, SplitMix64& rng);
PervObject random_object(const Ring& ring, std::size_t branches, std::size_t max_dim, std::uint64_t seed);
PervMorphism random_morphism(const PervObject& p, const PervObject& q, std::uint64_t seed);
PervMorphism random_endo(const PervObject& p, std::uint64_t seed);

const std::vector<std::string>& suite_names();  // support, corollary, endo, eigen, cc, all

struct FuzzOptions {
    std::string suite = "all";
    std::size_t trials = 1000;
    Ring ring = Ring::rationals();
    std::size_t max_dim = 6;
    std::uint64_t seed = 0;
};

/// Runs a suite on seeded random inputs; trial k uses derive_seed(seed, k).
/// Unsupported ring/suite pairs yield an Unsupported report.
CheckReport fuzz(const FuzzOptions& options);

/// Whether a suite can run over a ring (endo, eigen and cc need a field).
bool suite_supports(const std::string& suite, const Ring& ring);

}  // namespace pervcalc
