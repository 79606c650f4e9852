// Acceptance suite: one PASS/FAIL line per criterion, with the measured time
// and the pinned limit. All comparisons are exact.

#include "support.hpp"

#include "pervcalc/cli.hpp"
#include "pervcalc/gallery.hpp"
#include "pervcalc/linalg.hpp"
#include "pervcalc/theorems.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

using namespace pervcalc;

namespace {

const Ring Z = Ring::integers();
const Ring Q = Ring::rationals();

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure{what};
}

struct Command {
    std::vector<std::string> args;
    std::string input;
};

struct Output {
    int code = 0;
    std::string out;
    std::string err;
    friend bool operator==(const Output&, const Output&) = default;
};

Output run_cli(const Command& c)
{
    std::istringstream in(c.input);
    std::ostringstream out, err;
    int code = cli::run(c.args, in, out, err, std::nullopt);
    return {code, out.str(), err.str()};
}

std::string gallery_file(const std::string& name, const std::string& ring)
{
    return run_cli({{"gallery", "--name", name, "--ring", ring}, ""}).out;
}

bool all_stalk_maps_zero(const PervMorphism& t)
{
    for (const auto& loc : all_locations(t.branches()))
        for (const auto& [degree, map] : induced_stalk_maps(t, loc).maps)
            if (!map.is_zero())
                return false;
    return true;
}

bool isomorphic(const PervObject& p, const PervObject& q)
{
    return find_isomorphism(p, q).verdict == IsomorphismResult::Verdict::Isomorphic;
}

// ---------------------------------------------------------------------------

void criterion_1()
{
    auto t = node::t_resolution(Z);
    auto s = node::s_inclusion(Z);
    auto f = perv_factorization(t);
    for (const auto& psi : f.kernel.psi())
        require(psi.is_zero(), "ker T has nonzero Psi");
    require(f.kernel.phi() == Module::free(Z, 1), "Phi(ker T) is " + f.kernel.phi().to_string() + ", expected Z");
    require(f.kernel == node::m_shift(Z) || isomorphic(f.kernel, node::m_shift(Z)), "ker T does not match m_shift");

    auto rx = node::rx_shift(Z);
    auto origin = stalk_cohomology(rx, Location::origin());
    require(origin.groups.at(-1) == Module::free(Z, 1) && origin.groups.at(0).is_zero(), "R_X[1] stalk at origin");
    for (std::size_t i = 0; i < 2; ++i) {
        auto b = stalk_cohomology(rx, Location::branch(i));
        require(b.groups.at(-1) == Module::free(Z, 1) && b.groups.at(0).is_zero(), "R_X[1] stalk on a branch");
    }
    auto ic = stalk_cohomology(node::ic_x(Z), Location::origin());
    require(ic.groups.at(-1) == Module::free(Z, 2) && ic.groups.at(0).is_zero(), "I_X stalk at origin is not Z^2");

    auto tf = morphism_classify(t);
    require(tf.surjective && !tf.injective, "T is not a non-injective surjection");
    auto sf = morphism_classify(s);
    require(sf.injective && !sf.surjective, "S is not a non-surjective injection");
    require(all_stalk_maps_zero(s), "S induces a nonzero stalk map");

    auto report = run_cli({{"factor"}, gallery_file("t_resolution", "z")});
    auto kernel = report.out.find("kernel:");
    require(report.code == 0 && kernel != std::string::npos &&
                report.out.find("isomorphic to m_shift", kernel) < report.out.find("image:"),
            "factor report does not name m_shift for the kernel");
}

void criterion_2()
{
    require(nearby_and_vanishing(node::rx_shift(Z)).phi == Module::free(Z, 1), "Phi(R_X[1]) is not Z");
    require(nearby_and_vanishing(node::ic_x(Z)).phi.is_zero(), "Phi(I_X) is not 0");
    auto t = node::t_resolution(Z);
    auto f = perv_factorization(t);
    require(nearby_and_vanishing(f.kernel).phi == Module::free(Z, 1), "Phi(ker T) is not Z");
    auto seq = vanishing_sequence(t, f);
    auto exact = exactness_check(seq);
    require(!exact.empty(), "empty Phi sequence");
    for (bool e : exact)
        require(e, "Phi sequence is not exact");
}

void criterion_3()
{
    auto t = node::endo_example(Q);
    auto f = perv_factorization(t);
    require(isomorphic(f.image, node::m_shift(Q)), "im T is not m_shift");
    require(all_stalk_maps_zero(t), "T induces a nonzero stalk map");
    require(isomorphic(f.kernel, node::rx_shift(Q)), "ker T is not rx_shift");
    require(isomorphic(f.cokernel, direct_sum(node::m_shift(Q), node::ic_x(Q))), "coker T is not m_shift + ic_x");

    auto iso = find_isomorphism(f.kernel, f.cokernel);
    require(iso.verdict == IsomorphismResult::Verdict::Distinguished, "ker T and coker T are not distinguished");
    bool by_stalks = false;
    for (const auto& loc : all_locations(2))
        by_stalks = by_stalks || stalk_cohomology(f.kernel, loc).groups != stalk_cohomology(f.cokernel, loc).groups;
    require(by_stalks, "ker T and coker T have the same stalks");

    auto cc_k = characteristic_cycle(f.kernel);
    auto cc_c = characteristic_cycle(f.cokernel);
    require(cc_k == cc_c && cc_k.to_string() == "(1, 1; 1)",
            "CC(ker) = " + cc_k.to_string() + ", CC(coker) = " + cc_c.to_string());
}

std::vector<Command> fuzz_commands()
{
    std::vector<Command> out;
    auto add = [&](const std::string& suite, const std::string& ring) {
        out.push_back({{"check", "--suite", suite, "--trials", "1000", "--seed", "42", "--ring", ring, "--max-dim", "6"}, ""});
    };
    for (const char* ring : {"q", "fp:5", "z"})
        add("support", ring);
    for (const char* ring : {"q", "fp:5"})
        add("endo", ring);
    for (const char* ring : {"q", "fp:5"})
        add("eigen", ring);
    add("cc", "q");
    return out;
}

std::vector<Output> fuzz_outputs;

void criterion_4()
{
    fuzz_outputs.clear();
    std::string failures;
    for (const auto& c : fuzz_commands()) {
        auto r = run_cli(c);
        fuzz_outputs.push_back(r);
        if (r.code != 0)
            failures += "\n" + r.out + r.err;
        else
            require(r.out.find("(1000/1000 trials") != std::string::npos, "suite ran fewer than 1000 trials");
    }
    require(failures.empty(), "failing suites:" + failures);
}

void criterion_5()
{
    for (const auto& ring : {Q, Ring::prime_field(5), Ring::prime_field(2)}) {
        auto r = check_endo_image_variant(node::endo_example(ring), true);
        require(r.verdict == Verdict::ExpectedCounterexampleConfirmed,
                "image variant over " + ring.tag() + ": " + to_string(r.verdict));
        require(r.witness && r.witness->lhs == "{origin}" && r.witness->rhs == "{}",
                "image variant witness over " + ring.tag());
    }
    require(support(perv_factorization(node::endo_example(Q)).image).to_string() == "{origin}", "support(im T)");
}

std::string linalg_digest;

void criterion_6()
{
    SplitMix64 rng(6);
    std::ostringstream digest;
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t rows = rng.below(9), cols = rng.below(9);
        Matrix a = testing::random_integer_matrix(rng, rows, cols, rng.chance(1, 2) ? 3 : 30);
        auto snf = smith_normal_form(a);
        std::string at = " (trial " + std::to_string(trial) + ")";
        require(snf.left * a * snf.right == snf.diagonal, "U A V != D" + at);
        require(snf.left * snf.left_inverse == Matrix::identity(rows), "U U^-1 != I" + at);
        Scalar du = determinant(snf.left), dv = determinant(snf.right);
        require((du == 1 || du == -1) && (dv == 1 || dv == -1), "U or V is not unimodular" + at);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const Scalar& d = snf.diagonal(i, j);
                if (i != j || i >= snf.rank)
                    require(d == 0, "D is not diagonal of rank " + std::to_string(snf.rank) + at);
                else
                    require(d > 0 && (i == 0 || mpz_divisible_p(d.get_num_mpz_t(), snf.diagonal(i - 1, i - 1).get_num_mpz_t())),
                            "invariant factors do not form a divisibility chain" + at);
            }
        digest << to_string(snf.diagonal);
    }

    static const long orders[] = {0, 0, 0, 2, 3, 4, 6, 8, 9, 12};
    auto random_z_module = [&](std::size_t max_gens) {
        std::size_t n = rng.below(max_gens + 1);
        Matrix diag(n, n);
        for (std::size_t i = 0; i < n; ++i)
            diag(i, i) = Scalar(orders[rng.below(std::size(orders))]);
        return canonical_decomposition(Z, diag);
    };
    for (int trial = 0; trial < 10000; ++trial) {
        auto a = random_z_module(4), b = random_z_module(4), c = random_z_module(4);
        std::string at = " (module trial " + std::to_string(trial) + ": " + a.to_string() + ", " + b.to_string() + ", " +
                         c.to_string() + ")";
        require(module_leq(a, a), "not reflexive" + at);
        auto ab = direct_sum({a, b}).sum;
        require(module_leq(a, ab) && module_leq(b, ab), "a summand is not below the sum" + at);
        if (module_leq(a, b) && module_leq(b, c))
            require(module_leq(a, c), "not transitive" + at);
        if (module_leq(a, b) && module_leq(b, a))
            require(a == b, "not antisymmetric" + at);
        require((ab == a) == b.is_zero(), "cancellation fails" + at);
        digest << ab.to_string() << module_leq(a, b);
    }
    linalg_digest = digest.str();
}

void criterion_7()
{
    std::vector<Command> commands = {
        {{"factor"}, gallery_file("t_resolution", "z")},
        {{"factor", "--json"}, gallery_file("t_resolution", "z")},
        {{"stalk", "--at", "origin", "--json"}, gallery_file("ic_x", "z")},
        {{"phi", "--json"}, gallery_file("t_resolution", "z")},
        {{"factor", "--json"}, gallery_file("endo_example", "q")},
        {{"check", "--suite", "endo", "--trials", "50", "--seed", "42", "--ring", "q", "--json"}, ""},
        {{"gallery", "--name", "endo_example", "--facts", "--json"}, ""},
    };
    for (const auto& c : commands)
        require(run_cli(c) == run_cli(c), "repeated command differs: " + c.args.front());

    auto fuzz = fuzz_commands();
    for (std::size_t k = 0; k < fuzz.size(); ++k)
        require(k < fuzz_outputs.size() && run_cli(fuzz[k]) == fuzz_outputs[k], "repeated fuzz run differs");

    std::string first = linalg_digest;
    criterion_6();
    require(!first.empty() && linalg_digest == first, "repeated linear algebra run differs");
}

struct Criterion {
    int id;
    std::string title;
    std::function<void()> body;
    std::optional<double> limit_seconds;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "node example over Z: ker T = m_shift, stalks, T surjective, S injective", criterion_1, 1.0},
        {2, "vanishing cycles over Z and exactness of the Phi sequence", criterion_2, 1.0},
        {3, "endomorphism example over Q: ker, im, coker, CC(ker) = CC(coker)", criterion_3, 1.0},
        {4, "fuzz suites, 1000 trials each (support q/fp:5/z, endo and eigen q/fp:5, cc q)", criterion_4, 60.0},
        {5, "image variant on endo_example is a confirmed counterexample", criterion_5, std::nullopt},
        {6, "SNF on 10000 integer matrices up to 8x8, module order on 10000 Z-modules", criterion_6, 30.0},
        {7, "determinism: repeated commands give byte-identical reports", criterion_7, std::nullopt},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body();
        } catch (const Failure& f) {
            detail = f.what;
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (detail.empty() && c.limit_seconds && seconds >= *c.limit_seconds)
            detail = "over the time limit";
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << (detail.empty() ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << "  [" << seconds << " s";
        if (c.limit_seconds)
            line << ", limit " << *c.limit_seconds << " s";
        line << "]";
        if (!detail.empty())
            line << "  " << detail;
        std::cout << line.str() << std::endl;
        failed += detail.empty() ? 0 : 1;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all criteria passed")
              << std::endl;
    return failed ? 1 : 0;
}
