#include "pervcalc/perv.hpp"

#include "pervcalc/random.hpp"

namespace pervcalc {

namespace {

std::string branch_label(std::size_t i) { return "branch " + std::to_string(i + 1); }

void require_same_frame(const PervObject& p, const PervObject& q, const char* what)
{
    if (!(p.ring() == q.ring()))
        throw InputError(std::string(what) + ": ring " + p.ring().tag() + " differs from " + q.ring().tag());
    if (p.branches() != q.branches())
        throw InputError(std::string(what) + ": branch count " + std::to_string(p.branches()) + " differs from " +
                         std::to_string(q.branches()));
}

ModuleMap sum_of(const Module& domain, const Module& codomain, const std::vector<ModuleMap>& terms)
{
    ModuleMap total = ModuleMap::zero(domain, codomain);
    for (const auto& t : terms)
        total = add(total, t);
    return total;
}

}  // namespace

PervObject::PervObject(std::vector<Module> psi, Module phi, std::vector<ModuleMap> can, std::vector<ModuleMap> var)
    : psi_(std::move(psi)), phi_(std::move(phi)), can_(std::move(can)), var_(std::move(var))
{
    if (psi_.empty())
        throw InputError("object: at least one branch is required");
    if (can_.size() != psi_.size() || var_.size() != psi_.size())
        throw InputError("object: expected " + std::to_string(psi_.size()) + " can and var maps, got " +
                         std::to_string(can_.size()) + " and " + std::to_string(var_.size()));
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        if (!(psi_[i].ring() == phi_.ring()))
            throw InputError("object: psi of " + branch_label(i) + " is over a different ring");
        if (!(can_[i].domain() == psi_[i]) || !(can_[i].codomain() == phi_))
            throw InputError("object: can of " + branch_label(i) + " must map psi to phi");
        if (!(var_[i].domain() == phi_) || !(var_[i].codomain() == psi_[i]))
            throw InputError("object: var of " + branch_label(i) + " must map phi to psi");
    }
}

PervObject PervObject::zero(const Ring& ring, std::size_t branches)
{
    Module z = Module::zero(ring);
    std::vector<ModuleMap> maps(branches, ModuleMap::zero(z, z));
    return PervObject(std::vector<Module>(branches, z), z, maps, maps);
}

bool PervObject::is_zero() const
{
    if (!phi_.is_zero())
        return false;
    for (const auto& m : psi_)
        if (!m.is_zero())
            return false;
    return true;
}

ModuleMap PervObject::branch_monodromy(std::size_t i) const
{
    return add(ModuleMap::identity(psi_.at(i)), compose(can_.at(i), var_.at(i)));
}

ModuleMap PervObject::vanishing_monodromy() const
{
    ModuleMap mu = ModuleMap::identity(phi_);
    for (std::size_t i = 0; i < psi_.size(); ++i)
        mu = add(mu, compose(var_[i], can_[i]));
    return mu;
}

std::optional<Violation> validate_object(const PervObject& p)
{
    for (std::size_t i = 0; i < p.branches(); ++i) {
        if (!p.can(i).is_well_defined())
            return Violation{"well-defined", i, "can is not compatible with the torsion relations"};
        if (!p.var(i).is_well_defined())
            return Violation{"well-defined", i, "var is not compatible with the torsion relations"};
    }
    for (std::size_t i = 0; i < p.branches(); ++i)
        if (!is_isomorphism(p.branch_monodromy(i)))
            return Violation{"A1", i, "id + var o can is not invertible on psi"};
    if (!is_isomorphism(p.vanishing_monodromy()))
        return Violation{"A2", std::nullopt, "id + sum of can o var is not invertible on phi"};
    return std::nullopt;
}

PervMorphism::PervMorphism(PervObject source, PervObject target, std::vector<ModuleMap> a, ModuleMap b)
    : source_(std::move(source)), target_(std::move(target)), a_(std::move(a)), b_(std::move(b))
{
    require_same_frame(source_, target_, "morphism");
    if (a_.size() != source_.branches())
        throw InputError("morphism: expected " + std::to_string(source_.branches()) + " branch maps, got " +
                         std::to_string(a_.size()));
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!(a_[i].domain() == source_.psi(i)) || !(a_[i].codomain() == target_.psi(i)))
            throw InputError("morphism: map a of " + branch_label(i) + " must map source psi to target psi");
    if (!(b_.domain() == source_.phi()) || !(b_.codomain() == target_.phi()))
        throw InputError("morphism: map b must map source phi to target phi");
}

PervMorphism PervMorphism::identity(const PervObject& p)
{
    std::vector<ModuleMap> a;
    for (const auto& m : p.psi())
        a.push_back(ModuleMap::identity(m));
    return PervMorphism(p, p, std::move(a), ModuleMap::identity(p.phi()));
}

PervMorphism PervMorphism::zero(const PervObject& source, const PervObject& target)
{
    require_same_frame(source, target, "zero morphism");
    std::vector<ModuleMap> a;
    for (std::size_t i = 0; i < source.branches(); ++i)
        a.push_back(ModuleMap::zero(source.psi(i), target.psi(i)));
    return PervMorphism(source, target, std::move(a), ModuleMap::zero(source.phi(), target.phi()));
}

bool PervMorphism::is_zero() const
{
    if (!b_.is_zero())
        return false;
    for (const auto& m : a_)
        if (!m.is_zero())
            return false;
    return true;
}

std::optional<Violation> validate_morphism(const PervMorphism& t)
{
    if (auto v = validate_object(t.source())) {
        v->detail = "source: " + v->detail;
        return v;
    }
    if (auto v = validate_object(t.target())) {
        v->detail = "target: " + v->detail;
        return v;
    }
    for (std::size_t i = 0; i < t.branches(); ++i)
        if (!t.a(i).is_well_defined())
            return Violation{"well-defined", i, "branch map a is not compatible with the torsion relations"};
    if (!t.b().is_well_defined())
        return Violation{"well-defined", std::nullopt, "map b is not compatible with the torsion relations"};
    const auto& p = t.source();
    const auto& q = t.target();
    for (std::size_t i = 0; i < t.branches(); ++i) {
        if (!(compose(p.can(i), t.b()) == compose(t.a(i), q.can(i))))
            return Violation{"commutes-can", i, "b o can != can' o a"};
        if (!(compose(p.var(i), t.a(i)) == compose(t.b(), q.var(i))))
            return Violation{"commutes-var", i, "a o var != var' o b"};
    }
    return std::nullopt;
}

PervMorphism compose(const PervMorphism& first, const PervMorphism& second)
{
    if (!(first.target() == second.source()))
        throw InputError("compose: target of the first morphism is not the source of the second");
    std::vector<ModuleMap> a;
    for (std::size_t i = 0; i < first.branches(); ++i)
        a.push_back(compose(first.a(i), second.a(i)));
    return PervMorphism(first.source(), second.target(), std::move(a), compose(first.b(), second.b()));
}

PervMorphism add(const PervMorphism& t, const PervMorphism& u)
{
    if (!(t.source() == u.source()) || !(t.target() == u.target()))
        throw InputError("add: morphisms have different source or target");
    std::vector<ModuleMap> a;
    for (std::size_t i = 0; i < t.branches(); ++i)
        a.push_back(add(t.a(i), u.a(i)));
    return PervMorphism(t.source(), t.target(), std::move(a), add(t.b(), u.b()));
}

PervMorphism subtract(const PervMorphism& t, const PervMorphism& u) { return add(t, scale(Scalar(-1), u)); }

PervMorphism scale(const Scalar& s, const PervMorphism& t)
{
    std::vector<ModuleMap> a;
    for (const auto& m : t.a())
        a.push_back(scale(s, m));
    return PervMorphism(t.source(), t.target(), std::move(a), scale(s, t.b()));
}

PervMorphism shifted_endomorphism(const PervMorphism& t, const Scalar& lambda)
{
    if (!t.is_endomorphism())
        throw InputError("shifted endomorphism: source and target differ");
    return subtract(scale(lambda, PervMorphism::identity(t.source())), t);
}

PervFactorization perv_factorization(const PervMorphism& t)
{
    if (auto v = validate_morphism(t))
        throw InputError("factorization of an invalid morphism (" + v->axiom + "): " + v->detail);
    const auto& p = t.source();
    const auto& q = t.target();
    const std::size_t r = t.branches();

    PervFactorization out;
    for (std::size_t i = 0; i < r; ++i)
        out.components.push_back(map_factorization(t.a(i)));
    out.components.push_back(map_factorization(t.b()));
    const auto& fb = out.components.back();

    std::vector<Module> k_psi, i_psi, c_psi;
    std::vector<ModuleMap> k_can, k_var, i_can, i_var, c_can, c_var;
    for (std::size_t i = 0; i < r; ++i) {
        const auto& fa = out.components[i];
        k_psi.push_back(fa.kernel());
        i_psi.push_back(fa.image());
        c_psi.push_back(fa.cokernel());

        // Restrictions to kernels and images land in the matching subobject by commutation.
        k_can.emplace_back(fa.kernel(), fb.kernel(),
                           fb.kernel_lattice.coordinates(p.can(i).matrix() * fa.kernel_inclusion.matrix()));
        k_var.emplace_back(fb.kernel(), fa.kernel(),
                           fa.kernel_lattice.coordinates(p.var(i).matrix() * fb.kernel_inclusion.matrix()));
        i_can.emplace_back(fa.image(), fb.image(),
                           fb.image_lattice.coordinates(q.can(i).matrix() * fa.image_inclusion.matrix()));
        i_var.emplace_back(fb.image(), fa.image(),
                           fa.image_lattice.coordinates(q.var(i).matrix() * fb.image_inclusion.matrix()));
        c_can.emplace_back(fa.cokernel(), fb.cokernel(),
                           fb.cokernel_data.projection * q.can(i).matrix() * fa.cokernel_data.lifts);
        c_var.emplace_back(fb.cokernel(), fa.cokernel(),
                           fa.cokernel_data.projection * q.var(i).matrix() * fb.cokernel_data.lifts);
    }
    out.kernel = PervObject(k_psi, fb.kernel(), k_can, k_var);
    out.image = PervObject(i_psi, fb.image(), i_can, i_var);
    out.cokernel = PervObject(c_psi, fb.cokernel(), c_can, c_var);

    std::vector<ModuleMap> iota, alpha, beta, pi;
    for (std::size_t i = 0; i < r; ++i) {
        iota.push_back(out.components[i].kernel_inclusion);
        alpha.push_back(out.components[i].coimage);
        beta.push_back(out.components[i].image_inclusion);
        pi.push_back(out.components[i].cokernel_projection);
    }
    out.iota = PervMorphism(out.kernel, p, iota, fb.kernel_inclusion);
    out.alpha = PervMorphism(p, out.image, alpha, fb.coimage);
    out.beta = PervMorphism(out.image, q, beta, fb.image_inclusion);
    out.pi = PervMorphism(q, out.cokernel, pi, fb.cokernel_projection);
    return out;
}

PervDirectSum direct_sum_with_maps(const std::vector<PervObject>& parts)
{
    if (parts.empty())
        throw InputError("direct sum of no objects");
    for (const auto& part : parts)
        require_same_frame(parts.front(), part, "direct sum");
    const std::size_t r = parts.front().branches();
    const std::size_t n = parts.size();

    auto collect = [&](auto get) {
        std::vector<Module> ms;
        for (const auto& part : parts)
            ms.push_back(get(part));
        return direct_sum(ms);
    };
    std::vector<DirectSum> psi;
    for (std::size_t i = 0; i < r; ++i)
        psi.push_back(collect([i](const PervObject& o) { return o.psi(i); }));
    DirectSum phi = collect([](const PervObject& o) { return o.phi(); });

    std::vector<Module> sum_psi;
    std::vector<ModuleMap> can, var;
    for (std::size_t i = 0; i < r; ++i) {
        sum_psi.push_back(psi[i].sum);
        std::vector<ModuleMap> cterms, vterms;
        for (std::size_t k = 0; k < n; ++k) {
            cterms.push_back(compose(compose(psi[i].projections[k], parts[k].can(i)), phi.injections[k]));
            vterms.push_back(compose(compose(phi.projections[k], parts[k].var(i)), psi[i].injections[k]));
        }
        can.push_back(sum_of(psi[i].sum, phi.sum, cterms));
        var.push_back(sum_of(phi.sum, psi[i].sum, vterms));
    }

    PervDirectSum out;
    out.sum = PervObject(sum_psi, phi.sum, can, var);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<ModuleMap> inj, proj;
        for (std::size_t i = 0; i < r; ++i) {
            inj.push_back(psi[i].injections[k]);
            proj.push_back(psi[i].projections[k]);
        }
        out.injections.emplace_back(parts[k], out.sum, inj, phi.injections[k]);
        out.projections.emplace_back(out.sum, parts[k], proj, phi.projections[k]);
    }
    return out;
}

PervObject direct_sum(const PervObject& p, const PervObject& q) { return direct_sum_with_maps({p, q}).sum; }

PervMorphism direct_sum(const PervMorphism& t, const PervMorphism& u)
{
    auto s = direct_sum_with_maps({t.source(), u.source()});
    auto d = direct_sum_with_maps({t.target(), u.target()});
    const PervMorphism* parts[] = {&t, &u};
    PervMorphism total = PervMorphism::zero(s.sum, d.sum);
    for (std::size_t k = 0; k < 2; ++k)
        total = add(total, compose(compose(s.projections[k], *parts[k]), d.injections[k]));
    return total;
}

namespace {

struct HomProblem {
    std::vector<HomUnknown> unknowns;
    std::vector<HomEquation> equations;
};

HomProblem hom_problem(const PervObject& p, const PervObject& q)
{
    require_same_frame(p, q, "hom");
    const std::size_t r = p.branches();
    HomProblem out;
    for (std::size_t i = 0; i < r; ++i)
        out.unknowns.push_back({p.psi(i), q.psi(i)});
    out.unknowns.push_back({p.phi(), q.phi()});
    const std::size_t b = r;

    auto id = [](const Module& m) { return Matrix::identity(m.generators()); };
    for (std::size_t i = 0; i < r; ++i) {
        // b can_i - can'_i a_i = 0 on Psi_i
        out.equations.push_back({q.phi(),
                                 p.psi(i).generators(),
                                 {{b, id(q.phi()), p.can(i).matrix()}, {i, Scalar(-1) * q.can(i).matrix(), id(p.psi(i))}}});
        // a_i var_i - var'_i b = 0 on Phi
        out.equations.push_back({q.psi(i),
                                 p.phi().generators(),
                                 {{i, id(q.psi(i)), p.var(i).matrix()}, {b, Scalar(-1) * q.var(i).matrix(), id(p.phi())}}});
    }
    return out;
}

PervMorphism from_components(const PervObject& p, const PervObject& q, std::vector<ModuleMap> maps)
{
    ModuleMap bmap = maps.back();
    maps.pop_back();
    return PervMorphism(p, q, std::move(maps), std::move(bmap));
}

}  // namespace

HomSpace hom_space(const PervObject& p, const PervObject& q)
{
    auto problem = hom_problem(p, q);
    auto solution = solve_hom_constraints(problem.unknowns, problem.equations);
    HomSpace out;
    out.module = solution.module;
    for (auto& maps : solution.generators)
        out.generators.push_back(from_components(p, q, std::move(maps)));
    return out;
}

std::vector<PervMorphism> hom_generators(const PervObject& p, const PervObject& q)
{
    auto problem = hom_problem(p, q);
    std::vector<PervMorphism> out;
    for (auto& maps : hom_constraint_generators(problem.unknowns, problem.equations))
        out.push_back(from_components(p, q, std::move(maps)));
    return out;
}

PervMorphism combine(const HomSpace& hom, const std::vector<Scalar>& coefficients)
{
    if (coefficients.size() != hom.generators.size())
        throw InputError("combine: expected " + std::to_string(hom.generators.size()) + " coefficients");
    if (hom.generators.empty())
        throw InputError("combine: empty generating set carries no source or target");
    PervMorphism total = PervMorphism::zero(hom.generators.front().source(), hom.generators.front().target());
    for (std::size_t k = 0; k < coefficients.size(); ++k)
        if (coefficients[k] != 0)
            total = add(total, scale(coefficients[k], hom.generators[k]));
    return total;
}

MorphismFlags morphism_classify(const PervMorphism& t)
{
    auto f = perv_factorization(t);
    MorphismFlags flags;
    flags.injective = f.kernel.is_zero();
    flags.surjective = f.cokernel.is_zero();
    flags.zero = f.image.is_zero();
    flags.isomorphism = flags.injective && flags.surjective;
    return flags;
}

bool is_injective(const PervMorphism& t)
{
    if (!is_injective(t.b()))
        return false;
    for (const auto& a : t.a())
        if (!is_injective(a))
            return false;
    return true;
}

bool is_surjective(const PervMorphism& t)
{
    if (!is_surjective(t.b()))
        return false;
    for (const auto& a : t.a())
        if (!is_surjective(a))
            return false;
    return true;
}

bool is_isomorphism(const PervMorphism& t)
{
    if (!is_isomorphism(t.b()))
        return false;
    for (const auto& a : t.a())
        if (!is_isomorphism(a))
            return false;
    return true;
}

namespace {

/// First invariant on which p and q differ, or empty.
std::string differing_invariant(const PervObject& p, const PervObject& q)
{
    for (std::size_t i = 0; i < p.branches(); ++i)
        if (!(p.psi(i) == q.psi(i)))
            return "psi of " + branch_label(i) + ": " + p.psi(i).to_string() + " vs " + q.psi(i).to_string();
    if (!(p.phi() == q.phi()))
        return "phi: " + p.phi().to_string() + " vs " + q.phi().to_string();

    auto total_can = [](const PervObject& o) {
        auto parts = direct_sum(o.psi());
        std::vector<ModuleMap> terms;
        for (std::size_t i = 0; i < o.branches(); ++i)
            terms.push_back(compose(parts.projections[i], o.can(i)));
        return sum_of(parts.sum, o.phi(), terms);
    };
    auto cp = map_factorization(total_can(p));
    auto cq = map_factorization(total_can(q));
    if (!(cp.kernel() == cq.kernel()))
        return "origin stalk in degree -1: " + cp.kernel().to_string() + " vs " + cq.kernel().to_string();
    if (!(cp.cokernel() == cq.cokernel()))
        return "origin stalk in degree 0: " + cp.cokernel().to_string() + " vs " + cq.cokernel().to_string();

    for (std::size_t i = 0; i < p.branches(); ++i) {
        Module ip = image(p.can(i)), iq = image(q.can(i));
        if (!(ip == iq))
            return "image of can on " + branch_label(i) + ": " + ip.to_string() + " vs " + iq.to_string();
        ip = image(p.var(i));
        iq = image(q.var(i));
        if (!(ip == iq))
            return "image of var on " + branch_label(i) + ": " + ip.to_string() + " vs " + iq.to_string();
    }
    return {};
}

Scalar random_coefficient(const Ring& ring, SplitMix64& rng)
{
    if (ring.kind() == Ring::Kind::PrimeField)
        return Scalar(static_cast<unsigned long>(rng.below(ring.characteristic())));
    return Scalar(rng.range(-3, 3));
}

}  // namespace

IsomorphismResult find_isomorphism(const PervObject& p, const PervObject& q, std::size_t trials, std::uint64_t seed)
{
    require_same_frame(p, q, "isomorphism search");
    IsomorphismResult out;
    out.invariants_only = !p.ring().is_field();

    if (p == q) {
        out.verdict = IsomorphismResult::Verdict::Isomorphic;
        out.isomorphism = PervMorphism::identity(p);
        out.trials_used = 1;
        return out;
    }
    out.witness = differing_invariant(p, q);
    if (!out.witness.empty()) {
        out.verdict = IsomorphismResult::Verdict::Distinguished;
        return out;
    }
    if (out.invariants_only)
        return out;

    HomSpace hom = hom_space(p, q);
    if (hom.generators.empty())
        return out;
    SplitMix64 rng(seed);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::vector<Scalar> coefficients(hom.generators.size());
        for (auto& c : coefficients)
            c = random_coefficient(p.ring(), rng);
        PervMorphism candidate = combine(hom, coefficients);
        out.trials_used = trial + 1;
        if (is_isomorphism(candidate)) {
            out.verdict = IsomorphismResult::Verdict::Isomorphic;
            out.isomorphism = std::move(candidate);
            return out;
        }
    }
    return out;
}

}  // namespace pervcalc
