#include "pervcalc/gallery.hpp"

#include <functional>
#include <map>

namespace pervcalc {

namespace node {

namespace {

Module unit(const Ring& ring) { return Module::free(ring, 1); }

ModuleMap one_by_one(const Ring& ring, long value)
{
    return ModuleMap(unit(ring), unit(ring), Matrix{{value}});
}

}  // namespace

PervObject rx_shift(const Ring& ring)
{
    return PervObject({unit(ring), unit(ring)}, unit(ring), {one_by_one(ring, 1), one_by_one(ring, -1)},
                      {one_by_one(ring, 0), one_by_one(ring, 0)});
}

PervObject ic_x(const Ring& ring)
{
    Module r = unit(ring), z = Module::zero(ring);
    return PervObject({r, r}, z, {ModuleMap::zero(r, z), ModuleMap::zero(r, z)},
                      {ModuleMap::zero(z, r), ModuleMap::zero(z, r)});
}

PervObject m_shift(const Ring& ring)
{
    Module r = unit(ring), z = Module::zero(ring);
    return PervObject({z, z}, r, {ModuleMap::zero(z, r), ModuleMap::zero(z, r)},
                      {ModuleMap::zero(r, z), ModuleMap::zero(r, z)});
}

PervMorphism t_resolution(const Ring& ring)
{
    Module r = unit(ring);
    return PervMorphism(rx_shift(ring), ic_x(ring), {ModuleMap::identity(r), ModuleMap::identity(r)},
                        ModuleMap::zero(r, Module::zero(ring)));
}

PervMorphism s_inclusion(const Ring& ring)
{
    Module r = unit(ring), z = Module::zero(ring);
    return PervMorphism(m_shift(ring), rx_shift(ring), {ModuleMap::zero(z, r), ModuleMap::zero(z, r)},
                        ModuleMap::identity(r));
}

PervMorphism endo_example(const Ring& ring)
{
    auto sum = direct_sum_with_maps({m_shift(ring), rx_shift(ring)});
    return compose(compose(sum.projections[0], s_inclusion(ring)), sum.injections[1]);
}

PervObject jshriek_branch(const Ring& ring)
{
    Module r = unit(ring), z = Module::zero(ring);
    return PervObject({r, z}, r, {one_by_one(ring, 1), ModuleMap::zero(z, r)},
                      {one_by_one(ring, 0), ModuleMap::zero(r, z)});
}

PervObject jstar_branch(const Ring& ring)
{
    Module r = unit(ring), z = Module::zero(ring);
    return PervObject({r, z}, r, {one_by_one(ring, 0), ModuleMap::zero(z, r)},
                      {one_by_one(ring, 1), ModuleMap::zero(r, z)});
}

}  // namespace node

namespace {

class FactSheet {
public:
    explicit FactSheet(GalleryEntry& entry) : entry_(entry) {}

    void add(std::string description, bool holds) { entry_.facts.push_back({std::move(description), holds}); }

    void stalks(const PervObject& p, const Location& at, const Module& degree_minus_one, const Module& degree_zero)
    {
        auto s = stalk_cohomology(p, at);
        add("stalk at " + at.to_string() + " is " + degree_minus_one.to_string() + " in degree -1 and " +
                degree_zero.to_string() + " in degree 0",
            s.groups.at(-1) == degree_minus_one && s.groups.at(0) == degree_zero);
    }

    void cc(const PervObject& p, const CharacteristicCycle& expected)
    {
        if (!p.ring().is_field())
            return;
        add("characteristic cycle is " + expected.to_string(), characteristic_cycle(p) == expected);
    }

private:
    GalleryEntry& entry_;
};

CharacteristicCycle cycle(long m1, long m2, long m0)
{
    return CharacteristicCycle{{Integer(m1), Integer(m2)}, Integer(m0)};
}

bool all_stalk_maps_zero(const PervMorphism& t)
{
    for (const auto& loc : all_locations(t.branches()))
        for (const auto& [degree, map] : induced_stalk_maps(t, loc).maps)
            if (!map.is_zero())
                return false;
    return true;
}

bool is_valid_isomorphism(const PervMorphism& t) { return !validate_morphism(t) && is_isomorphism(t); }

/// The map C -> X induced by g : Q -> X, where g kills the image; evaluated on cokernel lifts.
PervMorphism descend_to_cokernel(const PervFactorization& f, const PervMorphism& g)
{
    const auto& c = f.cokernel;
    std::vector<ModuleMap> a;
    const std::size_t r = c.branches();
    for (std::size_t i = 0; i < r; ++i)
        a.emplace_back(c.psi(i), g.target().psi(i), g.a(i).matrix() * f.components[i].cokernel_data.lifts);
    ModuleMap b(c.phi(), g.target().phi(), g.b().matrix() * f.components[r].cokernel_data.lifts);
    return PervMorphism(c, g.target(), std::move(a), std::move(b));
}

void describe_rx_shift(FactSheet& s, const Ring& ring)
{
    auto p = node::rx_shift(ring);
    Module r = Module::free(ring, 1), z = Module::zero(ring);
    s.add("passes validation", !validate_object(p));
    s.stalks(p, Location::origin(), r, z);
    s.stalks(p, Location::branch(0), r, z);
    s.stalks(p, Location::branch(1), r, z);
    s.add("vanishing cycles are R", nearby_and_vanishing(p).phi == r);
    s.add("supported on both branches", support(p) == SupportSet::closure({true, true}, true));
    s.cc(p, cycle(1, 1, 1));
}

void describe_ic_x(FactSheet& s, const Ring& ring)
{
    auto p = node::ic_x(ring);
    Module r = Module::free(ring, 1), z = Module::zero(ring);
    s.add("passes validation", !validate_object(p));
    s.stalks(p, Location::origin(), Module::free(ring, 2), z);
    s.stalks(p, Location::branch(0), r, z);
    s.add("vanishing cycles are 0", nearby_and_vanishing(p).phi.is_zero());
    s.add("supported on both branches", support(p) == SupportSet::closure({true, true}, true));
    s.cc(p, cycle(1, 1, 0));
}

void describe_m_shift(FactSheet& s, const Ring& ring)
{
    auto p = node::m_shift(ring);
    Module r = Module::free(ring, 1), z = Module::zero(ring);
    s.add("passes validation", !validate_object(p));
    s.stalks(p, Location::origin(), z, r);
    s.stalks(p, Location::branch(0), z, z);
    s.add("supported only at the origin", support(p) == SupportSet::closure({false, false}, true));
    s.cc(p, cycle(0, 0, 1));
}

void describe_t_resolution(FactSheet& s, const Ring& ring)
{
    auto t = node::t_resolution(ring);
    s.add("passes validation", !validate_morphism(t));
    auto f = perv_factorization(t);
    s.add("kernel is m_shift", f.kernel == node::m_shift(ring));
    s.add("kernel has vanishing cycles R", f.kernel.phi() == Module::free(ring, 1));
    auto flags = morphism_classify(t);
    s.add("surjective and not injective", flags.surjective && !flags.injective);
    bool identity_on_branches = true;
    for (std::size_t i = 0; i < 2; ++i) {
        auto m = induced_stalk_maps(t, Location::branch(i)).maps.at(-1);
        identity_on_branches = identity_on_branches && m == ModuleMap::identity(Module::free(ring, 1));
    }
    s.add("identity on branch stalks", identity_on_branches);
    auto sequence = exactness_check(vanishing_sequence(t, f));
    bool exact = true;
    for (bool b : sequence)
        exact = exact && b;
    s.add("vanishing-cycle sequence 0 -> R -> R -> 0 -> 0 -> 0 is exact", exact && sequence.size() == 4);
}

void describe_s_inclusion(FactSheet& s, const Ring& ring)
{
    auto t = node::s_inclusion(ring);
    s.add("passes validation", !validate_morphism(t));
    auto flags = morphism_classify(t);
    s.add("injective, not surjective, not zero", flags.injective && !flags.surjective && !flags.zero);
    s.add("every induced stalk map is zero", all_stalk_maps_zero(t));
    s.add("isolating map at the origin is the identity",
          isolating_map(t, Location::origin()) == ModuleMap::identity(Module::free(ring, 1)));
    s.add("t_resolution after s_inclusion is zero", compose(t, node::t_resolution(ring)).is_zero());
}

void describe_endo_example(FactSheet& s, const Ring& ring)
{
    auto t = node::endo_example(ring);
    s.add("passes validation", !validate_morphism(t));
    auto f = perv_factorization(t);
    auto parts = direct_sum_with_maps({node::m_shift(ring), node::rx_shift(ring)});

    // Explicit isomorphisms, valid over every ring.
    s.add("kernel is isomorphic to rx_shift", is_valid_isomorphism(compose(f.iota, parts.projections[1])));
    s.add("image is isomorphic to m_shift", is_valid_isomorphism(compose(parts.injections[0], f.alpha)));
    auto split = direct_sum_with_maps({node::m_shift(ring), node::ic_x(ring)});
    auto to_split = add(compose(parts.projections[0], split.injections[0]),
                        compose(compose(parts.projections[1], node::t_resolution(ring)), split.injections[1]));
    s.add("cokernel is isomorphic to m_shift + ic_x", is_valid_isomorphism(descend_to_cokernel(f, to_split)));

    s.add("every induced stalk map is zero", all_stalk_maps_zero(t));
    s.add("image is supported only at the origin",
          support(f.image) == SupportSet::closure({false, false}, true));
    auto search = find_isomorphism(f.kernel, f.cokernel);
    s.add("kernel and cokernel are distinguished by an invariant",
          search.verdict == IsomorphismResult::Verdict::Distinguished);
    if (ring.is_field()) {
        auto k = characteristic_cycle(f.kernel);
        s.add("CC(kernel) = CC(cokernel) = (1, 1; 1)", k == characteristic_cycle(f.cokernel) && k == cycle(1, 1, 1));
    }
}

void describe_jshriek(FactSheet& s, const Ring& ring)
{
    auto p = node::jshriek_branch(ring);
    Module z = Module::zero(ring);
    s.add("passes validation", !validate_object(p));
    s.stalks(p, Location::origin(), z, z);
    s.stalks(p, Location::branch(0), Module::free(ring, 1), z);
    s.add("supported on the first branch", support(p) == SupportSet::closure({true, false}, true));
}

void describe_jstar(FactSheet& s, const Ring& ring)
{
    auto p = node::jstar_branch(ring);
    Module r = Module::free(ring, 1);
    s.add("passes validation", !validate_object(p));
    s.stalks(p, Location::origin(), r, r);
    s.add("supported on the first branch", support(p) == SupportSet::closure({true, false}, true));
}

struct Recipe {
    std::string summary;
    std::function<PervObject(const Ring&)> object;
    std::function<PervMorphism(const Ring&)> morphism;
    std::function<void(FactSheet&, const Ring&)> facts;
};

const std::map<std::string, Recipe>& recipes()
{
    static const std::map<std::string, Recipe> table = {
        {"rx_shift", {"constant sheaf on the node, shifted into degree -1", node::rx_shift, nullptr, describe_rx_shift}},
        {"ic_x", {"intersection cohomology of the node (direct image from its normalization)", node::ic_x, nullptr,
                  describe_ic_x}},
        {"m_shift", {"skyscraper at the origin, in degree 0", node::m_shift, nullptr, describe_m_shift}},
        {"t_resolution", {"rx_shift -> ic_x from the normalization", nullptr, node::t_resolution,
                          describe_t_resolution}},
        {"s_inclusion", {"m_shift -> rx_shift, the identity on vanishing cycles", nullptr, node::s_inclusion,
                         describe_s_inclusion}},
        {"endo_example", {"T(a, b) = (0, S(a)) on m_shift + rx_shift", nullptr, node::endo_example,
                          describe_endo_example}},
        {"jshriek_branch", {"extension by zero of the constant sheaf on the first punctured branch",
                            node::jshriek_branch, nullptr, describe_jshriek}},
        {"jstar_branch", {"direct image of the constant sheaf on the first punctured branch", node::jstar_branch,
                          nullptr, describe_jstar}},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& gallery_names()
{
    static const std::vector<std::string> names = {"rx_shift",     "ic_x",         "m_shift",        "t_resolution",
                                                   "s_inclusion", "endo_example", "jshriek_branch", "jstar_branch"};
    return names;
}

GalleryEntry gallery(const std::string& name, const Ring& ring)
{
    auto it = recipes().find(name);
    if (it == recipes().end())
        throw InputError("gallery: unknown entry '" + name + "'");
    const Recipe& recipe = it->second;
    GalleryEntry entry;
    entry.name = name;
    entry.summary = recipe.summary;
    if (recipe.object)
        entry.object = recipe.object(ring);
    else
        entry.morphism = recipe.morphism(ring);
    FactSheet sheet(entry);
    recipe.facts(sheet, ring);
    for (const auto& fact : entry.facts)
        if (!fact.holds)
            throw GalleryError("gallery entry " + name + " over " + ring.display_name() +
                               " no longer reproduces: " + fact.description);
    return entry;
}

}  // namespace pervcalc
