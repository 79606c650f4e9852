#include "pervcalc/functors.hpp"

#include <sstream>

namespace pervcalc {

Location Location::parse(const std::string& text)
{
    if (text == "origin")
        return origin();
    const std::string prefix = "branch:";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) {
        std::size_t i = 0;
        for (char ch : text.substr(prefix.size())) {
            if (ch < '0' || ch > '9' || i > 1000000)
                throw InputError("location: malformed branch index in '" + text + "'");
            i = i * 10 + static_cast<std::size_t>(ch - '0');
        }
        if (i == 0)
            throw InputError("location: branches are numbered from 1");
        return branch(i - 1);
    }
    throw InputError("location: expected 'origin' or 'branch:i', got '" + text + "'");
}

std::string Location::to_string() const
{
    return is_origin() ? "origin" : "branch:" + std::to_string(index + 1);
}

namespace {

void check_location(std::size_t branches, const Location& at)
{
    if (!at.is_origin() && at.index >= branches)
        throw InputError("location " + at.to_string() + " is out of range for " + std::to_string(branches) +
                         " branches");
}

ModuleMap block_sum(const std::vector<ModuleMap>& maps, const DirectSum& from, const DirectSum& to)
{
    ModuleMap total = ModuleMap::zero(from.sum, to.sum);
    for (std::size_t k = 0; k < maps.size(); ++k)
        total = add(total, compose(compose(from.projections[k], maps[k]), to.injections[k]));
    return total;
}

}  // namespace

std::vector<Location> all_locations(std::size_t branches)
{
    std::vector<Location> out{Location::origin()};
    for (std::size_t i = 0; i < branches; ++i)
        out.push_back(Location::branch(i));
    return out;
}

ModuleMap total_can(const PervObject& p)
{
    auto psi = direct_sum(p.psi());
    ModuleMap total = ModuleMap::zero(psi.sum, p.phi());
    for (std::size_t i = 0; i < p.branches(); ++i)
        total = add(total, compose(psi.projections[i], p.can(i)));
    return total;
}

StalkReport stalk_cohomology(const PervObject& p, const Location& at)
{
    check_location(p.branches(), at);
    StalkReport out{at, {}};
    if (at.is_origin()) {
        auto f = map_factorization(total_can(p));
        out.groups.emplace(-1, f.kernel());
        out.groups.emplace(0, f.cokernel());
    } else {
        out.groups.emplace(-1, p.psi(at.index));
        out.groups.emplace(0, Module::zero(p.ring()));
    }
    return out;
}

StalkMaps induced_stalk_maps(const PervMorphism& t, const Location& at)
{
    check_location(t.branches(), at);
    StalkMaps out{at, {}};
    if (!at.is_origin()) {
        Module zero = Module::zero(t.ring());
        out.maps.emplace(-1, t.a(at.index));
        out.maps.emplace(0, ModuleMap::zero(zero, zero));
        return out;
    }
    auto fp = map_factorization(total_can(t.source()));
    auto fq = map_factorization(total_can(t.target()));
    ModuleMap a = nearby_and_vanishing(t).psi;
    // a carries ker(can) into ker(can') and b descends to the cokernels, by commutation.
    out.maps.emplace(-1, ModuleMap(fp.kernel(), fq.kernel(),
                                   fq.kernel_lattice.coordinates(a.matrix() * fp.kernel_inclusion.matrix())));
    out.maps.emplace(0, ModuleMap(fp.cokernel(), fq.cokernel(),
                                  fq.cokernel_data.projection * t.b().matrix() * fp.cokernel_data.lifts));
    return out;
}

SupportSet SupportSet::closure(std::vector<bool> branches, bool origin)
{
    SupportSet s;
    s.origin_flag = origin;
    for (bool b : branches)
        s.origin_flag = s.origin_flag || b;
    s.branch_flags = std::move(branches);
    return s;
}

std::vector<SupportComponent> SupportSet::components() const
{
    std::vector<SupportComponent> out;
    bool any_branch = false;
    for (std::size_t i = 0; i < branch_flags.size(); ++i)
        if (branch_flags[i]) {
            out.push_back({Location::branch(i), 1});
            any_branch = true;
        }
    if (origin_flag && !any_branch)
        out.push_back({Location::origin(), 0});
    return out;
}

std::string SupportSet::to_string() const
{
    if (empty())
        return "{}";
    std::string s = "{origin";
    for (std::size_t i = 0; i < branch_flags.size(); ++i)
        if (branch_flags[i])
            s += ", branch:" + std::to_string(i + 1);
    return s + "}";
}

SupportSet support(const PervObject& p)
{
    std::vector<bool> flags;
    for (const auto& m : p.psi())
        flags.push_back(!m.is_zero());
    auto origin = stalk_cohomology(p, Location::origin());
    return SupportSet::closure(std::move(flags), !origin.groups.at(-1).is_zero() || !origin.groups.at(0).is_zero());
}

NearbyVanishing nearby_and_vanishing(const PervObject& p)
{
    auto psi = direct_sum(p.psi());
    std::vector<ModuleMap> mu;
    for (std::size_t i = 0; i < p.branches(); ++i)
        mu.push_back(p.branch_monodromy(i));
    return {psi.sum, block_sum(mu, psi, psi), p.phi(), p.vanishing_monodromy()};
}

NearbyVanishingMaps nearby_and_vanishing(const PervMorphism& t)
{
    auto from = direct_sum(t.source().psi());
    auto to = direct_sum(t.target().psi());
    return {block_sum(t.a(), from, to), t.b()};
}

std::vector<ModuleMap> vanishing_sequence(const PervMorphism& t, const PervFactorization& f)
{
    Module zero = Module::zero(t.ring());
    const ModuleMap& into = f.iota.b();
    const ModuleMap& onto = f.pi.b();
    return {ModuleMap::zero(zero, into.domain()), into, t.b(), onto, ModuleMap::zero(onto.codomain(), zero)};
}

ModuleMap isolating_map(const PervMorphism& t, const Location& at)
{
    check_location(t.branches(), at);
    return at.is_origin() ? t.b() : t.a(at.index);
}

bool CharacteristicCycle::is_zero() const
{
    if (origin != 0)
        return false;
    for (const auto& m : branch)
        if (m != 0)
            return false;
    return true;
}

SupportSet CharacteristicCycle::underlying_set() const
{
    std::vector<bool> flags;
    for (const auto& m : branch)
        flags.push_back(m != 0);
    return SupportSet::closure(std::move(flags), origin != 0);
}

std::string CharacteristicCycle::to_string() const
{
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < branch.size(); ++i)
        out << (i ? ", " : "") << branch[i].get_str();
    out << "; " << origin.get_str() << ")";
    return out.str();
}

CharacteristicCycle operator+(const CharacteristicCycle& x, const CharacteristicCycle& y)
{
    if (x.branch.size() != y.branch.size())
        throw InputError("characteristic cycles on different germs");
    CharacteristicCycle s = x;
    for (std::size_t i = 0; i < s.branch.size(); ++i)
        s.branch[i] += y.branch[i];
    s.origin += y.origin;
    return s;
}

CharacteristicCycle characteristic_cycle(const PervObject& p)
{
    if (!p.ring().is_field())
        throw UnsupportedRingError("characteristic cycles need a field; ring is " + p.ring().display_name());
    CharacteristicCycle cc;
    for (const auto& m : p.psi())
        cc.branch.emplace_back(static_cast<unsigned long>(m.dimension()));
    cc.origin = static_cast<unsigned long>(p.phi().dimension());
    return cc;
}

}  // namespace pervcalc
