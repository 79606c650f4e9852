#include "pervcalc/io.hpp"

#include <limits>

namespace pervcalc {

namespace {

std::string at(const std::string& field, const std::string& key)
{
    return field.empty() ? key : field + "." + key;
}

std::string at(const std::string& field, std::size_t index)
{
    return field + "[" + std::to_string(index) + "]";
}

const Json& member(const Json& j, const std::string& field, const char* key)
{
    if (!j.is_object())
        throw InputError("field '" + (field.empty() ? std::string("<root>") : field) + "': expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError("field '" + at(field, key) + "': missing");
    return *it;
}

Json integer_json(const Integer& v)
{
    if (v.fits_slong_p())
        return Json(v.get_si());
    return Json(v.get_str());
}

Integer integer_from(const Json& j, const std::string& field)
{
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        Scalar s = parse_scalar(j.get<std::string>());
        if (s.get_den() == 1)
            return s.get_num();
    }
    throw InputError("field '" + field + "': expected an integer");
}

std::size_t count_from(const Json& j, const std::string& field)
{
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        throw InputError("field '" + field + "': expected a nonnegative integer");
    return static_cast<std::size_t>(j.get<std::int64_t>());
}

}  // namespace

Json to_json(const Module& m)
{
    Json j = Json::object();
    if (m.ring().is_field()) {
        j["dim"] = m.dimension();
        return j;
    }
    j["free_rank"] = m.free_rank();
    Json factors = Json::array();
    for (const auto& d : m.invariant_factors())
        factors.push_back(integer_json(d));
    j["invariant_factors"] = std::move(factors);
    return j;
}

Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(to_string(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const PervObject& p)
{
    Json j = Json::object();
    j["ring"] = p.ring().tag();
    j["branches"] = p.branches();
    Json psi = Json::array(), can = Json::array(), var = Json::array();
    for (std::size_t i = 0; i < p.branches(); ++i) {
        psi.push_back(to_json(p.psi(i)));
        can.push_back(to_json(p.can(i).matrix()));
        var.push_back(to_json(p.var(i).matrix()));
    }
    j["psi"] = std::move(psi);
    j["phi"] = to_json(p.phi());
    j["can"] = std::move(can);
    j["var"] = std::move(var);
    return j;
}

Json to_json(const PervMorphism& t)
{
    Json j = Json::object();
    j["source"] = to_json(t.source());
    j["target"] = to_json(t.target());
    Json a = Json::array();
    for (const auto& m : t.a())
        a.push_back(to_json(m.matrix()));
    j["a"] = std::move(a);
    j["b"] = to_json(t.b().matrix());
    return j;
}

Json to_json(const StalkReport& s)
{
    Json j = Json::object();
    j["location"] = s.location.to_string();
    Json groups = Json::object();
    for (const auto& [degree, m] : s.groups)
        groups[std::to_string(degree)] = to_json(m);
    j["groups"] = std::move(groups);
    return j;
}

Json to_json(const SupportSet& s)
{
    Json j = Json::object();
    j["origin"] = s.origin_flag;
    Json flags = Json::array();
    for (bool b : s.branch_flags)
        flags.push_back(b);
    j["branches"] = std::move(flags);
    Json comps = Json::array();
    for (const auto& c : s.components()) {
        Json cj = Json::object();
        cj["location"] = c.location.to_string();
        cj["dimension"] = c.dimension;
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    return j;
}

Json to_json(const CharacteristicCycle& cc)
{
    Json j = Json::object();
    Json branch = Json::array();
    for (const auto& m : cc.branch)
        branch.push_back(integer_json(m));
    j["branches"] = std::move(branch);
    j["origin"] = integer_json(cc.origin);
    return j;
}

Module module_from_json(const Ring& ring, const Json& j, const std::string& field)
{
    if (!j.is_object())
        throw InputError("field '" + field + "': expected a module record");
    if (ring.is_field()) {
        if (j.contains("free_rank") || j.contains("invariant_factors"))
            throw InputError("field '" + field + "': modules over " + ring.display_name() + " are given by \"dim\"");
        return Module::free(ring, count_from(member(j, field, "dim"), at(field, "dim")));
    }
    if (j.contains("dim"))
        throw InputError("field '" + field + "': modules over Z are given by \"free_rank\" and \"invariant_factors\"");
    std::size_t free_rank = count_from(member(j, field, "free_rank"), at(field, "free_rank"));
    std::vector<Integer> factors;
    if (j.contains("invariant_factors")) {
        const Json& list = j.at("invariant_factors");
        std::string f = at(field, "invariant_factors");
        if (!list.is_array())
            throw InputError("field '" + f + "': expected an array");
        for (std::size_t k = 0; k < list.size(); ++k)
            factors.push_back(integer_from(list[k], at(f, k)));
    }
    try {
        return Module::integer(free_rank, std::move(factors));
    } catch (const InputError& e) {
        throw InputError("field '" + field + "': " + e.what());
    }
}

Matrix matrix_from_json(const Ring& ring, const Json& j, std::size_t rows, std::size_t cols, const std::string& field)
{
    auto shape = [&] {
        return "field '" + field + "': expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix";
    };
    if (!j.is_array() || j.size() != rows)
        throw InputError(shape());
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InputError(shape());
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& e = j[i][k];
            std::string entry = field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]";
            try {
                if (e.is_string())
                    m(i, k) = ring.reduce(parse_scalar(e.get<std::string>()));
                else if (e.is_number_integer())
                    m(i, k) = ring.reduce(Scalar(static_cast<long>(e.get<std::int64_t>())));
                else
                    throw InputError("expected a decimal string");
            } catch (const InputError& err) {
                throw InputError("field '" + entry + "': " + err.what());
            }
        }
    }
    return m;
}

PervObject object_from_json(const Json& j, const std::string& field)
{
    const Json& tag = member(j, field, "ring");
    if (!tag.is_string())
        throw InputError("field '" + at(field, "ring") + "': expected a ring tag string");
    Ring ring = Ring::rationals();
    try {
        ring = Ring::parse(tag.get<std::string>());
    } catch (const InputError& e) {
        throw InputError("field '" + at(field, "ring") + "': " + e.what());
    }
    std::size_t r = count_from(member(j, field, "branches"), at(field, "branches"));
    if (r == 0)
        throw InputError("field '" + at(field, "branches") + "': at least one branch is required");
    auto list = [&](const char* key) -> const Json& {
        const Json& l = member(j, field, key);
        if (!l.is_array() || l.size() != r)
            throw InputError("field '" + at(field, key) + "': expected a list of " + std::to_string(r) + " entries");
        return l;
    };
    const Json& psi_j = list("psi");
    const Json& can_j = list("can");
    const Json& var_j = list("var");
    Module phi = module_from_json(ring, member(j, field, "phi"), at(field, "phi"));
    std::vector<Module> psi;
    std::vector<ModuleMap> can, var;
    for (std::size_t i = 0; i < r; ++i) {
        psi.push_back(module_from_json(ring, psi_j[i], at(at(field, "psi"), i)));
        std::size_t n = psi.back().generators(), m = phi.generators();
        can.emplace_back(psi.back(), phi, matrix_from_json(ring, can_j[i], m, n, at(at(field, "can"), i)));
        var.emplace_back(phi, psi.back(), matrix_from_json(ring, var_j[i], n, m, at(at(field, "var"), i)));
    }
    return PervObject(std::move(psi), std::move(phi), std::move(can), std::move(var));
}

PervMorphism morphism_from_json(const Json& j)
{
    PervObject source = object_from_json(member(j, "", "source"), "source");
    PervObject target = object_from_json(member(j, "", "target"), "target");
    if (!(source.ring() == target.ring()))
        throw InputError("field 'target.ring': differs from source ring " + source.ring().tag());
    if (source.branches() != target.branches())
        throw InputError("field 'target.branches': differs from source branch count");
    const Json& a_j = member(j, "", "a");
    if (!a_j.is_array() || a_j.size() != source.branches())
        throw InputError("field 'a': expected a list of " + std::to_string(source.branches()) + " matrices");
    std::vector<ModuleMap> a;
    for (std::size_t i = 0; i < source.branches(); ++i)
        a.emplace_back(source.psi(i), target.psi(i),
                       matrix_from_json(source.ring(), a_j[i], target.psi(i).generators(), source.psi(i).generators(),
                                        at("a", i)));
    ModuleMap b(source.phi(), target.phi(),
                matrix_from_json(source.ring(), member(j, "", "b"), target.phi().generators(),
                                 source.phi().generators(), "b"));
    return PervMorphism(std::move(source), std::move(target), std::move(a), std::move(b));
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

bool is_morphism_json(const Json& j) { return j.is_object() && j.contains("source"); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pervcalc
