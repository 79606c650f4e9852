#include "pervcalc/cli.hpp"

#include "pervcalc/gallery.hpp"
#include "pervcalc/io.hpp"
#include "pervcalc/theorems.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pervcalc::cli {
namespace {

/// An input that parsed but failed an axiom.
struct ViolationError {
    Violation violation;
};

/// A command's result: JSON for --json, text otherwise.
struct Report {
    Json json;
    std::string text;
    int code = ExitSuccess;
};

std::string one_line(std::string s)
{
    for (char& c : s)
        if (c == '\n' || c == '\r')
            c = ' ';
    return s;
}

std::string violation_text(const Violation& v)
{
    std::string where = v.branch ? " at branch:" + std::to_string(*v.branch + 1) : "";
    return v.axiom + where + ": " + v.detail;
}

Json violation_json(const Violation& v)
{
    Json j;
    j["axiom"] = v.axiom;
    j["branch"] = v.branch ? Json(*v.branch + 1) : Json(nullptr);
    j["detail"] = v.detail;
    return j;
}

std::string read_input(const std::string& path, std::istream& in)
{
    std::ostringstream buffer;
    if (path.empty() || path == "-") {
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw InputError("cannot read file '" + path + "'");
    buffer << file.rdbuf();
    return buffer.str();
}

struct Loaded {
    std::optional<PervObject> object;
    std::optional<PervMorphism> morphism;
};

/// Parses an object or morphism file; `role` prefixes parse errors.
Loaded load(const std::string& path, std::istream& in, const std::string& role, bool validate = true)
{
    Json j;
    Loaded out;
    try {
        j = parse_json(read_input(path, in));
        if (is_morphism_json(j))
            out.morphism = morphism_from_json(j);
        else
            out.object = object_from_json(j);
    } catch (const InputError& e) {
        throw InputError(role.empty() ? e.what() : role + ": " + e.what());
    }
    if (validate) {
        auto v = out.object ? validate_object(*out.object) : validate_morphism(*out.morphism);
        if (v)
            throw ViolationError{*v};
    }
    return out;
}

PervObject load_object(const std::string& path, std::istream& in, const std::string& role, const std::string& command)
{
    auto loaded = load(path, in, role);
    if (!loaded.object)
        throw InputError((role.empty() ? "" : role + ": ") + command + " expects an object file, got a morphism");
    return *loaded.object;
}

PervMorphism load_morphism(const std::string& path, std::istream& in, const std::string& command)
{
    auto loaded = load(path, in, "");
    if (!loaded.morphism)
        throw InputError(command + " expects a morphism file, got an object");
    return *loaded.morphism;
}

Json map_json(const ModuleMap& f)
{
    Json j;
    j["domain"] = to_json(f.domain());
    j["codomain"] = to_json(f.codomain());
    j["matrix"] = to_json(f.matrix());
    return j;
}

std::string map_text(const ModuleMap& f)
{
    return f.domain().to_string() + " -> " + f.codomain().to_string() + " " + to_string(f.matrix());
}

std::string object_text(const PervObject& p)
{
    std::string s = "(psi: ";
    for (std::size_t i = 0; i < p.branches(); ++i)
        s += (i ? ", " : "") + p.psi(i).to_string();
    return s + "; phi: " + p.phi().to_string() + ")";
}

std::string stalk_groups_text(const StalkReport& s)
{
    std::string out;
    for (const auto& [degree, group] : s.groups)
        out += (out.empty() ? "" : ", ") + ("H^" + std::to_string(degree) + " = ") + group.to_string();
    return out;
}

std::uint64_t parse_seed_env(const std::string& text)
{
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw InputError("PERVCALC_SEED: expected an unsigned integer, got '" + text + "'");
    return value;
}

// ---------------------------------------------------------------------------

Report cmd_validate(const Loaded& loaded)
{
    Report r;
    std::string kind = loaded.object ? "object" : "morphism";
    const Ring& ring = loaded.object ? loaded.object->ring() : loaded.morphism->ring();
    std::size_t branches = loaded.object ? loaded.object->branches() : loaded.morphism->branches();
    auto v = loaded.object ? validate_object(*loaded.object) : validate_morphism(*loaded.morphism);
    r.json["command"] = "validate";
    r.json["kind"] = kind;
    r.json["ring"] = ring.tag();
    r.json["branches"] = branches;
    r.json["valid"] = !v;
    r.json["violation"] = v ? violation_json(*v) : Json(nullptr);
    if (v) {
        r.text = "violation: " + violation_text(*v) + "\n";
        r.code = ExitViolation;
    } else {
        r.text = "valid " + kind + " over " + ring.tag() + " with " + std::to_string(branches) + " branches\n";
    }
    return r;
}

struct Candidate {
    std::string name;
    PervObject object;
};

/// Gallery objects and their pairwise sums with a given branch count.
std::vector<Candidate> gallery_candidates(const Ring& ring, std::size_t branches)
{
    std::vector<Candidate> singles;
    for (const auto& name : gallery_names()) {
        auto entry = gallery(name, ring);
        if (entry.object && entry.object->branches() == branches)
            singles.push_back({name, *entry.object});
    }
    std::vector<Candidate> out = singles;
    for (std::size_t i = 0; i < singles.size(); ++i)
        for (std::size_t j = i; j < singles.size(); ++j)
            out.push_back({singles[i].name + " + " + singles[j].name, direct_sum(singles[i].object, singles[j].object)});
    return out;
}

struct Match {
    std::string name;
    bool decided = true;  // false when only invariants agree (over Z)
};

std::vector<Match> gallery_matches(const PervObject& p, const std::vector<Candidate>& candidates)
{
    if (p.is_zero())
        return {{"0", true}};
    std::vector<Match> out;
    for (const auto& c : candidates) {
        auto result = find_isomorphism(p, c.object);
        if (result.verdict == IsomorphismResult::Verdict::Isomorphic)
            out.push_back({c.name, true});
        else if (result.verdict == IsomorphismResult::Verdict::Unknown)
            out.push_back({c.name, false});
    }
    return out;
}

void describe_object(const PervObject& p, const std::vector<Candidate>& candidates, Json& j, std::string& text,
                     const std::string& indent)
{
    j["object"] = to_json(p);
    auto supp = support(p);
    j["support"] = to_json(supp);
    text += indent + "support: " + supp.to_string() + "\n";
    Json stalks = Json::array();
    std::string stalk_line;
    for (const auto& loc : all_locations(p.branches())) {
        auto s = stalk_cohomology(p, loc);
        stalks.push_back(to_json(s));
        stalk_line += (stalk_line.empty() ? "" : "; ") + loc.to_string() + ": " + stalk_groups_text(s);
    }
    j["stalks"] = stalks;
    text += indent + "stalks: " + stalk_line + "\n";
    if (p.ring().is_field()) {
        auto cc = characteristic_cycle(p);
        j["cc"] = to_json(cc);
        text += indent + "cc: " + cc.to_string() + "\n";
    }
    Json matches = Json::array();
    std::string iso, undecided;
    for (const auto& m : gallery_matches(p, candidates)) {
        Json mj;
        mj["name"] = m.name;
        mj["verdict"] = m.decided ? "isomorphic" : "invariants agree";
        matches.push_back(mj);
        std::string& list = m.decided ? iso : undecided;
        list += (list.empty() ? "" : ", ") + m.name;
    }
    j["gallery_matches"] = matches;
    if (!iso.empty())
        text += indent + "isomorphic to " + iso + "\n";
    if (!undecided.empty())
        text += indent + "invariants agree with " + undecided + "\n";
    if (iso.empty() && undecided.empty())
        text += indent + "no gallery match\n";
}

Report cmd_factor(const PervMorphism& t)
{
    Report r;
    auto f = perv_factorization(t);
    auto flags = morphism_classify(t);
    auto candidates = gallery_candidates(t.ring(), t.branches());
    r.json["command"] = "factor";
    r.json["ring"] = t.ring().tag();
    r.json["branches"] = t.branches();
    Json fj;
    fj["injective"] = flags.injective;
    fj["surjective"] = flags.surjective;
    fj["zero"] = flags.zero;
    fj["isomorphism"] = flags.isomorphism;
    r.json["flags"] = fj;

    std::vector<std::string> props;
    if (flags.zero)
        props.push_back("zero");
    if (flags.isomorphism)
        props.push_back("isomorphism");
    else {
        if (flags.injective)
            props.push_back("injective");
        if (flags.surjective)
            props.push_back("surjective");
    }
    std::string prop_text;
    for (const auto& p : props)
        prop_text += (prop_text.empty() ? "" : ", ") + p;
    r.text = "morphism over " + t.ring().tag() + " with " + std::to_string(t.branches()) + " branches: " +
             (prop_text.empty() ? "neither injective nor surjective" : prop_text) + "\n";

    const std::pair<const char*, const PervObject*> parts[] = {
        {"kernel", &f.kernel}, {"image", &f.image}, {"cokernel", &f.cokernel}};
    for (const auto& [name, object] : parts) {
        Json pj;
        r.text += std::string(name) + ": " + object_text(*object) + "\n";
        describe_object(*object, candidates, pj, r.text, "  ");
        r.json[name] = pj;
    }
    return r;
}

Report cmd_stalk(const Loaded& loaded, const std::string& at)
{
    Report r;
    auto loc = Location::parse(at);
    r.json["command"] = "stalk";
    if (loaded.object) {
        auto s = stalk_cohomology(*loaded.object, loc);
        r.json["kind"] = "object";
        r.json["stalk"] = to_json(s);
        r.text = "stalk at " + loc.to_string() + ": " + stalk_groups_text(s) + "\n";
        return r;
    }
    const auto& t = *loaded.morphism;
    auto source = stalk_cohomology(t.source(), loc);
    auto target = stalk_cohomology(t.target(), loc);
    auto maps = induced_stalk_maps(t, loc);
    r.json["kind"] = "morphism";
    r.json["source"] = to_json(source);
    r.json["target"] = to_json(target);
    Json mj;
    r.text = "stalk maps at " + loc.to_string() + ":\n";
    for (const auto& [degree, map] : maps.maps) {
        mj[std::to_string(degree)] = map_json(map);
        r.text += "  H^" + std::to_string(degree) + ": " + map_text(map) + "\n";
    }
    r.json["maps"] = mj;
    return r;
}

Report cmd_support(const PervObject& p)
{
    Report r;
    auto s = support(p);
    r.json["command"] = "support";
    r.json["support"] = to_json(s);
    r.text = "support: " + s.to_string() + "\n";
    for (const auto& c : s.components())
        r.text += "  component " + c.location.to_string() + " (dimension " + std::to_string(c.dimension) + ")\n";
    return r;
}

Report cmd_cc(const PervObject& p)
{
    Report r;
    auto cc = characteristic_cycle(p);
    r.json["command"] = "cc";
    r.json["cc"] = to_json(cc);
    r.text = "cc: " + cc.to_string() + "\n";
    return r;
}

Report cmd_phi(const Loaded& loaded)
{
    Report r;
    r.json["command"] = "phi";
    if (loaded.object) {
        auto nv = nearby_and_vanishing(*loaded.object);
        r.json["kind"] = "object";
        r.json["psi"] = to_json(nv.psi);
        r.json["psi_monodromy"] = to_json(nv.psi_monodromy.matrix());
        r.json["phi"] = to_json(nv.phi);
        r.json["phi_monodromy"] = to_json(nv.phi_monodromy.matrix());
        r.text = "psi: " + nv.psi.to_string() + ", monodromy " + to_string(nv.psi_monodromy.matrix()) + "\n" +
                 "phi: " + nv.phi.to_string() + ", monodromy " + to_string(nv.phi_monodromy.matrix()) + "\n";
        return r;
    }
    const auto& t = *loaded.morphism;
    auto maps = nearby_and_vanishing(t);
    auto f = perv_factorization(t);
    auto seq = vanishing_sequence(t, f);
    auto exact = exactness_check(seq);
    r.json["kind"] = "morphism";
    r.json["psi_map"] = map_json(maps.psi);
    r.json["phi_map"] = map_json(maps.phi);
    Json terms = Json::array();
    std::string term_text = seq.empty() ? "" : seq.front().domain().to_string();
    for (const auto& m : seq) {
        if (terms.empty())
            terms.push_back(to_json(m.domain()));
        terms.push_back(to_json(m.codomain()));
        term_text += " -> " + m.codomain().to_string();
    }
    r.json["sequence"] = terms;
    r.json["exact"] = exact;
    bool all_exact = std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
    r.text = "psi map: " + map_text(maps.psi) + "\nphi map: " + map_text(maps.phi) + "\n" +
             "sequence: " + term_text + " (" + (all_exact ? "exact" : "NOT exact") + ")\n";
    if (!all_exact)
        r.code = ExitViolation;
    return r;
}

Report cmd_hom(const PervObject& p, const PervObject& q)
{
    Report r;
    auto hom = hom_space(p, q);
    r.json["command"] = "hom";
    r.json["ring"] = p.ring().tag();
    r.json["module"] = to_json(hom.module);
    r.json["is_basis"] = hom.is_basis();
    Json gens = Json::array();
    r.text = "Hom = " + hom.module.to_string() + "\n";
    for (std::size_t k = 0; k < hom.generators.size(); ++k) {
        const auto& g = hom.generators[k];
        Json gj;
        Json a = Json::array();
        r.text += "  generator " + std::to_string(k + 1) + ": a = (";
        for (std::size_t i = 0; i < g.branches(); ++i) {
            a.push_back(to_json(g.a(i).matrix()));
            r.text += (i ? ", " : "") + to_string(g.a(i).matrix());
        }
        gj["a"] = a;
        gj["b"] = to_json(g.b().matrix());
        gens.push_back(gj);
        r.text += "), b = " + to_string(g.b().matrix()) + "\n";
    }
    r.json["generators"] = gens;
    return r;
}

Report cmd_iso(const PervObject& p, const PervObject& q, std::size_t trials, std::uint64_t seed)
{
    Report r;
    auto result = find_isomorphism(p, q, trials, seed);
    std::string verdict = result.verdict == IsomorphismResult::Verdict::Isomorphic      ? "isomorphic"
                          : result.verdict == IsomorphismResult::Verdict::Distinguished ? "distinguished"
                                                                                        : "unknown";
    r.json["command"] = "iso";
    r.json["verdict"] = verdict;
    r.json["seed"] = seed;
    r.json["trials"] = trials;
    r.json["trials_used"] = result.trials_used;
    r.json["invariants_only"] = result.invariants_only;
    r.json["witness"] = result.witness.empty() ? Json(nullptr) : Json(result.witness);
    r.json["isomorphism"] = result.isomorphism ? to_json(*result.isomorphism) : Json(nullptr);
    r.text = verdict + " (seed " + std::to_string(seed) + ", " + std::to_string(result.trials_used) + " of " +
             std::to_string(trials) + " trials used)\n";
    if (!result.witness.empty())
        r.text += "  distinguished by " + result.witness + "\n";
    if (result.invariants_only && result.verdict == IsomorphismResult::Verdict::Unknown)
        r.text += "  invariants agree; no search over z\n";
    if (result.isomorphism) {
        const auto& iso = *result.isomorphism;
        for (std::size_t i = 0; i < iso.branches(); ++i)
            r.text += "  a" + std::to_string(i + 1) + " = " + to_string(iso.a(i).matrix()) + "\n";
        r.text += "  b = " + to_string(iso.b().matrix()) + "\n";
    }
    if (result.verdict == IsomorphismResult::Verdict::Distinguished)
        r.code = ExitViolation;
    return r;
}

Report cmd_check(const FuzzOptions& options)
{
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), options.suite) == names.end())
        throw InputError("--suite: unknown suite '" + options.suite + "'");
    if (options.suite != "all" && !suite_supports(options.suite, options.ring))
        throw InputError("--ring: suite '" + options.suite + "' needs a field, got '" + options.ring.tag() + "'");
    Report r;
    auto report = fuzz(options);
    r.json = to_json(report);
    r.text = to_text(report);
    if (report.failed() || report.verdict == Verdict::Unsupported)
        r.code = report.failed() ? ExitViolation : ExitUsage;
    return r;
}

Report cmd_gallery(const std::string& name, const Ring& ring, bool facts)
{
    Report r;
    auto entry = gallery(name, ring);
    if (facts) {
        r.json["command"] = "gallery";
        r.json["name"] = entry.name;
        r.json["ring"] = ring.tag();
        r.json["summary"] = entry.summary;
        Json fj = Json::array();
        r.text = entry.name + ": " + entry.summary + "\n";
        for (const auto& f : entry.facts) {
            Json one;
            one["fact"] = f.description;
            one["holds"] = f.holds;
            fj.push_back(one);
            r.text += std::string("  [") + (f.holds ? "ok" : "FAILED") + "] " + f.description + "\n";
        }
        r.json["facts"] = fj;
        return r;
    }
    r.json = entry.object ? to_json(*entry.object) : to_json(*entry.morphism);
    r.text = dump(r.json);
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed)
{
    CLI::App app{"Exact computations with perverse sheaves on curve germs", "pervcalc"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    std::string out_path;
    app.add_flag("--json", json, "Emit the report as JSON");
    app.add_option("--out", out_path, "Write the report to this file instead of stdout");

    std::string in_path, at, source, target, name, suite = "all", ring_tag = "q";
    std::optional<std::string> gallery_ring;
    std::size_t trials = 0, max_dim = 6;
    std::optional<std::uint64_t> seed;
    bool facts = false;

    auto* validate = app.add_subcommand("validate", "Check the axioms of an object or morphism file");
    auto* factor = app.add_subcommand("factor", "Kernel, image and cokernel of a morphism");
    auto* stalk = app.add_subcommand("stalk", "Stalk cohomology (or induced stalk maps) at a location");
    auto* supp = app.add_subcommand("support", "Support of an object");
    auto* cc = app.add_subcommand("cc", "Characteristic cycle of an object (fields only)");
    auto* phi = app.add_subcommand("phi", "Nearby and vanishing cycles of an object or morphism");
    for (auto* sub : {validate, factor, stalk, supp, cc, phi})
        sub->add_option("--in", in_path, "Input file (stdin when omitted)");
    stalk->add_option("--at", at, "origin or branch:i (1-based)")->required();

    auto* hom = app.add_subcommand("hom", "Hom between two objects");
    auto* iso = app.add_subcommand("iso", "Search for an isomorphism between two objects");
    for (auto* sub : {hom, iso}) {
        sub->add_option("--source", source, "Source object file")->required();
        sub->add_option("--target", target, "Target object file")->required();
    }
    iso->add_option("--trials", trials, "Random trials (default 64)");
    iso->add_option("--seed", seed, "Seed (default PERVCALC_SEED or 0)");

    auto* check = app.add_subcommand("check", "Run a seeded property suite");
    check->add_option("--suite", suite, "support, corollary, endo, eigen, cc or all");
    check->add_option("--trials", trials, "Trials (default 1000)");
    check->add_option("--seed", seed, "Seed (default PERVCALC_SEED or 0)");
    check->add_option("--ring", ring_tag, "q, z or fp:P");
    check->add_option("--max-dim", max_dim, "Largest module dimension");

    auto* gal = app.add_subcommand("gallery", "Print a worked example as an object or morphism file");
    gal->add_option("--name", name, "Entry name")->required();
    gal->add_option("--ring", gallery_ring, "q, z or fp:P (default z)");
    gal->add_flag("--facts", facts, "List the re-derived facts instead of the file");

    std::vector<const char*> argv{"pervcalc"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return ExitSuccess;
        } catch (const CLI::ParseError& e) {
            throw InputError(e.what());
        }

        auto default_seed = [&]() -> std::uint64_t {
            if (seed)
                return *seed;
            return env_seed ? parse_seed_env(*env_seed) : 0;
        };

        Report report;
        if (validate->parsed())
            report = cmd_validate(load(in_path, in, "", false));
        else if (factor->parsed())
            report = cmd_factor(load_morphism(in_path, in, "factor"));
        else if (stalk->parsed())
            report = cmd_stalk(load(in_path, in, ""), at);
        else if (supp->parsed())
            report = cmd_support(load_object(in_path, in, "", "support"));
        else if (cc->parsed())
            report = cmd_cc(load_object(in_path, in, "", "cc"));
        else if (phi->parsed())
            report = cmd_phi(load(in_path, in, ""));
        else if (hom->parsed() || iso->parsed()) {
            auto p = load_object(source, in, "source", hom->parsed() ? "hom" : "iso");
            auto q = load_object(target, in, "target", hom->parsed() ? "hom" : "iso");
            if (p.ring() != q.ring())
                throw InputError("target: 'ring' is " + q.ring().tag() + " but the source is over " + p.ring().tag());
            if (p.branches() != q.branches())
                throw InputError("target: 'branches' differs from the source");
            report = hom->parsed() ? cmd_hom(p, q)
                                   : cmd_iso(p, q, trials ? trials : default_isomorphism_trials, default_seed());
        } else if (check->parsed()) {
            FuzzOptions options;
            options.suite = suite;
            options.trials = trials ? trials : 1000;
            options.ring = Ring::parse(ring_tag);
            options.max_dim = max_dim;
            options.seed = default_seed();
            report = cmd_check(options);
        } else {
            report = cmd_gallery(name, gallery_ring ? Ring::parse(*gallery_ring) : Ring::integers(), facts);
        }

        std::string text = json && !(gal->parsed() && !facts) ? dump(report.json) : report.text;
        if (!out_path.empty()) {
            std::ofstream file(out_path, std::ios::binary);
            if (!file)
                throw InputError("--out: cannot write '" + out_path + "'");
            file << text;
        } else {
            out << text;
        }
        return report.code;
    } catch (const ViolationError& v) {
        err << "violation: " << one_line(violation_text(v.violation)) << "\n";
        return ExitViolation;
    } catch (const InputError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return ExitUsage;
    } catch (const UnsupportedRingError& e) {
        err << "error: ring: " << one_line(e.what()) << "\n";
        return ExitUsage;
    } catch (const GalleryError& e) {
        err << "gallery mismatch: " << one_line(e.what()) << "\n";
        return ExitViolation;
    }
}

}  // namespace pervcalc::cli
