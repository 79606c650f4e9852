#include "pervcalc/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pervcalc {

namespace {

struct CanonicalOrder {
    Module module;
    std::vector<std::size_t> positions;
};

// Reads the canonical module off a Smith form of a presentation on `generators`
// generators: free positions first, then the non-unit invariant factors.
CanonicalOrder canonical_order(const Ring& ring, const SmithForm& snf, std::size_t generators)
{
    CanonicalOrder out;
    std::vector<Integer> factors;
    for (std::size_t i = snf.rank; i < generators; ++i)
        out.positions.push_back(i);
    std::size_t free_rank = out.positions.size();
    for (std::size_t i = 0; i < snf.rank; ++i) {
        const Scalar& d = snf.diagonal(i, i);
        if (ring.is_unit(d))
            continue;
        out.positions.push_back(i);
        factors.push_back(d.get_num());
    }
    out.module = ring.is_field() ? Module::free(ring, free_rank) : Module::integer(free_rank, std::move(factors));
    return out;
}

Matrix with_relations(const Presentation& ambient, const Matrix& generators)
{
    if (generators.rows() != ambient.generators)
        throw InputError("generators have " + std::to_string(generators.rows()) + " coordinates, ambient module has " +
                         std::to_string(ambient.generators));
    std::vector<Matrix> parts{generators, ambient.relations};
    return reduce(ambient.ring, Matrix::hstack(parts, ambient.generators));
}

void check_presentation(const Presentation& p)
{
    if (p.relations.rows() != p.generators)
        throw InputError("presentation: relation matrix has " + std::to_string(p.relations.rows()) + " rows for " +
                         std::to_string(p.generators) + " generators");
    for (std::size_t i = 0; i < p.relations.rows(); ++i)
        for (std::size_t j = 0; j < p.relations.cols(); ++j)
            if (!p.ring.contains(p.ring.reduce(p.relations(i, j))))
                throw InputError("presentation: entry outside the ring");
}

}  // namespace

std::optional<Matrix> Subquotient::basis_coordinates(const Matrix& elements) const
{
    Matrix w = reduce(ring_, span_left_ * elements);
    std::size_t r = span_diagonal_.size();
    Matrix y(r, elements.cols());
    for (std::size_t c = 0; c < elements.cols(); ++c)
        for (std::size_t i = 0; i < w.rows(); ++i) {
            if (i >= r) {
                if (w(i, c) != 0)
                    return std::nullopt;
                continue;
            }
            if (!ring_.divides(span_diagonal_[i], w(i, c)))
                return std::nullopt;
            y(i, c) = ring_.divmod(w(i, c), span_diagonal_[i]).first;
        }
    return y;
}

Matrix Subquotient::coordinates(const Matrix& elements) const
{
    auto y = basis_coordinates(elements);
    if (!y)
        throw InputError("element does not lie in the submodule");
    Matrix z = reduce(ring_, relation_left_ * *y);
    return module_.reduce_elements(z.select_rows(order_));
}

bool Subquotient::contains(const Matrix& elements) const { return basis_coordinates(elements).has_value(); }

Subquotient submodule(const Presentation& ambient, const Matrix& generators)
{
    check_presentation(ambient);
    const Ring& ring = ambient.ring;
    Matrix spanning = with_relations(ambient, generators);
    auto span = smith_normal_form(ring, spanning, {.track_left = true, .track_left_inverse = true, .track_right = false});

    Subquotient sq;
    sq.ring_ = ring;
    sq.span_left_ = std::move(span.left);
    sq.span_diagonal_ = span.invariant_factors();
    std::size_t r = span.rank;

    Matrix basis(ambient.generators, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < ambient.generators; ++i)
            basis(i, j) = ring.mul(span.left_inverse(i, j), sq.span_diagonal_[j]);

    Matrix relation_coords(r, 0);
    if (ambient.relations.cols() > 0)
        relation_coords = *sq.basis_coordinates(reduce(ring, ambient.relations));
    auto rel = smith_normal_form(ring, relation_coords, {.track_left = true, .track_left_inverse = true, .track_right = false});
    auto order = canonical_order(ring, rel, r);
    sq.module_ = std::move(order.module);
    sq.order_ = std::move(order.positions);
    sq.relation_left_ = std::move(rel.left);
    sq.inclusion_ = reduce(ring, basis * rel.left_inverse.select_columns(sq.order_));
    return sq;
}

QuotientModule quotient(const Presentation& ambient, const Matrix& generators)
{
    check_presentation(ambient);
    const Ring& ring = ambient.ring;
    auto snf = smith_normal_form(ring, with_relations(ambient, generators),
                                 {.track_left = true, .track_left_inverse = true, .track_right = false});
    auto order = canonical_order(ring, snf, ambient.generators);
    QuotientModule q;
    q.module = std::move(order.module);
    q.projection = q.module.reduce_elements(snf.left.select_rows(order.positions));
    q.lifts = snf.left_inverse.select_columns(order.positions);
    return q;
}

Subquotient kernel_of(const Presentation& domain, const Presentation& codomain, const Matrix& f)
{
    if (f.rows() != codomain.generators || f.cols() != domain.generators)
        throw InputError("kernel: map shape does not match its presentations");
    std::vector<Matrix> parts{f, codomain.relations};
    Matrix joint = reduce(domain.ring, Matrix::hstack(parts, codomain.generators));
    Matrix null = kernel_basis(domain.ring, joint);
    return submodule(domain, null.block(0, 0, domain.generators, null.cols()));
}

Module canonical_decomposition(const Ring& ring, const Matrix& presentation)
{
    return canonical_decomposition(Presentation{ring, presentation.rows(), presentation});
}

Module canonical_decomposition(const Presentation& presentation)
{
    check_presentation(presentation);
    auto snf = smith_normal_form(presentation.ring, reduce(presentation.ring, presentation.relations),
                                 {.track_left = false, .track_left_inverse = false, .track_right = false});
    return canonical_order(presentation.ring, snf, presentation.generators).module;
}

MapFactorization map_factorization(const ModuleMap& f)
{
    auto dom = Presentation::of(f.domain());
    auto cod = Presentation::of(f.codomain());
    Subquotient ker = kernel_of(dom, cod, f.matrix());
    Subquotient img = submodule(cod, f.matrix());
    QuotientModule coker = quotient(cod, f.matrix());

    ModuleMap kernel_inclusion(ker.module(), f.domain(), ker.inclusion());
    ModuleMap coimage(f.domain(), img.module(), img.coordinates(f.matrix()));
    ModuleMap image_inclusion(img.module(), f.codomain(), img.inclusion());
    ModuleMap cokernel_projection(f.codomain(), coker.module, coker.projection);
    return MapFactorization{std::move(ker),         std::move(img),    std::move(coker),
                            std::move(kernel_inclusion), std::move(coimage), std::move(image_inclusion),
                            std::move(cokernel_projection)};
}

namespace {

std::size_t field_rank(const ModuleMap& f)
{
    return smith_normal_form(f.ring(), f.matrix(), {.track_left = false, .track_left_inverse = false, .track_right = false})
        .rank;
}

}  // namespace

Module kernel(const ModuleMap& f)
{
    if (f.ring().is_field())
        return Module::free(f.ring(), f.domain().generators() - field_rank(f));
    return kernel_of(Presentation::of(f.domain()), Presentation::of(f.codomain()), f.matrix()).module();
}

Module image(const ModuleMap& f)
{
    if (f.ring().is_field())
        return Module::free(f.ring(), field_rank(f));
    return submodule(Presentation::of(f.codomain()), f.matrix()).module();
}

Module cokernel(const ModuleMap& f)
{
    auto cod = Presentation::of(f.codomain());
    return canonical_decomposition(Presentation{cod.ring, cod.generators, with_relations(cod, f.matrix())});
}

bool is_injective(const ModuleMap& f) { return kernel(f).is_zero(); }
bool is_surjective(const ModuleMap& f) { return cokernel(f).is_zero(); }

bool is_isomorphism(const ModuleMap& f)
{
    // A surjective endomorphism of a finitely generated module is injective.
    if (f.is_endomorphism())
        return is_surjective(f);
    return is_injective(f) && is_surjective(f);
}

DirectSum direct_sum(const std::vector<Module>& parts)
{
    auto presentation = Presentation::direct_sum(parts);
    auto q = quotient(presentation, Matrix(presentation.generators, 0));
    DirectSum out;
    out.sum = q.module;
    std::size_t offset = 0;
    for (const auto& m : parts) {
        std::size_t g = m.generators();
        out.injections.emplace_back(m, q.module, q.projection.block(0, offset, q.module.generators(), g));
        out.projections.emplace_back(q.module, m, q.lifts.block(offset, 0, g, q.module.generators()));
        offset += g;
    }
    return out;
}

namespace {

// Pairwise coprime base b_1, ..., b_s such that every input is a product of
// powers of the b_k.
std::vector<Integer> coprime_base(std::vector<Integer> values)
{
    std::vector<Integer> base;
    for (auto& v : values)
        if (v > 1)
            base.push_back(v);
    for (bool changed = true; changed;) {
        changed = false;
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (std::size_t i = 0; i < base.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                Integer g = gcd(base[i], base[j]);
                if (g == 1)
                    continue;
                Integer a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(j));
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
                for (Integer* x : {&g, &a, &b})
                    if (*x > 1)
                        base.push_back(*x);
                changed = true;
            }
    }
    return base;
}

unsigned multiplicity(Integer value, const Integer& base)
{
    unsigned e = 0;
    while (mpz_divisible_p(value.get_mpz_t(), base.get_mpz_t())) {
        value /= base;
        ++e;
    }
    return e;
}

}  // namespace

bool module_leq(const Module& m, const Module& n)
{
    if (!(m.ring() == n.ring()))
        throw InputError("module_leq: ring mismatch (" + m.ring().tag() + " vs " + n.ring().tag() + ")");
    if (m.free_rank() > n.free_rank())
        return false;
    if (m.ring().is_field())
        return true;
    std::vector<Integer> all = m.invariant_factors();
    all.insert(all.end(), n.invariant_factors().begin(), n.invariant_factors().end());
    for (const auto& b : coprime_base(all)) {
        std::map<unsigned, int> balance;
        for (const auto& d : n.invariant_factors())
            if (unsigned e = multiplicity(d, b))
                ++balance[e];
        for (const auto& d : m.invariant_factors())
            if (unsigned e = multiplicity(d, b))
                if (--balance[e] < 0)
                    return false;
    }
    return true;
}

std::vector<bool> exactness_check(const std::vector<ModuleMap>& sequence)
{
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k)
        if (!(sequence[k].codomain() == sequence[k + 1].domain()))
            throw InputError("exactness_check: map " + std::to_string(k) + " does not compose with map " +
                             std::to_string(k + 1));
    std::vector<bool> exact;
    for (std::size_t k = 0; k + 1 < sequence.size(); ++k) {
        const auto& in = sequence[k];
        const auto& out = sequence[k + 1];
        if (!compose(in, out).is_zero()) {
            exact.push_back(false);
            continue;
        }
        const Module& middle = in.codomain();
        auto ker = kernel_of(Presentation::of(middle), Presentation::of(out.codomain()), out.matrix());
        std::vector<Matrix> parts{in.matrix(), middle.relations()};
        exact.push_back(in_span(middle.ring(), Matrix::hstack(parts, middle.generators()), ker.inclusion()));
    }
    return exact;
}

Module eigen_kernel(const ModuleMap& f, const Scalar& lambda)
{
    if (!f.ring().is_field())
        throw UnsupportedRingError("eigen_kernel needs a field, got " + f.ring().display_name());
    if (!f.is_endomorphism())
        throw InputError("eigen_kernel: map is not an endomorphism");
    return kernel(subtract(ModuleMap::scalar(f.domain(), lambda), f));
}

Scalar characteristic_polynomial_at(const ModuleMap& f, const Scalar& x)
{
    if (!f.ring().is_field())
        throw UnsupportedRingError("characteristic polynomial needs a field, got " + f.ring().display_name());
    if (!f.is_endomorphism())
        throw InputError("characteristic polynomial: map is not an endomorphism");
    Matrix m = Matrix::scalar(f.domain().generators(), x) - f.matrix();
    return f.ring().reduce(determinant(m));
}

namespace {

struct HomSystem {
    Ring ring = Ring::rationals();
    std::vector<std::size_t> offset;
    std::size_t n_vars = 0;
    /// n_vars x k; the columns generate the solutions.
    Matrix solutions;
};

HomSystem hom_system(const std::vector<HomUnknown>& unknowns, const std::vector<HomEquation>& equations)
{
    if (unknowns.empty())
        throw InputError("solve_hom_constraints: no unknowns");
    const Ring ring = unknowns.front().domain.ring();

    HomSystem out;
    out.ring = ring;
    auto& offset = out.offset;
    auto& n_vars = out.n_vars;
    for (const auto& u : unknowns) {
        if (!(u.domain.ring() == ring) || !(u.codomain.ring() == ring))
            throw InputError("solve_hom_constraints: ring mismatch among unknowns");
        offset.push_back(n_vars);
        n_vars += u.domain.generators() * u.codomain.generators();
    }

    // Each unknown must also be well defined: X * relations(domain) vanishes in the codomain.
    std::vector<HomEquation> all = equations;
    if (!ring.is_field())
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            const auto& dom = unknowns[u].domain;
            const auto& cod = unknowns[u].codomain;
            if (dom.invariant_factors().empty())
                continue;
            all.push_back({cod, dom.invariant_factors().size(),
                           {{u, Matrix::identity(cod.generators()), dom.relations()}}});
        }

    std::size_t n_rows = 0, n_slack = 0;
    for (const auto& eq : all) {
        if (!(eq.target.ring() == ring))
            throw InputError("solve_hom_constraints: equation target ring mismatch");
        n_rows += eq.target.generators() * eq.columns;
        n_slack += eq.target.invariant_factors().size() * eq.columns;
        for (const auto& t : eq.terms) {
            if (t.unknown >= unknowns.size())
                throw InputError("solve_hom_constraints: term names unknown " + std::to_string(t.unknown));
            const auto& u = unknowns[t.unknown];
            if (t.left.rows() != eq.target.generators() || t.left.cols() != u.codomain.generators() ||
                t.right.rows() != u.domain.generators() || t.right.cols() != eq.columns)
                throw InputError("solve_hom_constraints: inconsistent shapes in a term of unknown " +
                                 std::to_string(t.unknown));
        }
    }

    Matrix system(n_rows, n_vars + n_slack);
    Scalar product;
    std::size_t row0 = 0, slack0 = n_vars;
    for (const auto& eq : all) {
        std::size_t tg = eq.target.generators();
        for (const auto& t : eq.terms) {
            const auto& u = unknowns[t.unknown];
            std::size_t ucols = u.domain.generators();
            for (std::size_t a = 0; a < tg; ++a)
                for (std::size_t i = 0; i < t.left.cols(); ++i) {
                    const Scalar& l = t.left(a, i);
                    if (sgn(l) == 0)
                        continue;
                    for (std::size_t j = 0; j < ucols; ++j)
                        for (std::size_t b = 0; b < eq.columns; ++b)
                            if (sgn(t.right(j, b)) != 0) {
                                mpq_mul(product.get_mpq_t(), l.get_mpq_t(), t.right(j, b).get_mpq_t());
                                Scalar& cell = system(row0 + a * eq.columns + b, offset[t.unknown] + i * ucols + j);
                                mpq_add(cell.get_mpq_t(), cell.get_mpq_t(), product.get_mpq_t());
                            }
                }
        }
        const auto& rel = eq.target.invariant_factors();
        for (std::size_t b = 0; b < eq.columns; ++b)
            for (std::size_t k = 0; k < rel.size(); ++k)
                system(row0 + (eq.target.free_rank() + k) * eq.columns + b, slack0 + b * rel.size() + k) = -Scalar(rel[k]);
        row0 += tg * eq.columns;
        slack0 += rel.size() * eq.columns;
    }

    Matrix null = kernel_basis(ring, reduce(ring, system));
    out.solutions = null.block(0, 0, n_vars, null.cols());
    return out;
}

std::vector<ModuleMap> unpack(const std::vector<HomUnknown>& unknowns, const HomSystem& sys, const Matrix& columns,
                              std::size_t g)
{
    std::vector<ModuleMap> maps;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto& dom = unknowns[u].domain;
        const auto& cod = unknowns[u].codomain;
        Matrix x(cod.generators(), dom.generators());
        for (std::size_t i = 0; i < cod.generators(); ++i)
            for (std::size_t j = 0; j < dom.generators(); ++j)
                x(i, j) = columns(sys.offset[u] + i * dom.generators() + j, g);
        maps.emplace_back(dom, cod, x);
    }
    return maps;
}

}  // namespace

HomSolution solve_hom_constraints(const std::vector<HomUnknown>& unknowns, const std::vector<HomEquation>& equations)
{
    HomSystem sys = hom_system(unknowns, equations);
    const Ring& ring = sys.ring;
    HomSolution out;
    if (ring.is_field()) {
        // The null basis from the reduced echelon form is already canonical.
        out.module = Module::free(ring, sys.solutions.cols());
        for (std::size_t g = 0; g < sys.solutions.cols(); ++g)
            out.generators.push_back(unpack(unknowns, sys, sys.solutions, g));
        return out;
    }

    // Entries in a torsion row of a codomain only matter modulo its order.
    std::vector<Matrix> zero_maps;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto& cod = unknowns[u].codomain;
        std::size_t ucols = unknowns[u].domain.generators();
        for (std::size_t i = cod.free_rank(); i < cod.generators(); ++i)
            for (std::size_t j = 0; j < ucols; ++j) {
                Matrix e(sys.n_vars, 1);
                e(sys.offset[u] + i * ucols + j, 0) = Scalar(cod.order(i));
                zero_maps.push_back(std::move(e));
            }
    }
    Presentation ambient{ring, sys.n_vars, Matrix::hstack(zero_maps, sys.n_vars)};
    Subquotient hom = submodule(ambient, sys.solutions);
    out.module = hom.module();
    for (std::size_t g = 0; g < hom.module().generators(); ++g)
        out.generators.push_back(unpack(unknowns, sys, hom.inclusion(), g));
    return out;
}

std::vector<std::vector<ModuleMap>> hom_constraint_generators(const std::vector<HomUnknown>& unknowns,
                                                              const std::vector<HomEquation>& equations)
{
    HomSystem sys = hom_system(unknowns, equations);
    std::vector<std::vector<ModuleMap>> out;
    for (std::size_t g = 0; g < sys.solutions.cols(); ++g) {
        auto maps = unpack(unknowns, sys, sys.solutions, g);
        bool zero = true;
        for (const auto& m : maps)
            zero = zero && m.is_zero();
        if (!zero)
            out.push_back(std::move(maps));
    }
    return out;
}

}  // namespace pervcalc
