#include "pervcalc/module.hpp"

#include <sstream>

namespace pervcalc {

Module Module::integer(std::size_t free_rank, std::vector<Integer> invariant_factors)
{
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (invariant_factors[i] < 2)
            throw InputError("invariant_factors: entry " + invariant_factors[i].get_str() + " is below 2");
        if (i > 0 && !mpz_divisible_p(invariant_factors[i].get_mpz_t(), invariant_factors[i - 1].get_mpz_t()))
            throw InputError("invariant_factors: " + invariant_factors[i - 1].get_str() + " does not divide " +
                             invariant_factors[i].get_str() + " (divisibility chain)");
    }
    return Module(Ring::integers(), free_rank, std::move(invariant_factors));
}

Integer Module::order(std::size_t generator) const
{
    if (generator < free_rank_)
        return 0;
    return torsion_.at(generator - free_rank_);
}

Matrix Module::relations() const
{
    Matrix r(generators(), torsion_.size());
    for (std::size_t k = 0; k < torsion_.size(); ++k)
        r(free_rank_ + k, k) = Scalar(torsion_[k]);
    return r;
}

Scalar Module::reduce_entry(std::size_t row, const Scalar& x) const
{
    Scalar y = ring_.reduce(x);
    if (row < free_rank_)
        return y;
    const Integer& d = torsion_[row - free_rank_];
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), y.get_num().get_mpz_t(), d.get_mpz_t());
    return Scalar(r);
}

Matrix Module::reduce_elements(Matrix elements) const
{
    if (elements.rows() != generators())
        throw InputError("element has " + std::to_string(elements.rows()) + " coordinates, module has " +
                         std::to_string(generators()) + " generators");
    for (std::size_t i = 0; i < elements.rows(); ++i)
        for (std::size_t j = 0; j < elements.cols(); ++j) {
            Scalar& x = elements(i, j);
            ring_.reduce_in_place(x);
            if (i >= free_rank_ && sgn(x) != 0) {
                const Integer& d = torsion_[i - free_rank_];
                mpz_fdiv_r(x.get_num_mpz_t(), x.get_num_mpz_t(), d.get_mpz_t());
            }
        }
    return elements;
}

std::string Module::to_string() const
{
    if (ring_.is_field()) {
        if (free_rank_ == 0)
            return "0";
        return ring_.display_name() + (free_rank_ == 1 ? "" : "^" + std::to_string(free_rank_));
    }
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    if (free_rank_ > 0) {
        out << "Z" << (free_rank_ == 1 ? "" : "^" + std::to_string(free_rank_));
        first = false;
    }
    for (const auto& d : torsion_) {
        out << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    return out.str();
}

Presentation Presentation::direct_sum(const std::vector<Module>& parts)
{
    if (parts.empty())
        throw InputError("direct sum of no modules needs a ring");
    std::vector<Matrix> rels;
    std::size_t gens = 0;
    for (const auto& m : parts) {
        if (!(m.ring() == parts.front().ring()))
            throw InputError("direct sum: ring mismatch");
        rels.push_back(m.relations());
        gens += m.generators();
    }
    return {parts.front().ring(), gens, Matrix::block_diagonal(rels)};
}

ModuleMap::ModuleMap(Module domain, Module codomain, Matrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain))
{
    if (!(domain_.ring() == codomain_.ring()))
        throw InputError("module map: domain ring " + domain_.ring().tag() + " differs from codomain ring " +
                         codomain_.ring().tag());
    if (matrix.rows() != codomain_.generators() || matrix.cols() != domain_.generators())
        throw InputError("module map: matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) +
                         ", expected " + std::to_string(codomain_.generators()) + "x" +
                         std::to_string(domain_.generators()));
    matrix_ = codomain_.reduce_elements(std::move(matrix));
}

ModuleMap ModuleMap::zero(const Module& domain, const Module& codomain)
{
    return ModuleMap(domain, codomain, Matrix(codomain.generators(), domain.generators()));
}

ModuleMap ModuleMap::identity(const Module& m) { return scalar(m, Scalar(1)); }

ModuleMap ModuleMap::scalar(const Module& m, const Scalar& value)
{
    return ModuleMap(m, m, Matrix::scalar(m.generators(), m.ring().reduce(value)));
}

bool ModuleMap::is_well_defined() const
{
    if (ring().is_field())
        return true;
    for (std::size_t j = domain_.free_rank(); j < domain_.generators(); ++j) {
        Integer d = domain_.order(j);
        for (std::size_t i = 0; i < codomain_.generators(); ++i)
            if (codomain_.reduce_entry(i, Scalar(d) * matrix_(i, j)) != 0)
                return false;
    }
    return true;
}

ModuleMap compose(const ModuleMap& first, const ModuleMap& second)
{
    if (!(first.codomain() == second.domain()))
        throw InputError("compose: codomain " + first.codomain().to_string() + " does not match domain " +
                         second.domain().to_string());
    return ModuleMap(first.domain(), second.codomain(), second.matrix() * first.matrix());
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g)
{
    if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain()))
        throw InputError("add: maps have different shapes");
    return ModuleMap(f.domain(), f.codomain(), f.matrix() + g.matrix());
}

ModuleMap subtract(const ModuleMap& f, const ModuleMap& g)
{
    if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain()))
        throw InputError("subtract: maps have different shapes");
    return ModuleMap(f.domain(), f.codomain(), f.matrix() - g.matrix());
}

ModuleMap scale(const Scalar& s, const ModuleMap& f) { return ModuleMap(f.domain(), f.codomain(), s * f.matrix()); }

}  // namespace pervcalc
