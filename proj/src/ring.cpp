#include "pervcalc/ring.hpp"

#include <cctype>

namespace pervcalc {

namespace {

Integer mod_positive(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

Ring Ring::prime_field(std::uint64_t p)
{
    Integer pz;
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    if (p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
        throw InputError("prime field characteristic " + pz.get_str() + " is not prime");
    return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(std::string_view tag)
{
    if (tag == "q" || tag == "Q")
        return rationals();
    if (tag == "z" || tag == "Z")
        return integers();
    if (tag.size() > 3 && (tag.substr(0, 3) == "fp:" || tag.substr(0, 3) == "Fp:")) {
        auto digits = tag.substr(3);
        std::uint64_t p = 0;
        for (char ch : digits) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw InputError("ring: malformed characteristic in '" + std::string(tag) + "'");
            if (p > (UINT64_MAX - 9) / 10)
                throw InputError("ring: characteristic too large in '" + std::string(tag) + "'");
            p = p * 10 + static_cast<std::uint64_t>(ch - '0');
        }
        return prime_field(p);
    }
    throw InputError("ring: unknown ring tag '" + std::string(tag) + "' (expected q, z or fp:P)");
}

std::string Ring::tag() const
{
    switch (kind_) {
    case Kind::Rationals:
        return "q";
    case Kind::Integers:
        return "z";
    case Kind::PrimeField:
        return "fp:" + std::to_string(p_);
    }
    return "?";
}

std::string Ring::display_name() const
{
    switch (kind_) {
    case Kind::Rationals:
        return "Q";
    case Kind::Integers:
        return "Z";
    case Kind::PrimeField:
        return "F_" + std::to_string(p_);
    }
    return "?";
}

bool Ring::contains(const Scalar& x) const
{
    switch (kind_) {
    case Kind::Rationals:
        return true;
    case Kind::Integers:
        return x.get_den() == 1;
    case Kind::PrimeField:
        return x.get_den() == 1 && x >= 0 && x.get_num() < Integer(static_cast<unsigned long>(p_));
    }
    return false;
}

Scalar Ring::reduce(const Scalar& x) const
{
    switch (kind_) {
    case Kind::Rationals: {
        Scalar y = x;
        y.canonicalize();
        return y;
    }
    case Kind::Integers:
        if (x.get_den() != 1)
            throw InputError("value " + to_string(x) + " is not an integer");
        return x;
    case Kind::PrimeField: {
        Integer p(static_cast<unsigned long>(p_));
        Integer num = mod_positive(x.get_num(), p);
        if (x.get_den() == 1)
            return Scalar(num);
        Integer den = mod_positive(x.get_den(), p);
        Integer inv;
        if (den == 0 || mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw InputError("value " + to_string(x) + " has denominator divisible by " + std::to_string(p_));
        return Scalar(mod_positive(num * inv, p));
    }
    }
    return x;
}

void Ring::reduce_in_place(Scalar& x) const
{
    if (mpz_cmp_ui(x.get_den_mpz_t(), 1) == 0) {
        if (kind_ != Kind::PrimeField)
            return;
        if (sgn(x) >= 0 && mpz_cmp_ui(x.get_num_mpz_t(), p_) < 0)
            return;
    }
    x = reduce(x);
}

Scalar Ring::add(const Scalar& a, const Scalar& b) const
{
    Scalar r = a + b;
    if (kind_ == Kind::PrimeField) {
        Integer p(static_cast<unsigned long>(p_));
        if (r.get_num() >= p)
            r -= p;
    }
    return r;
}

Scalar Ring::sub(const Scalar& a, const Scalar& b) const
{
    Scalar r = a - b;
    if (kind_ == Kind::PrimeField && r < 0)
        r += Integer(static_cast<unsigned long>(p_));
    return r;
}

Scalar Ring::mul(const Scalar& a, const Scalar& b) const
{
    if (kind_ == Kind::PrimeField) {
        Integer p(static_cast<unsigned long>(p_));
        return Scalar(mod_positive(a.get_num() * b.get_num(), p));
    }
    return a * b;
}

Scalar Ring::neg(const Scalar& a) const
{
    if (kind_ == Kind::PrimeField)
        return a == 0 ? a : Scalar(Integer(static_cast<unsigned long>(p_)) - a.get_num());
    return -a;
}

Scalar Ring::inverse(const Scalar& a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero");
    switch (kind_) {
    case Kind::Rationals:
        return 1 / a;
    case Kind::Integers:
        if (abs(a) != 1)
            throw std::domain_error(to_string(a) + " is not a unit in Z");
        return a;
    case Kind::PrimeField: {
        Integer p(static_cast<unsigned long>(p_));
        Integer inv;
        mpz_invert(inv.get_mpz_t(), a.get_num().get_mpz_t(), p.get_mpz_t());
        return Scalar(inv);
    }
    }
    return a;
}

bool Ring::is_unit(const Scalar& a) const
{
    if (is_field())
        return a != 0;
    return abs(a) == 1;
}

std::pair<Scalar, Scalar> Ring::divmod(const Scalar& a, const Scalar& b) const
{
    if (is_field())
        return {mul(a, inverse(b)), Scalar(0)};
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    if (r != 0 && b < 0) {
        // floor division by a negative divisor leaves r in (b, 0]; shift into [0, |b|)
        q += 1;
        r -= b.get_num();
    }
    return {Scalar(q), Scalar(r)};
}

bool Ring::divides(const Scalar& b, const Scalar& a) const
{
    if (b == 0)
        return a == 0;
    if (is_field())
        return true;
    return mpz_divisible_p(a.get_num().get_mpz_t(), b.get_num().get_mpz_t()) != 0;
}

Scalar Ring::norm(const Scalar& a) const { return abs(a); }

Scalar Ring::normalizing_unit(const Scalar& a) const
{
    if (a == 0)
        return Scalar(1);
    if (is_field())
        return inverse(a);
    return a < 0 ? Scalar(-1) : Scalar(1);
}

std::string to_string(const Scalar& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Scalar parse_scalar(std::string_view text)
{
    auto valid_integer = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                return false;
        return true;
    };
    auto strip_plus = [](std::string_view s) { return (!s.empty() && s.front() == '+') ? s.substr(1) : s; };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
        throw InputError("malformed number '" + std::string(text) + "'");
    Integer n{std::string(strip_plus(num))};
    Integer d{std::string(den)};
    if (d == 0)
        throw InputError("zero denominator in '" + std::string(text) + "'");
    Scalar x(n, d);
    x.canonicalize();
    return x;
}

}  // namespace pervcalc
