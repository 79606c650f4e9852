#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace pervcalc {

using Integer = mpz_class;
using Scalar = mpq_class;

/// Malformed or inconsistent input (shapes, ring mismatches, bad files).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The operation needs a field (or otherwise a different ring) than the one supplied.
class UnsupportedRingError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// One of the three computable base rings: Q, F_p, or Z.
///
/// Elements of every ring are carried as exact rationals. Over F_p the
/// representative is an integer in [0, p); over Z it is an integer.
class Ring {
public:
    enum class Kind { Rationals, PrimeField, Integers };

    static Ring rationals() { return Ring(Kind::Rationals, 0); }
    static Ring integers() { return Ring(Kind::Integers, 0); }
    static Ring prime_field(std::uint64_t p);

    /// Parses "q", "z" or "fp:P".
    static Ring parse(std::string_view tag);

    Kind kind() const { return kind_; }
    std::uint64_t characteristic() const { return p_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    std::string tag() const;
    std::string display_name() const;

    bool contains(const Scalar& x) const;
    /// Maps a rational into the ring's canonical representative.
    /// Throws InputError when the value has no image (non-integer over Z,
    /// denominator divisible by p over F_p).
    Scalar reduce(const Scalar& x) const;
    void reduce_in_place(Scalar& x) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inverse(const Scalar& a) const;

    bool is_unit(const Scalar& a) const;
    /// Euclidean division a = q*b + r. Over fields r is always zero; over Z
    /// the quotient is floored so 0 <= r < |b|.
    std::pair<Scalar, Scalar> divmod(const Scalar& a, const Scalar& b) const;
    bool divides(const Scalar& b, const Scalar& a) const;
    /// Size used for pivot selection: absolute value.
    Scalar norm(const Scalar& a) const;
    /// The unit u making u*a the normalized associate (positive over Z, 1 over a field).
    Scalar normalizing_unit(const Scalar& a) const;

    friend bool operator==(const Ring& x, const Ring& y) { return x.kind_ == y.kind_ && x.p_ == y.p_; }

private:
    Ring(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

/// Decimal form: "n" for integers, "n/d" otherwise.
std::string to_string(const Scalar& x);
/// Accepts "n", "-n", "n/d"; the result is normalized.
Scalar parse_scalar(std::string_view text);

}  // namespace pervcalc
