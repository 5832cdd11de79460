/**
 * @file field.hpp
 * @brief Exact ground fields: the rationals (GMP) and prime fields GF(p).
 *
 * Fields are small context objects. Elements are plain values of
 * `K::value_type` and all arithmetic goes through the context, so a prime
 * field whose characteristic is only known at run time costs nothing per
 * element.
 */
#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace koszul {

struct FieldSpec {
    enum class Kind { rationals, prime_field };

    Kind kind = Kind::rationals;
    std::uint64_t characteristic = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint64_t p);

    std::string to_string() const {
        return kind == Kind::rationals ? "Q" : "GF(" + std::to_string(characteristic) + ")";
    }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    return {Kind::prime_field, p};
}

template <class K>
concept Field = std::copy_constructible<K> &&
    requires(const K& k, const typename K::value_type& a, const typename K::value_type& b,
             const mpq_class& q) {
        { k.zero() } -> std::same_as<typename K::value_type>;
        { k.one() } -> std::same_as<typename K::value_type>;
        { k.add(a, b) } -> std::same_as<typename K::value_type>;
        { k.sub(a, b) } -> std::same_as<typename K::value_type>;
        { k.mul(a, b) } -> std::same_as<typename K::value_type>;
        { k.neg(a) } -> std::same_as<typename K::value_type>;
        { k.inv(a) } -> std::same_as<typename K::value_type>;
        { k.is_zero(a) } -> std::same_as<bool>;
        { k.equal(a, b) } -> std::same_as<bool>;
        { k.from_rational(q) } -> std::same_as<typename K::value_type>;
        { k.to_string(a) } -> std::same_as<std::string>;
        { k.spec() } -> std::same_as<FieldSpec>;
    };

/// The field of rational numbers with arbitrary-precision numerators and denominators.
class Rationals {
public:
    using value_type = mpq_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inv(const value_type& a) const {
        if (sgn(a) == 0) throw std::domain_error("inverse of zero");
        return 1 / a;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }
    value_type from_rational(const mpq_class& q) const {
        value_type r = q;
        r.canonicalize();
        return r;
    }
    value_type from_integer(long n) const { return value_type(n); }
    std::string to_string(const value_type& a) const { return a.get_str(); }
    FieldSpec spec() const { return FieldSpec::rationals(); }
};

/// GF(p) for a prime p < 2^31; elements are canonical residues in [0, p).
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime(p))
            throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
        if (p >= (std::uint64_t{1} << 31))
            throw std::invalid_argument("characteristic too large");
    }

    std::uint64_t characteristic() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type inv(value_type a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        // Fermat: a^(p-2)
        value_type result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    value_type from_integer(const mpz_class& n) const {
        mpz_class r = n % mpz_class(static_cast<unsigned long>(p_));
        if (r < 0) r += static_cast<unsigned long>(p_);
        return r.get_ui();
    }
    value_type from_integer(long n) const { return from_integer(mpz_class(n)); }

    value_type from_rational(const mpq_class& q) const {
        value_type den = from_integer(q.get_den());
        if (den == 0)
            throw std::domain_error("denominator " + q.get_den().get_str() +
                                    " vanishes in GF(" + std::to_string(p_) + ")");
        return mul(from_integer(q.get_num()), inv(den));
    }
    std::string to_string(value_type a) const { return std::to_string(a); }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

private:
    std::uint64_t p_;
};

static_assert(Field<Rationals>);
static_assert(Field<PrimeField>);

/// Calls `fn` with the field context matching `spec`.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rationals) return std::forward<Fn>(fn)(Rationals{});
    return std::forward<Fn>(fn)(PrimeField{spec.characteristic});
}

}  // namespace koszul
