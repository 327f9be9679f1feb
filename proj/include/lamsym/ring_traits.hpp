#pragma once

/**
 * @file ring_traits.hpp
 * @brief The small vocabulary the polynomial templates need from a
 * coefficient ring.
 *
 * A coefficient type R is usable in HomPoly/TensorPoly when these overloads
 * exist for it:
 *   zero_like(x)       additive identity in the same ring as x
 *   one_like(x)        multiplicative identity (rings only)
 *   scaled(x, n)       x * n for an integer n
 *   divided(x, n)      x / n for a non-zero integer n
 *   residue_prime(x)   p for p-adic rings (0 for characteristic-zero rings)
 * plus +, - and unary -. Ring actions additionally need R * R.
 */

#include <concepts>

#include <gmpxx.h>

#include "padic.hpp"

namespace lamsym {

inline Padic zero_like(const Padic& x) { return Padic::zero(x.prime(), x.precision()); }
inline Padic one_like(const Padic& x) { return Padic::one(x.prime(), x.precision()); }
/// An integer embedded with enough digits that it never limits x's relative precision.
inline Padic exact_integer_like(const Padic& x, const mpz_class& n) {
    long digits = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), static_cast<int>(x.prime())));
    long prec = std::max(x.precision(), x.relative_precision()) + digits + 1;
    return Padic::from_integer(x.prime(), prec, n);
}
inline Padic scaled(const Padic& x, const mpz_class& n) { return x * exact_integer_like(x, n); }
inline Padic divided(const Padic& x, const mpz_class& n) { return x / exact_integer_like(x, n); }
inline long residue_prime(const Padic& x) { return x.prime(); }

inline mpq_class zero_like(const mpq_class&) { return 0; }
inline mpq_class one_like(const mpq_class&) { return 1; }
inline mpq_class scaled(const mpq_class& x, const mpz_class& n) { return x * mpq_class(n); }
inline mpq_class divided(const mpq_class& x, const mpz_class& n) {
    mpq_class r = x / mpq_class(n);
    r.canonicalize();
    return r;
}
inline long residue_prime(const mpq_class&) { return 0; }

template <class R>
concept AdditiveCoefficient = requires(const R& a, const R& b, const mpz_class& n) {
    { a + b } -> std::convertible_to<R>;
    { a - b } -> std::convertible_to<R>;
    { -a } -> std::convertible_to<R>;
    { zero_like(a) } -> std::convertible_to<R>;
    { scaled(a, n) } -> std::convertible_to<R>;
    { divided(a, n) } -> std::convertible_to<R>;
    { residue_prime(a) } -> std::convertible_to<long>;
};

template <class R>
concept RingCoefficient = AdditiveCoefficient<R> && requires(const R& a, const R& b) {
    { a * b } -> std::convertible_to<R>;
    { one_like(a) } -> std::convertible_to<R>;
};

} // namespace lamsym
