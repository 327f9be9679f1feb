#pragma once

/**
 * @file corpus.hpp
 * @brief Seeded random corpora. Every draw goes through the raw
 * mt19937_64 output (reduced by modulo), so a seed fixes the corpus on
 * every platform; std distributions are avoided for that reason.
 */

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "esh.hpp"
#include "euler.hpp"
#include "iwasawa.hpp"
#include "measure.hpp"
#include "padic.hpp"
#include "polyspace.hpp"

namespace lamsym {

class Corpus {
public:
    explicit Corpus(std::uint64_t seed) : rng_(seed) {}

    /// Uniform-enough integer in [0, n) for n > 0.
    mpz_class below(const mpz_class& n) {
        mpz_class x = 0;
        std::size_t words = mpz_sizeinbase(n.get_mpz_t(), 2) / 64 + 2;
        for (std::size_t i = 0; i < words; ++i) {
            mpz_class w;
            std::uint64_t r = rng_();
            mpz_import(w.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
            x = (x << 64) + w;
        }
        return mod_floor(x, n);
    }

    long below(long n) { return static_cast<long>(rng_() % static_cast<std::uint64_t>(n)); }
    long between(long lo, long hi) { return lo + below(hi - lo + 1); }

    mpz_class residue(long p, long M) { return below(ipow(p, M)); }

    mpz_class unit_residue(long p, long M) {
        for (;;) {
            mpz_class u = residue(p, M);
            if (u % p != 0) return u;
        }
    }

    Padic padic(long p, long M) { return Padic::from_integer(p, M, residue(p, M)); }
    Padic unit(long p, long M) { return Padic::from_integer(p, M, unit_residue(p, M)); }

    Point point(long p, long M) { return {residue(p, M), residue(p, M)}; }

    OMeasure o_measure(long p, long M, int max_atoms) {
        OMeasure mu(p, M);
        long n = between(1, max_atoms);
        for (long i = 0; i < n; ++i) mu.add(padic(p, M), point(p, M));
        return mu;
    }

    IwasawaElement iwasawa(long p, long M, long m, int max_terms) {
        IwasawaElement x = IwasawaElement::zero(p, M, m);
        long n = between(1, max_terms);
        for (long i = 0; i < n; ++i) x.add_term(unit_residue(p, m), padic(p, M));
        return x;
    }

    /// Lambda-valued atoms with truncation level m = M.
    LambdaMeasure lambda_measure(long p, long M, int max_atoms, int max_terms = 3) {
        LambdaMeasure mu(p, M, M);
        long n = between(1, max_atoms);
        for (long i = 0; i < n; ++i) mu.add(iwasawa(p, M, M, max_terms), point(p, M));
        return mu;
    }

    /// (a b; p c' d) with d a unit, rejecting singular draws.
    MonoidMatrix sigma0(long p, long M) {
        for (;;) {
            Padic a = padic(p, M);
            Padic b = padic(p, M);
            Padic c = Padic::from_integer(p, M, mpz_class(p) * residue(p, M - 1));
            Padic d = unit(p, M);
            if ((a * d - b * c).is_zero()) continue;
            return MonoidMatrix(a, b, c, d);
        }
    }

    MatrixPair sigma0_pair(long p, long M) {
        MonoidMatrix g1 = sigma0(p, M);
        return {g1, sigma0(p, M)};
    }

    /// Determinant-one element of Iw(p): a = (1 + b c) / d.
    MonoidMatrix iwahori(long p, long M) {
        Padic b = padic(p, M);
        Padic c = Padic::from_integer(p, M, mpz_class(p) * residue(p, M - 1));
        Padic d = unit(p, M);
        Padic a = ((Padic::one(p, M) + b * c) / d).with_precision(M);
        return MonoidMatrix(a, b, c, d);
    }

    /// Product of `length` elementary matrices (1 t; 0 1) and (1 0; t 1), |t| <= 3.
    MonoidMatrix sl2z(long p, long M, int length) {
        mpz_class a = 1, b = 0, c = 0, d = 1;
        for (int i = 0; i < length; ++i) {
            long t = between(-3, 3);
            if (below(2) == 0) {
                b += a * t;
                d += c * t;
            } else {
                a += b * t;
                c += d * t;
            }
        }
        return MonoidMatrix::relaxed_integers(p, M, a, b, c, d);
    }

    TensorPoly<Padic> tensor(long p, long M, int n1, int n2) {
        TensorPoly<Padic> P(n1, n2, Padic::zero(p, M));
        for (int j = 0; j <= n1; ++j)
            for (int l = 0; l <= n2; ++l) P.at(j, l) = padic(p, M);
        return P;
    }

    TensorPoly<mpq_class> rational_tensor(int n, long bound) {
        TensorPoly<mpq_class> P(n, n, mpq_class(0));
        for (int j = 0; j <= n; ++j)
            for (int l = 0; l <= n; ++l) P.at(j, l) = between(-bound, bound);
        return P;
    }

    /// Hecke data at small primes; psi = +-1, k in [2, 6], a in [-30, 30].
    HeckeDatum hecke(SplitType split) {
        static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
        HeckeDatum d;
        d.ell = primes[below(8)];
        d.a = between(-30, 30);
        d.psi = below(2) == 0 ? 1 : -1;
        d.k = between(2, 6);
        d.split = split;
        return d;
    }

    /// Non-zero twist value: +-1 or a small rational.
    mpq_class eta() {
        switch (below(3)) {
        case 0: return 1;
        case 1: return -1;
        default: {
            mpq_class q(between(1, 5), between(1, 5));
            q.canonicalize();
            return below(2) == 0 ? q : mpq_class(-q);
        }
        }
    }

private:
    std::mt19937_64 rng_;
};

} // namespace lamsym
