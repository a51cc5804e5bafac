#pragma once

#include <string>

#include "polyq/arith.hpp"
#include "polyq/bigint.hpp"

namespace polyq {

/// The coefficient field F_q, q = p^r, for odd prime p. Elements are coded
/// as integers in [0, q): the code's base-p digits are the coefficients of
/// the element written in the power basis of the conductor root. r = 1 needs
/// no conductor and reduces to plain F_p arithmetic.
class Fq {
public:
    Fq(u64 p, u64 r, std::vector<u64> conductor = {});

    u64 p() const { return p_; }
    u64 r() const { return r_; }
    u64 q() const { return q_; }
    const std::vector<u64>& conductor() const { return conductor_; }

    u64 add(u64 a, u64 b) const;
    u64 sub(u64 a, u64 b) const;
    u64 neg(u64 a) const;
    u64 mul(u64 a, u64 b) const;
    u64 inv(u64 a) const;
    u64 pow(u64 a, u64 e) const;

private:
    u64 p_;
    u64 r_;
    u64 q_;
    std::vector<u64> conductor_;          // monic irreducible over F_p, degree r
    std::vector<std::vector<u64>> red_;   // digits of alpha^{r+k} mod conductor
};

/// Polynomial over F_q: element codes, ascending degree, trailing zeros
/// trimmed (zero polynomial = empty vector).
using FqPoly = std::vector<u64>;

FqPoly fq_poly_trim(FqPoly a);
bool fq_poly_is_zero(const FqPoly& a);
FqPoly fq_poly_add(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fq_poly_sub(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fq_poly_mul(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fq_poly_scale(const Fq& F, const FqPoly& a, u64 c);
std::pair<FqPoly, FqPoly> fq_poly_divmod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fq_poly_mod(const Fq& F, const FqPoly& a, const FqPoly& b);
FqPoly fq_poly_gcd(const Fq& F, FqPoly a, FqPoly b);  // monic
FqPoly fq_poly_pow_mod(const Fq& F, FqPoly base, const BigInt& e, const FqPoly& mod);
bool fq_poly_irreducible(const Fq& F, const FqPoly& f);

/// Encode a polynomial of degree < max_terms as sum coeff_i * q^i.
u64 fq_poly_encode(const Fq& F, const FqPoly& a);
FqPoly fq_poly_decode(const Fq& F, u64 index);

/// Lexicographically smallest monic irreducible of degree n over F_q,
/// comparing coefficient tuples from the leading end down (equivalently:
/// smallest base-q encoding).
FqPoly find_irreducible(const Fq& F, u64 n);

/// Wire format: comma-separated ascending coefficients; each F_q coefficient
/// is semicolon-separated F_p digits ("1;2" = 1 + 2*alpha).
FqPoly fq_poly_parse(const Fq& F, const std::string& text);
std::string fq_poly_format(const Fq& F, const FqPoly& a);

/// The ring F_q[X]/(P) for a monic irreducible P of degree n >= 2, with
/// arithmetic mod P and mod P^2.
class FieldRing {
public:
    FieldRing(Fq field, FqPoly modulus);

    const Fq& field() const { return fq_; }
    const FqPoly& modulus() const { return P_; }
    u64 degree() const { return n_; }
    u64 size() const { return size_; }  // q^n

    struct Quotient {
        FqPoly value;
        bool zero_map = false;  // set when p | w
    };

    /// q_{P,w}(A) = (A^w - A^{w q^n})/P mod P, A reduced mod P^2 first.
    /// The division by P must be exact; a nonzero remainder throws.
    Quotient quotient(FqPoly A, u64 w) const;

    /// q_P(A) = (A^{q^n - 1} - 1)/P mod P for gcd(A, P) = 1, zero when P | A.
    FqPoly fermat(FqPoly A) const;

private:
    Fq fq_;
    FqPoly P_;
    FqPoly P2_;
    u64 n_;
    u64 size_;
};

FieldRing make_field_ring(u64 p, u64 r, const std::vector<u64>& conductor, const FqPoly& P);

struct ImageKernelStats {
    u64 image_size = 0;
    u64 zero_fiber_size = 0;
    bool relation_ok = true;  // q_{P,w}(A) == w A^{w-1} q_{P,1}(A) for every A
};

/// Exhaustive statistics of q_{P,w} over all A with deg(A) < n.
/// Requires q^n <= 10^6.
ImageKernelStats image_kernel_stats(const FieldRing& ring, u64 w);

}  // namespace polyq
