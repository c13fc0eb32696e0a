// Arithmetic in the finite chain ring O/p^d (O = Z_l[zeta_l], pi = zeta - 1),
// Smith normal form over it, and Poincare-series rank inversion.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "arithtop/words.hpp"  // i64

namespace arithtop {

/// Ring context for O/p^d. Elements are polynomials in pi of degree < l-1
/// with integer coefficients mod l^M, M = ceil(d/(l-1)) + 1; the defining
/// relation is Phi_l(1 + pi) = 0. For l = 2 this is Z/2^d with pi = -2.
class ChainRing {
  public:
    /// Element handle; meaningful only with its ring.
    struct Elt {
        std::vector<i64> c;  // coefficient of pi^k at index k, size l-1
        friend bool operator==(const Elt&, const Elt&) = default;
    };

    ChainRing(int l, int d);

    [[nodiscard]] int l() const { return l_; }
    [[nodiscard]] int d() const { return d_; }
    [[nodiscard]] i64 coeff_modulus() const { return mod_; }

    [[nodiscard]] Elt zero() const { return Elt{std::vector<i64>(static_cast<std::size_t>(l_ - 1), 0)}; }
    [[nodiscard]] Elt one() const { return from_int(1); }
    [[nodiscard]] Elt pi() const;
    [[nodiscard]] Elt from_int(i64 k) const;
    [[nodiscard]] Elt from_digits(const std::vector<int>& digits) const;

    [[nodiscard]] Elt add(const Elt& a, const Elt& b) const;
    [[nodiscard]] Elt sub(const Elt& a, const Elt& b) const;
    [[nodiscard]] Elt neg(const Elt& a) const;
    [[nodiscard]] Elt mul(const Elt& a, const Elt& b) const;

    /// pi-adic valuation, capped at d (the zero element has valuation d).
    [[nodiscard]] int valuation(const Elt& a) const;
    /// Exact division by pi (requires valuation >= 1).
    [[nodiscard]] Elt div_pi(const Elt& a) const;
    /// Inverse of a unit (valuation 0).
    [[nodiscard]] Elt unit_inverse(const Elt& a) const;

    /// Canonical pi-adic digits c_0..c_{d-1} in {0..l-1}.
    [[nodiscard]] std::vector<int> digits(const Elt& a) const;
    [[nodiscard]] bool equal(const Elt& a, const Elt& b) const { return digits(a) == digits(b); }
    [[nodiscard]] bool is_zero(const Elt& a) const { return valuation(a) >= d_; }

  private:
    int l_, d_, M_;
    i64 mod_;
    std::vector<i64> phi_;  // Phi_l(1+x) coefficients, monic degree l-1
    void reduce(std::vector<i64>& p) const;
};

/// Dense matrix over one ChainRing.
struct ChainMatrix {
    const ChainRing* ring = nullptr;
    int rows = 0, cols = 0;
    std::vector<ChainRing::Elt> a;

    ChainMatrix() = default;
    ChainMatrix(const ChainRing& r, int rr, int cc)
        : ring(&r), rows(rr), cols(cc), a(static_cast<std::size_t>(rr) * cc, r.zero()) {}
    ChainRing::Elt& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    [[nodiscard]] const ChainRing::Elt& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }
};

/// Elementary divisors as pi-valuations v_1 <= v_2 <= ...; a valuation of d
/// encodes the zero divisor (pi^infinity truncates losslessly at d).
struct ElementaryDivisors {
    std::vector<int> valuations;
    int d = 0;
};

ElementaryDivisors snf(const ChainMatrix& M);

/// #\{i : v_i >= d\} - 1. Throws if the count is zero (inconsistent input).
int e_d_from_divisors(const ElementaryDivisors& div, int d);

struct RankSequence {
    std::vector<i64> a;  // a_1..a_D
};

/// Solve prod_{k<=D} (1-t^k)^{a_k} = f(t) mod t^{D+1} degree by degree.
/// f given by coefficients f[0..], f[0] must be 1.
RankSequence zeta_rank_inversion(const std::vector<i64>& f, int D);

/// Expand prod (1-t^k)^{a_k} mod t^{D+1} (the round-trip check).
std::vector<i64> expand_rank_product(const RankSequence& ranks, int D);

}  // namespace arithtop
