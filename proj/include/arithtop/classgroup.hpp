// Brute-force narrow class group oracle via binary quadratic forms, genus
// checks, and the comparison against the T_S^(d) rank predictions.
#pragma once

#include <string>
#include <vector>

#include "arithtop/primeinv.hpp"
#include "arithtop/words.hpp"

namespace arithtop {

struct QuadForm {
    i64 a = 0, b = 0, c = 0;
    [[nodiscard]] i64 discriminant() const { return b * b - 4 * a * c; }
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

struct AbelianGroupStructure {
    std::vector<i64> invariant_factors;  // d_1 | d_2 | ... , each > 1
    [[nodiscard]] i64 order() const {
        i64 h = 1;
        for (i64 d : invariant_factors) h *= d;
        return h;
    }
};

bool is_fundamental_discriminant(i64 D);

/// Reduce a form of discriminant D (definite or indefinite branch).
QuadForm reduce_form(QuadForm f, i64 D);
/// Dirichlet composition, returned reduced.
QuadForm compose_forms(QuadForm f1, QuadForm f2, i64 D);
/// Proper equivalence: same reduced form (D < 0) or same rho-cycle (D > 0).
bool equivalent_forms(QuadForm f, QuadForm g, i64 D);
QuadForm principal_form_of(i64 D);

/// Narrow class group of the quadratic order of fundamental discriminant D,
/// as the form class group: reduced-form cycles for D > 0, reduced positive
/// definite forms for D < 0, with Dirichlet composition.
AbelianGroupStructure narrow_class_group(i64 D);

/// l-part of the invariant factors.
AbelianGroupStructure sylow_part(const AbelianGroupStructure& g, i64 l);
inline AbelianGroupStructure two_sylow(const AbelianGroupStructure& g, i64 l = 2) {
    return sylow_part(g, l);
}

struct GenusReport {
    int n_ramified = 0;
    int two_rank = 0;
    bool ok = false;  // two_rank == n_ramified - 1
};

/// Checks the genus-theory 2-rank for D > 0 with odd prime factors = 1 mod 4.
GenusReport genus_rank_check(i64 D);

struct OracleComparison {
    std::vector<int> predicted_e;  // e_1..e_dmax from T_S^(d)
    std::vector<int> oracle_e;     // read off the oracle's l-Sylow exponents
    AbelianGroupStructure oracle_sylow;
    bool pass = false;
};

/// e_d prediction vs the form-class oracle on D = p_1...p_n.
OracleComparison predict_vs_oracle(const PrimeSet& S, int d_max);

}  // namespace arithtop
