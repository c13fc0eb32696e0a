// Link data model and topology-side invariants: Wirtinger presentations from
// PD codes, longitudes, linking and Milnor data, nilpotent representations,
// the Alexander pipeline, cyclic branched cover orders, and the higher
// linking matrix T_L^(d).
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arithtop/chainring.hpp"
#include "arithtop/laurent.hpp"
#include "arithtop/magnus.hpp"
#include "arithtop/words.hpp"

namespace arithtop {

/// One crossing: edge labels (a,b,c,d) read counterclockwise starting at the
/// incoming under-edge, plus the crossing sign. Sign +1 means the over-strand
/// runs d -> b (see docs/FORMATS.md for the worked conventions).
struct PDCrossing {
    std::array<int, 4> e;
    int sign;
};

struct PDCode {
    std::vector<PDCrossing> crossings;
    int free_loops = 0;  // crossingless unknot components
};

/// Text format: one `X[a,b,c,d] <sign>` line per crossing, `O` for a
/// crossingless loop, `#` comments.
PDCode parse_pd_text(std::istream& in);
PDCode parse_pd_text(const std::string& text);

struct UnderPass {
    int over_arc;  // 0-based arc index of the over-strand
    int sign;
    int to_arc;  // arc entered after passing under
};

/// Wirtinger data: one generator per arc, one relator per crossing, plus the
/// per-component traversal (the sequence of under-passes) needed to read off
/// longitudes.
struct WirtingerPresentation {
    int n_components = 0;
    int n_generators = 0;                    // = number of arcs
    std::vector<FreeWord> relators;          // x_out * (x_over^e x_in x_over^-e)^-1
    std::vector<int> component_of_arc;       // 0-based component per arc
    std::vector<int> base_arc_of_component;  // chosen base meridian arc
    std::vector<std::vector<UnderPass>> traversal;  // per component, walk order
};

WirtingerPresentation pd_to_wirtinger(const PDCode& pd);

/// Meridian-longitude data: longitudes y_1..y_n as words in the base
/// meridians x_1..x_n, with the peripheral relators [x_i, y_i].
struct LinkPresentation {
    int n = 0;
    std::vector<FreeWord> longitudes;
    std::vector<FreeWord> relators;

    static LinkPresentation from_longitudes(std::vector<FreeWord> ys);
};

/// Rewrite arc generators into base meridians to the given nilpotency depth
/// and read off zero-framed longitudes. Depth D yields words correct modulo
/// the (D+1)-st lower central subgroup, enough for degree-D Milnor data.
LinkPresentation wirtinger_longitudes(const WirtingerPresentation& w, int depth);

/// lk(i,j) = degree-1 Magnus coefficient of X_i in y_j; throws on a framing
/// violation (nonzero diagonal).
std::vector<std::vector<i64>> linking_numbers(const LinkPresentation& lp);

struct NilpotentRep {
    int r = 0;
    i64 modulus = 0;  // Delta(I); 0 = integers
    MultiIndex index;
    std::vector<std::string> violations;
    std::vector<std::vector<i64>> longitude_matrix;  // rho_I(y_{i_r})
    i64 corner = 0;                                  // its (1,r) entry
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// rho_I as matrices over Z/Delta(I); verifies the relators map to the
/// identity and the corner of rho_I(y_{i_r}) equals mubar(I).
NilpotentRep nilpotent_rep(const LinkPresentation& lp, const MultiIndex& I, i64 delta,
                           i64 expected_mubar);

/// Evaluate rho_I(w): upper unitriangular r x r with (s,t) entry the Magnus
/// coefficient of X_{i_s}..X_{i_{t-1}} in w, mod delta.
std::vector<std::vector<i64>> nilpotent_matrix(const FreeWord& w, const MultiIndex& I, int rank,
                                               i64 delta);

struct AlexanderMatrix {
    int rows = 0, cols = 0;
    std::vector<LaurentPoly> a;
    LaurentPoly& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    [[nodiscard]] const LaurentPoly& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * cols + j];
    }
};

/// (relators x generators) matrix of Fox derivatives pushed through x_i -> t.
AlexanderMatrix alexander_matrix(const WirtingerPresentation& w);

/// Knot case: gcd of the (n-1)-minors with one column deleted, normalized.
LaurentPoly alexander_polynomial(const WirtingerPresentation& w);
/// Same, but deleting the given column (for well-definedness checks).
LaurentPoly alexander_polynomial_dropping(const WirtingerPresentation& w, int drop_col);

/// |H_1| of the n-fold cyclic branched cover: |prod_{zeta^n=1} delta(zeta)|,
/// 0 encoding the infinite case.
i64 branched_cover_order(const LaurentPoly& delta, int n);

struct IwasawaFit {
    std::vector<int> valuations;  // v_n for n = 1..n_max
    i64 lambda = 0, mu = 0, nu = 0;
    std::vector<i64> residuals;  // v_n - (lambda n + mu p^n + nu), all points
    bool exact_tail = false;     // the last three points satisfy the fit exactly
    bool mu_positive = false;
};

/// p-adic valuations of branched_cover_order(delta, p^n) fitted against
/// lambda*n + mu*p^n + nu on the tail.
IwasawaFit iwasawa_growth_check(const LaurentPoly& delta, int p, int n_max);

/// The d-th linking matrix T_L^(d) over O/p^d built from a complete table.
ChainMatrix t_l_matrix(const MilnorTable& table, const ChainRing& ring);

struct CoverRanks {
    int n = 0;
    std::vector<int> e;  // e_1..e_d_max
    std::vector<int> divisor_valuations;  // of T^(d_max)
};

/// e_d for d = 1..d_max via SNF of T_L^(d); checks e_1 = n-1 and that the
/// last elementary divisor vanishes.
CoverRanks cover_homology_ranks(const LinkPresentation& lp, int l, int d_max);

/// Link JSON: { "n": .., "longitudes": [..] } or { "pd": [[a,b,c,d],..],
/// "signs": [..], "free_loops": k }.
struct LinkInput {
    std::optional<PDCode> pd;
    std::optional<LinkPresentation> presentation;
};
LinkInput link_from_json_text(const std::string& text);

}  // namespace arithtop
