// Arithmetic side of the dictionary: power residue symbols, mod-l linking
// numbers, Redei triple symbols, arithmetic Milnor tables, the Redei matrix,
// the higher linking matrix T_S^(d), and the Gauss-sum identity.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arithtop/chainring.hpp"
#include "arithtop/magnus.hpp"
#include "arithtop/words.hpp"

namespace arithtop {

struct PrimeSet {
    int l = 2;
    std::vector<i64> primes;
    int e_s = 1;  // max e with p_i = 1 mod l^e for all i

    PrimeSet(int l, std::vector<i64> primes);  // validates and computes e_s
    [[nodiscard]] int n() const { return static_cast<int>(primes.size()); }
};

/// PrimeSet JSON: { "l": 2, "primes": [13, 61, 937] }.
PrimeSet primeset_from_json_text(const std::string& text);

/// Euler criterion; 0 when p | a.
int legendre(i64 a, i64 p);

bool is_prime(i64 n);
i64 smallest_primitive_root(i64 p);
i64 mod_pow(i64 base, i64 exp, i64 mod);
i64 sqrt_mod(i64 a, i64 p);  // Tonelli-Shanks; requires (a/p) = 1

/// Index k in Z/m with a^((p-1)/m) = g^(k(p-1)/m) mod p, g the smallest
/// positive primitive root. Requires p = 1 mod m and gcd(a, p) = 1.
i64 power_residue_index(i64 a, i64 p, i64 m);

/// lk_l(p_i, p_j) = power_residue_index(p_j, p_i, l); not symmetric for l > 2.
i64 lk_l(i64 p_i, i64 p_j, int l);

struct RedeiWitness {
    i64 a = 0, b = 0, c = 0;  // a^2 = p1 b^2 + p2 c^2, b even, a+b = 1 mod 4
};

struct RedeiResult {
    int symbol = 0;  // +1 or -1
    RedeiWitness witness;
    int quartic_distinct_roots = 0;  // oracle route root count
};

/// Redei triple symbol [p1,p2,p3], computed from a normalized solution of
/// a^2 = p1 b^2 + p2 c^2 and cross-checked against the splitting of
/// x^4 - 2a x^2 + p2 c^2 mod p3. Preconditions: p_i = 1 mod 4, pairwise
/// distinct, all pairwise Legendre symbols +1.
RedeiResult redei_triple(i64 p1, i64 p2, i64 p3, i64 search_cap = 0);

/// Default / env-overridable search cap (ARITHTOP_SEARCH_CAP).
i64 redei_search_cap();

enum class Provenance { computed, user_supplied };

struct ArithMilnorEntry {
    i64 value = 0;       // representative of mu mod l^precision
    int precision = 0;   // known modulo l^precision
    Provenance provenance = Provenance::computed;
};

/// mu_m values keyed by multi-index; entries carry their own precision since
/// pairs are computable to higher l-power than triples.
class ArithMilnorTable {
  public:
    ArithMilnorTable(int l, int n, int e_s) : l_(l), n_(n), e_s_(e_s) {}
    [[nodiscard]] int l() const { return l_; }
    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int e_s() const { return e_s_; }
    [[nodiscard]] bool contains(const MultiIndex& I) const { return entries_.count(I) > 0; }
    [[nodiscard]] const ArithMilnorEntry& at(const MultiIndex& I) const;
    [[nodiscard]] const std::map<MultiIndex, ArithMilnorEntry>& entries() const { return entries_; }
    void set(const MultiIndex& I, ArithMilnorEntry e) { entries_[I] = e; }

  private:
    int l_, n_, e_s_;
    std::map<MultiIndex, ArithMilnorEntry> entries_;
};

/// Pairs from power residue indices (mod m); for l = 2, triples from Redei
/// symbols where the Delta-condition holds. Entries beyond that come from the
/// user table only.
ArithMilnorTable arith_milnor_table(const PrimeSet& S, i64 m,
                                    const std::optional<std::string>& user_table_json = std::nullopt);

/// The user-supplied mu-hat table: { "m": 8, "entries": { "1 2 1": 3, ... } }.
void merge_user_table(ArithMilnorTable& table, const std::string& json_text);

/// Redei matrix over F_l and the 4-rank prediction e_2 = n - 1 - rank.
struct RedeiMatrix {
    int l = 2;
    std::vector<std::vector<int>> m;  // over F_l
    int rank = 0;
    int e2 = 0;
};
RedeiMatrix redei_matrix(const PrimeSet& S);

/// T_S^(d) over O/p^d; throws when a needed entry is missing or carries too
/// little precision for the target level d.
ChainMatrix t_s_matrix(const ArithMilnorTable& table, const ChainRing& ring);

struct ClassGroupPrediction {
    int l = 2;
    int n = 0;
    std::vector<int> e;                    // e_1..e_dmax
    std::vector<int> invariant_exponents;  // a_i with H(l) = sum O/p^{a_i}, when determined
    bool complete = false;                 // e reached 0 so the a_i are pinned
};

ClassGroupPrediction class_group_prediction(const PrimeSet& S, int d_max,
                                            const std::optional<std::string>& user_table_json = std::nullopt);

/// Gauss-sum route to the quadratic symbol: (sum_x zeta^{x^2})^{q-1} computed
/// in F_q[x]/Phi_p(x). Pinned convention: the value equals legendre(q, p).
int gauss_sum_symbol(i64 p, i64 q);

}  // namespace arithtop
