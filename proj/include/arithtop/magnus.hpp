// Magnus embedding into truncated noncommutative power series, Fox calculus,
// and Milnor mu / mu-bar tables.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arithtop/words.hpp"

namespace arithtop {

using MultiIndex = std::vector<int>;  // generator indices, 1-based

/// Truncated power series in noncommuting X_1..X_n. Keys are monomials as
/// index sequences of length <= degree; values nonzero (reduced mod `modulus`
/// when modulus > 0, with representatives in [0, modulus)).
class NCSeries {
  public:
    NCSeries(int rank, int degree, i64 modulus = 0)
        : rank_(rank), degree_(degree), modulus_(modulus) {}

    static NCSeries one(int rank, int degree, i64 modulus = 0);

    [[nodiscard]] int rank() const { return rank_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] i64 modulus() const { return modulus_; }
    [[nodiscard]] const std::map<MultiIndex, i64>& coeffs() const { return c_; }
    [[nodiscard]] i64 coeff(const MultiIndex& m) const;

    void set(const MultiIndex& m, i64 v);
    void add(const MultiIndex& m, i64 v);

    friend NCSeries operator*(const NCSeries& a, const NCSeries& b);
    friend NCSeries operator+(NCSeries a, const NCSeries& b);
    friend NCSeries operator-(NCSeries a, const NCSeries& b);
    friend bool operator==(const NCSeries&, const NCSeries&) = default;

  private:
    int rank_;
    int degree_;
    i64 modulus_;
    std::map<MultiIndex, i64> c_;
};

/// Image of w under x_i -> 1 + X_i, truncated past `degree`.
NCSeries magnus_expand(const FreeWord& w, int rank, int degree, i64 modulus = 0);

/// Fox derivative d/dx_i, extended linearly to the group ring.
GroupRing fox_derive(const GroupRing& e, int gen);
GroupRing fox_derive(const FreeWord& w, int gen);

/// eps(d^|I| w / dx_{i_1}..dx_{i_r}); equals the Magnus coefficient of X_I.
i64 higher_fox_eps(const FreeWord& w, const MultiIndex& I);

struct MilnorEntry {
    i64 mu = 0;
    i64 delta = 0;  // nonnegative gcd generator; 0 = zero ideal (no reduction)
    i64 mubar = 0;
};

/// mu / Delta / mu-bar for every multi-index I = (i_1..i_r j), 2 <= |I| <= degree.
/// mu(I) is the coefficient of X_{i_1}..X_{i_r} in the Magnus image of y_j.
class MilnorTable {
  public:
    MilnorTable(int n, int degree, i64 modulus) : n_(n), degree_(degree), modulus_(modulus) {}

    [[nodiscard]] int n_components() const { return n_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] i64 modulus() const { return modulus_; }
    [[nodiscard]] const MilnorEntry& at(const MultiIndex& I) const;
    [[nodiscard]] bool contains(const MultiIndex& I) const { return entries_.count(I) > 0; }
    [[nodiscard]] const std::map<MultiIndex, MilnorEntry>& entries() const { return entries_; }

    void set(const MultiIndex& I, MilnorEntry e) { entries_[I] = e; }

  private:
    int n_;
    int degree_;
    i64 modulus_;
    std::map<MultiIndex, MilnorEntry> entries_;
};

/// Build the table from longitude words y_1..y_n. For modulus m > 0 the ideal
/// Delta(I) additionally contains the binomial coefficients C(binom_base, t),
/// 1 <= t <= |I| (binom_base defaults to m).
MilnorTable milnor_table(const std::vector<FreeWord>& longitudes, int degree, i64 modulus = 0,
                         i64 binom_base = 0);

struct SymmetryReport {
    std::vector<std::string> violations;
    long cyclic_checked = 0;
    long shuffle_checked = 0;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Cyclic symmetry and proper-shuffle relations on a complete table.
SymmetryReport check_symmetries(const MilnorTable& table);

/// Cyclic permutations of proper subsequences of I (the Delta(I) index set).
std::vector<MultiIndex> delta_index_set(const MultiIndex& I);

/// All proper shuffles (order-preserving interleavings) of I and J, as a
/// multiset.
std::vector<MultiIndex> proper_shuffles(const MultiIndex& I, const MultiIndex& J);

}  // namespace arithtop
