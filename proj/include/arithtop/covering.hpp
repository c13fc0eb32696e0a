// Hilbert decomposition law for finite coverings (e/f/r bookkeeping) and
// transfer-kernel (capitulation) computations for finite permutation groups.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "arithtop/classgroup.hpp"  // AbelianGroupStructure
#include "arithtop/words.hpp"

namespace arithtop {

using Perm = std::vector<int>;  // images of 0..n-1

Perm perm_identity(int n);
Perm perm_mul(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);
bool is_permutation(const Perm& p);

/// Monodromy data of a degree-n covering: generator permutations plus the
/// designated peripheral pair (inertia tau, Frobenius sigma).
struct FiniteAction {
    int degree = 0;
    std::map<std::string, Perm> gens;  // must contain "tau" and "sigma"

    [[nodiscard]] const Perm& tau() const { return gens.at("tau"); }
    [[nodiscard]] const Perm& sigma() const { return gens.at("sigma"); }
};

FiniteAction action_from_json_text(const std::string& text);

/// Validates degree/permutations, transitivity of the full action, and
/// normality of <tau> in <tau, sigma>.
void validate_action(const FiniteAction& act);

struct OrbitData {
    std::vector<int> points;
    int e = 0, f = 0;
};

struct Decomposition {
    int n = 0;
    std::vector<OrbitData> orbits;  // r = orbits.size()
    [[nodiscard]] int r() const { return static_cast<int>(orbits.size()); }
    [[nodiscard]] bool identity_holds() const {
        int s = 0;
        for (const auto& o : orbits) s += o.e * o.f;
        return s == n;
    }
};

/// Orbits of <tau, sigma>; f_j = number of tau-blocks in the orbit (the
/// sigma-orbit length on blocks), e_j = orbit size / f_j.
Decomposition decompose(const FiniteAction& act);

struct GaloisReport {
    bool regular = false;
    int e = 0, f = 0, r = 0;
    i64 inertia_order = 0, decomposition_order = 0;
    bool quotient_cyclic = false;
    std::vector<std::string> violations;
    [[nodiscard]] bool ok() const { return regular && violations.empty(); }
};

/// Regular (Galois) case: verifies #I = e, #D = ef, n = efr, and that D/I is
/// cyclic generated by sigma.
GaloisReport galois_check(const FiniteAction& act);

/// Finite group from permutation generators; element set materialized (the
/// order must stay small).
class PermGroup {
  public:
    explicit PermGroup(std::vector<Perm> generators, std::size_t max_order = 100000);

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] i64 order() const { return static_cast<i64>(elems_.size()); }
    [[nodiscard]] const std::vector<Perm>& elements() const { return elems_; }
    [[nodiscard]] bool contains(const Perm& p) const { return index_.count(p) > 0; }
    [[nodiscard]] int index_of(const Perm& p) const { return index_.at(p); }

  private:
    int degree_ = 0;
    std::vector<Perm> elems_;
    std::map<Perm, int> index_;
};

struct TransferResult {
    i64 group_order = 0;
    i64 subgroup_order = 0;
    i64 index = 0;  // d = [Gamma : H]
    i64 kernel_order = 0;
    AbelianGroupStructure kernel;
    bool divisible_by_index = false;
};

/// Transfer V : Gamma/Gamma' -> H/H' by the coset-representative formula;
/// requires Gamma' <= H (i.e. Gamma/H abelian).
TransferResult transfer_kernel(const std::vector<Perm>& group_gens,
                               const std::vector<Perm>& subgroup_gens);

}  // namespace arithtop
