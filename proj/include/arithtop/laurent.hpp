// Integer Laurent polynomials Z[t^±1]: the coefficient ring for Alexander
// matrices, with the gcd and resultant machinery the pipeline needs.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "arithtop/words.hpp"  // i64

namespace arithtop {

class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(i64 constant) {
        if (constant) c_[0] = constant;
    }
    static LaurentPoly monomial(i64 coeff, int exp);

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::map<int, i64>& coeffs() const { return c_; }
    [[nodiscard]] i64 coeff(int e) const;
    [[nodiscard]] int min_exp() const;
    [[nodiscard]] int max_exp() const;
    [[nodiscard]] int span_degree() const { return is_zero() ? 0 : max_exp() - min_exp(); }
    [[nodiscard]] i64 eval(i64 t) const;  // requires min_exp() >= 0 or t = +-1

    void add(int e, i64 v);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  private:
    std::map<int, i64> c_;  // exponent -> nonzero coefficient
};

std::string to_string(const LaurentPoly& p);

/// gcd over Z[t] of the underlying primitive polynomials, including content;
/// result normalized (min exponent 0, positive leading coefficient).
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Shift so the minimal exponent is 0 and the leading coefficient positive.
LaurentPoly normalize_unit(const LaurentPoly& p);

/// |Res(p, t^n - 1)| as a checked 64-bit value; 0 encodes a vanishing
/// resultant (the infinite-order case downstream). Throws on overflow.
i64 resultant_with_cyclotomic(const LaurentPoly& p, int n);

}  // namespace arithtop
