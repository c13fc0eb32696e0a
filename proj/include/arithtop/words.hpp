// Freely reduced words in a free group and integer group-ring elements.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arithtop {

using i64 = std::int64_t;

struct Letter {
    int gen;   // 1-based generator index
    int sign;  // +1 or -1
};

/// A freely reduced word in generators x_1, x_2, ...
/// Stored run-length compressed as (generator, nonzero exponent) with
/// adjacent runs on distinct generators; the empty word is the identity.
class FreeWord {
  public:
    FreeWord() = default;

    static FreeWord generator(int g, i64 exp = 1);
    static FreeWord from_letters(const std::vector<Letter>& letters);

    [[nodiscard]] bool empty() const { return runs_.empty(); }
    [[nodiscard]] i64 length() const;  // letter count
    [[nodiscard]] const std::vector<std::pair<int, i64>>& runs() const { return runs_; }
    [[nodiscard]] std::vector<Letter> letters() const;

    [[nodiscard]] int max_generator() const;
    [[nodiscard]] i64 exponent_sum(int g) const;

    friend bool operator==(const FreeWord&, const FreeWord&) = default;
    friend auto operator<=>(const FreeWord& u, const FreeWord& v) { return u.runs_ <=> v.runs_; }

  private:
    std::vector<std::pair<int, i64>> runs_;
    void push_run(int g, i64 e);
    friend FreeWord multiply(const FreeWord&, const FreeWord&);
    friend FreeWord invert(const FreeWord&);
    friend FreeWord power(const FreeWord&, i64);
};

FreeWord multiply(const FreeWord& u, const FreeWord& v);
FreeWord invert(const FreeWord& w);
FreeWord power(const FreeWord& w, i64 n);

/// u v u^-1 v^-1
FreeWord commutator(const FreeWord& u, const FreeWord& v);
/// u w u^-1
FreeWord conjugate(const FreeWord& u, const FreeWord& w);

/// Text form: whitespace separated `x<k>`, `x<k>^-1`, `x<k>^<m>`; "1" or the
/// empty string denote the identity.
FreeWord parse_word(const std::string& text);
std::string to_string(const FreeWord& w);

/// Rank context. Words do not carry their rank; a FreeGroup validates indices
/// so words from different ranks cannot be mixed silently.
class FreeGroup {
  public:
    explicit FreeGroup(int rank) : rank_(rank) {
        if (rank < 0) throw std::invalid_argument("FreeGroup: negative rank");
    }
    [[nodiscard]] int rank() const { return rank_; }
    void check(const FreeWord& w) const {
        if (w.max_generator() > rank_)
            throw std::invalid_argument("word uses generator beyond rank " + std::to_string(rank_));
    }
    [[nodiscard]] FreeWord parse(const std::string& text) const {
        FreeWord w = parse_word(text);
        check(w);
        return w;
    }
    [[nodiscard]] FreeWord reduce(const std::vector<Letter>& letters) const {
        for (const auto& l : letters)
            if (l.gen < 1 || l.gen > rank_)
                throw std::invalid_argument("letter index out of range");
        return FreeWord::from_letters(letters);
    }

  private:
    int rank_;
};

/// Finite integer combination of reduced words; keys reduced, values nonzero.
class GroupRing {
  public:
    GroupRing() = default;
    explicit GroupRing(const FreeWord& w, i64 c = 1) { add(w, c); }
    static GroupRing one() { return GroupRing(FreeWord{}, 1); }

    void add(const FreeWord& w, i64 c);
    [[nodiscard]] const std::map<FreeWord, i64>& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }

    /// Sum of coefficients (augmentation Z[F] -> Z).
    [[nodiscard]] i64 augmentation() const;

    GroupRing& operator+=(const GroupRing& o);
    GroupRing& operator-=(const GroupRing& o);
    friend GroupRing operator+(GroupRing a, const GroupRing& b) { return a += b; }
    friend GroupRing operator-(GroupRing a, const GroupRing& b) { return a -= b; }
    friend GroupRing operator*(const GroupRing& a, const GroupRing& b);
    friend GroupRing operator*(i64 c, GroupRing a);
    friend bool operator==(const GroupRing&, const GroupRing&) = default;

  private:
    std::map<FreeWord, i64> terms_;
};

}  // namespace arithtop
