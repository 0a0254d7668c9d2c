#pragma once

#include <compare>
#include <string>

namespace superlattice {

/// Angular momentum quantum number stored as 2j, so integer and half-integer
/// values are both exact.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int integer) : twice_(2 * integer) {}

    static constexpr HalfInt from_twice(int twice) {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    /// Degeneracy 2j + 1.
    constexpr int multiplicity() const { return twice_ + 1; }

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const;

    /// Parses "1", "-1", "3/2", "-1/2".
    static HalfInt parse(const std::string& text);

private:
    int twice_ = 0;
};

namespace angular {

/// Largest j accepted by the symbol evaluators (bounded by the factorial table).
inline constexpr int kMaxTwiceJ = 100;

/// |j1 - j2| <= j3 <= j1 + j2 and j1 + j2 + j3 integral.
bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3);

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) via the Racah single sum.
///
/// Selection-rule violations (m1 + m2 + m3 != 0, broken triangle, odd
/// j1 + j2 + j3 with all m = 0) return exactly 0.0. Throws InputError for
/// |m| > j, a parity mismatch between j and m, negative j, or j > 50.
double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);

/// Wigner 6j symbol {j1 j2 j3; l1 l2 l3}. Exactly 0.0 when any of the four
/// triads fails triangle_ok.
double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt l1, HalfInt l2, HalfInt l3);

/// ln(n!) from the precomputed table; n must lie in [0, 4 * jmax + 2).
long double log_factorial(int n);

}  // namespace angular
}  // namespace superlattice
