#include "superlattice/angular.hpp"

#include "superlattice/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace superlattice {

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

HalfInt HalfInt::parse(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw InputError("not an angular momentum value: '" + text + "'");
        }
        if (used != s.size()) throw InputError("not an angular momentum value: '" + text + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return HalfInt(parse_int(text));
    if (text.substr(slash + 1) != "2")
        throw InputError("only halves are allowed as denominators: '" + text + "'");
    const int twice = parse_int(text.substr(0, slash));
    if (twice % 2 == 0) throw InputError("use an integer instead of '" + text + "'");
    return from_twice(twice);
}

namespace angular {
namespace {

constexpr int kTableSize = 2 * kMaxTwiceJ + 2;  // 4 * jmax + 2 entries

const std::array<long double, kTableSize>& log_factorial_table() {
    static const auto table = [] {
        std::array<long double, kTableSize> t{};
        t[0] = 0.0L;
        for (int n = 1; n < kTableSize; ++n) t[n] = t[n - 1] + std::log(static_cast<long double>(n));
        return t;
    }();
    return table;
}

void require_magnitude(HalfInt j) {
    if (j.twice() < 0) throw InputError("negative angular momentum " + j.str());
    if (j.twice() > kMaxTwiceJ)
        throw InputError("angular momentum " + j.str() + " exceeds the supported maximum 50");
}

void require_projection(HalfInt j, HalfInt m) {
    if (std::abs(m.twice()) > j.twice())
        throw InputError("projection " + m.str() + " exceeds j = " + j.str());
    if ((j.twice() - m.twice()) % 2 != 0)
        throw InputError("projection " + m.str() + " has the wrong parity for j = " + j.str());
}

// ln of the triangle coefficient Delta(abc), arguments doubled.
long double log_delta(int a2, int b2, int c2) {
    return 0.5L * (log_factorial((a2 + b2 - c2) / 2) + log_factorial((a2 - b2 + c2) / 2) +
                   log_factorial((-a2 + b2 + c2) / 2) - log_factorial((a2 + b2 + c2) / 2 + 1));
}

}  // namespace

long double log_factorial(int n) {
    if (n < 0 || n >= kTableSize) throw InputError("factorial argument out of table range");
    return log_factorial_table()[static_cast<std::size_t>(n)];
}

bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3) {
    const int a = j1.twice(), b = j2.twice(), c = j3.twice();
    if (a < 0 || b < 0 || c < 0) return false;
    if ((a + b + c) % 2 != 0) return false;
    return c >= std::abs(a - b) && c <= a + b;
}

double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
    require_magnitude(j1);
    require_magnitude(j2);
    require_magnitude(j3);
    require_projection(j1, m1);
    require_projection(j2, m2);
    require_projection(j3, m3);

    if ((m1 + m2 + m3).twice() != 0) return 0.0;
    if (!triangle_ok(j1, j2, j3)) return 0.0;
    const int a = j1.twice(), b = j2.twice(), c = j3.twice();
    if (m1.twice() == 0 && m2.twice() == 0 && m3.twice() == 0 && ((a + b + c) / 2) % 2 != 0)
        return 0.0;

    const int x1 = m1.twice(), x2 = m2.twice();
    // Racah: sum over k of (-1)^k / [k! (j3-j2+k+m1)! (j3-j1+k-m2)! (j1+j2-j3-k)! (j1-k-m1)! (j2-k+m2)!]
    const int n1 = (c - b + x1) / 2;
    const int n2 = (c - a - x2) / 2;
    const int n3 = (a + b - c) / 2;
    const int n4 = (a - x1) / 2;
    const int n5 = (b + x2) / 2;
    const int kmin = std::max({0, -n1, -n2});
    const int kmax = std::min({n3, n4, n5});

    const long double log_pre =
        log_delta(a, b, c) +
        0.5L * (log_factorial((a + x1) / 2) + log_factorial((a - x1) / 2) + log_factorial((b + x2) / 2) +
                log_factorial((b - x2) / 2) + log_factorial((c + m3.twice()) / 2) +
                log_factorial((c - m3.twice()) / 2));

    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        const long double log_den = log_factorial(k) + log_factorial(n1 + k) + log_factorial(n2 + k) +
                                    log_factorial(n3 - k) + log_factorial(n4 - k) + log_factorial(n5 - k);
        const long double term = std::exp(log_pre - log_den);
        sum += (k % 2 == 0) ? term : -term;
    }
    // overall phase (-1)^(j1 - j2 - m3)
    const int phase = (a - b - m3.twice()) / 2;
    return static_cast<double>((phase % 2 == 0) ? sum : -sum);
}

double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt l1, HalfInt l2, HalfInt l3) {
    for (HalfInt j : {j1, j2, j3, l1, l2, l3}) require_magnitude(j);
    if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, l2, l3) || !triangle_ok(l1, j2, l3) ||
        !triangle_ok(l1, l2, j3))
        return 0.0;

    const int a = j1.twice(), b = j2.twice(), c = j3.twice();
    const int d = l1.twice(), e = l2.twice(), f = l3.twice();
    const long double log_pre = log_delta(a, b, c) + log_delta(a, e, f) + log_delta(d, b, f) + log_delta(d, e, c);

    // triad sums and column-pair sums (all integers after halving)
    const int t1 = (a + b + c) / 2, t2 = (a + e + f) / 2, t3 = (d + b + f) / 2, t4 = (d + e + c) / 2;
    const int p1 = (a + b + d + e) / 2, p2 = (b + c + e + f) / 2, p3 = (c + a + f + d) / 2;
    const int tmin = std::max({t1, t2, t3, t4});
    const int tmax = std::min({p1, p2, p3});

    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        const long double log_term = log_pre + log_factorial(t + 1) -
                                     (log_factorial(t - t1) + log_factorial(t - t2) + log_factorial(t - t3) +
                                      log_factorial(t - t4) + log_factorial(p1 - t) + log_factorial(p2 - t) +
                                      log_factorial(p3 - t));
        const long double term = std::exp(log_term);
        sum += (t % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

}  // namespace angular
}  // namespace superlattice
