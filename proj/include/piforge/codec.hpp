#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace piforge {

// k-ary digit strings.  Digit 1 is the most significant: a string
// x_1 x_2 ... x_m denotes the natural number [x] = sum_u x_u * k^(m-u).
struct KaryString {
    std::vector<int> digits;  // each in {0, ..., base-1}
    int base = 2;

    std::size_t size() const { return digits.size(); }
    bool operator==(const KaryString&) const = default;
};

// Policy over a family with a counter/partner split: the policy string
// x . y where x covers states s_1..s_m and y covers s'_1..s'_m.
struct SplitPolicy {
    KaryString x;
    KaryString y;
    bool operator==(const SplitPolicy&) const = default;
};

// [x] as a natural number.  Callers keep m and k small enough that the
// value fits in 64 bits (guarded).
std::uint64_t numeral(const KaryString& x);

// First r digits of x (r may be 0: empty string, numeral 0).
KaryString prefix(const KaryString& x, std::size_t r);

// I(x): the largest 1-based index u with x_u != k-1.  Throws on (k-1)^m.
std::size_t last_non_max_index(const KaryString& x);

// Split a flat action array of length 2m into x (first m) and y (last m).
SplitPolicy split(const std::vector<int>& actions, std::size_t m, int k);
std::vector<int> join(const SplitPolicy& sp);

KaryString concat(const KaryString& a, const KaryString& b);

// Text rendering: base-36 digit characters; SplitPolicy uses a middle dot.
// Supports k <= 36, which covers every run this laboratory performs.
std::string render(const KaryString& x);
std::string render(const SplitPolicy& sp);
std::string render_flat(const std::vector<int>& actions, int k);

// Parse the rendering back (digits only / digits with one middle dot).
KaryString parse_kary(const std::string& text, int base);
SplitPolicy parse_split(const std::string& text, int base);

}  // namespace piforge
