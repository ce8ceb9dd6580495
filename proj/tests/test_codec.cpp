#include <doctest.h>

#include <stdexcept>

#include "piforge/codec.hpp"

using namespace piforge;

namespace {

KaryString ks(std::initializer_list<int> digits, int base) {
    return {std::vector<int>(digits), base};
}

}  // namespace

TEST_CASE("numeral basics") {
    CHECK(numeral(ks({0, 1, 2}, 3)) == 5);
    CHECK(numeral(ks({0, 0, 0, 0}, 7)) == 0);
    CHECK(numeral(ks({4, 4, 4}, 5)) == 124);  // k^m - 1
    CHECK(numeral(ks({}, 3)) == 0);           // empty prefix
}

TEST_CASE("numeral is a bijection on small digit spaces") {
    for (int k = 2; k <= 4; ++k)
        for (int m = 1; m <= 3; ++m) {
            std::vector<bool> hit(1u << 8, false);
            KaryString x{std::vector<int>(static_cast<std::size_t>(m), 0), k};
            std::uint64_t total = 1;
            for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(k);
            for (std::uint64_t c = 0; c < total; ++c) {
                std::uint64_t v = numeral(x);
                REQUIRE(v == c);  // lexicographic enumeration matches numerals
                for (int u = m - 1; u >= 0; --u) {
                    if (++x.digits[static_cast<std::size_t>(u)] < k) break;
                    x.digits[static_cast<std::size_t>(u)] = 0;
                }
            }
        }
}

TEST_CASE("concat numeral identity") {
    auto a = ks({1, 2}, 3);
    auto b = ks({0, 2, 1}, 3);
    CHECK(numeral(concat(a, b)) == numeral(a) * 27 + numeral(b));
}

TEST_CASE("prefix") {
    auto x = ks({0, 1, 2}, 3);
    CHECK(prefix(x, 2) == ks({0, 1}, 3));
    CHECK(prefix(x, 0).digits.empty());
    CHECK(prefix(x, 3) == x);
    CHECK_THROWS_AS(prefix(x, 4), std::out_of_range);
}

TEST_CASE("last_non_max_index") {
    CHECK(last_non_max_index(ks({0, 0, 2}, 3)) == 2);
    CHECK(last_non_max_index(ks({0, 0, 0}, 3)) == 3);
    CHECK(last_non_max_index(ks({1, 2, 0}, 3)) == 3);
    CHECK_THROWS_AS(last_non_max_index(ks({2, 2}, 3)), std::domain_error);
}

TEST_CASE("split and join round-trip") {
    std::vector<int> actions{0, 1, 2, 2, 1, 0};
    SplitPolicy sp = split(actions, 3, 3);
    CHECK(sp.x == ks({0, 1, 2}, 3));
    CHECK(sp.y == ks({2, 1, 0}, 3));
    CHECK(join(sp) == actions);
    CHECK_THROWS_AS(split(actions, 2, 3), std::invalid_argument);
}

TEST_CASE("render and parse") {
    SplitPolicy sp = split({0, 0, 0, 0, 0, 1}, 3, 3);
    CHECK(render(sp) == "000\xc2\xb7"
                        "001");
    CHECK(parse_split(render(sp), 3) == sp);
    CHECK(render_flat({0, 1, 2}, 3) == "012");
    CHECK(parse_kary("012", 3) == ks({0, 1, 2}, 3));
    CHECK(render(ks({10, 35}, 36)) == "az");
    CHECK_THROWS(parse_kary("09", 3));
    CHECK_THROWS(parse_split("0101", 2));  // no separator
}

// [y] = [x] + 1 iff y replaces x's last non-max digit with its successor
// and zeroes everything after it; exhaustive over small digit spaces
TEST_CASE("successor characterization") {
    for (int k = 2; k <= 4; ++k)
        for (int m = 1; m <= 4; ++m) {
            std::uint64_t total = 1;
            for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(k);
            std::vector<KaryString> all;
            KaryString x{std::vector<int>(static_cast<std::size_t>(m), 0), k};
            for (std::uint64_t c = 0; c < total; ++c) {
                all.push_back(x);
                for (int u = m - 1; u >= 0; --u) {
                    if (++x.digits[static_cast<std::size_t>(u)] < k) break;
                    x.digits[static_cast<std::size_t>(u)] = 0;
                }
            }
            for (std::uint64_t c = 0; c + 1 < total; ++c) {
                std::size_t I = last_non_max_index(all[c]);
                KaryString want = prefix(all[c], I - 1);
                want.digits.push_back(all[c].digits[I - 1] + 1);
                want.digits.insert(want.digits.end(),
                                   static_cast<std::size_t>(m) - I, 0);
                CHECK(all[c + 1] == want);
            }
        }
}
