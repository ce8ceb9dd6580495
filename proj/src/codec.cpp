#include "piforge/codec.hpp"

#include <stdexcept>

namespace piforge {

namespace {

const std::string kMiddleDot = "\xc2\xb7";  // UTF-8 U+00B7

char digit_char(int d) {
    if (d < 10) return static_cast<char>('0' + d);
    return static_cast<char>('a' + (d - 10));
}

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    throw std::invalid_argument(std::string("bad digit character: ") + c);
}

}  // namespace

std::uint64_t numeral(const KaryString& x) {
    std::uint64_t v = 0;
    for (int d : x.digits) {
        if (v > (~0ULL - static_cast<std::uint64_t>(d)) / static_cast<std::uint64_t>(x.base))
            throw std::overflow_error("numeral exceeds 64 bits");
        v = v * static_cast<std::uint64_t>(x.base) + static_cast<std::uint64_t>(d);
    }
    return v;
}

KaryString prefix(const KaryString& x, std::size_t r) {
    if (r > x.size()) throw std::out_of_range("prefix length exceeds string");
    return {std::vector<int>(x.digits.begin(), x.digits.begin() + static_cast<long>(r)),
            x.base};
}

std::size_t last_non_max_index(const KaryString& x) {
    for (std::size_t u = x.size(); u >= 1; --u)
        if (x.digits[u - 1] != x.base - 1) return u;
    throw std::domain_error("all digits are maximal");
}

SplitPolicy split(const std::vector<int>& actions, std::size_t m, int k) {
    if (actions.size() != 2 * m)
        throw std::invalid_argument("policy length is not 2m");
    SplitPolicy sp;
    sp.x = {std::vector<int>(actions.begin(), actions.begin() + static_cast<long>(m)), k};
    sp.y = {std::vector<int>(actions.begin() + static_cast<long>(m), actions.end()), k};
    return sp;
}

std::vector<int> join(const SplitPolicy& sp) {
    std::vector<int> actions = sp.x.digits;
    actions.insert(actions.end(), sp.y.digits.begin(), sp.y.digits.end());
    return actions;
}

KaryString concat(const KaryString& a, const KaryString& b) {
    KaryString r = a;
    r.digits.insert(r.digits.end(), b.digits.begin(), b.digits.end());
    return r;
}

std::string render(const KaryString& x) {
    if (x.base > 36) throw std::invalid_argument("text rendering supports base <= 36");
    std::string s;
    s.reserve(x.size());
    for (int d : x.digits) s.push_back(digit_char(d));
    return s;
}

std::string render(const SplitPolicy& sp) {
    return render(sp.x) + kMiddleDot + render(sp.y);
}

std::string render_flat(const std::vector<int>& actions, int k) {
    return render(KaryString{actions, k});
}

KaryString parse_kary(const std::string& text, int base) {
    KaryString x;
    x.base = base;
    for (char c : text) {
        int d = digit_value(c);
        if (d >= base) throw std::invalid_argument("digit out of range for base");
        x.digits.push_back(d);
    }
    return x;
}

SplitPolicy parse_split(const std::string& text, int base) {
    auto pos = text.find(kMiddleDot);
    if (pos == std::string::npos)
        throw std::invalid_argument("missing middle-dot separator");
    SplitPolicy sp;
    sp.x = parse_kary(text.substr(0, pos), base);
    sp.y = parse_kary(text.substr(pos + kMiddleDot.size()), base);
    if (sp.x.size() != sp.y.size())
        throw std::invalid_argument("split halves differ in length");
    return sp;
}

}  // namespace piforge
