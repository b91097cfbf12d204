#include "ldwb/shelf.hpp"

#include <algorithm>
#include <numeric>

namespace ldwb {

Shelf laver_shelf(const LaverTable& t)
{
    Shelf s{t.order(), {}};
    s.table.reserve(t.entries().size());
    for (const auto v : t.entries()) {
        s.table.push_back(v - 1);
    }
    return s;
}

Shelf conjugation_shelf(int k)
{
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const auto index = [&](const std::vector<int>& q) {
        return static_cast<std::uint32_t>(std::lower_bound(perms.begin(), perms.end(), q) -
                                          perms.begin());
    };

    Shelf s{static_cast<std::uint32_t>(perms.size()), {}};
    s.table.reserve(perms.size() * perms.size());
    std::vector<int> inv(p.size());
    std::vector<int> r(p.size());
    for (const auto& x : perms) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            inv[static_cast<std::size_t>(x[i])] = static_cast<int>(i);
        }
        for (const auto& y : perms) {
            // (x y x^-1)(i) = x(y(x^-1(i)))
            for (std::size_t i = 0; i < x.size(); ++i) {
                r[i] = x[static_cast<std::size_t>(y[static_cast<std::size_t>(inv[i])])];
            }
            s.table.push_back(index(r));
        }
    }
    return s;
}

Shelf affine_shelf(std::uint32_t m, std::uint32_t t)
{
    Shelf s{m, {}};
    s.table.reserve(static_cast<std::size_t>(m) * m);
    const std::uint32_t u = (m + 1 - t % m) % m;  // 1 - t
    for (std::uint32_t x = 0; x < m; ++x) {
        for (std::uint32_t y = 0; y < m; ++y) {
            s.table.push_back((u * x + t * y) % m);
        }
    }
    return s;
}

bool is_left_distributive(const Shelf& s)
{
    for (std::uint32_t x = 0; x < s.order; ++x) {
        for (std::uint32_t y = 0; y < s.order; ++y) {
            const auto xy = s(x, y);
            for (std::uint32_t z = 0; z < s.order; ++z) {
                if (s(x, s(y, z)) != s(xy, s(x, z))) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace ldwb
