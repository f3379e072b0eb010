// SPDX-License-Identifier: Apache-2.0
#include "nandsim/acceptance.hpp"
#include "nandsim/errors.hpp"
#include "nandsim/li_raid.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

using namespace nandsim;

TEST_SUITE("raid") {

TEST_CASE("four chip, four wordline LI layout")
{
    const RaidLayout l = layout_li_raid({4, 4});
    CHECK(l.format_table() == liraid_golden_4x4());
    CHECK(l.group_of(0, 0, PageType::MSB) == 0);
    CHECK(l.group_of(3, 3, PageType::LSB) == 0);
    CHECK(l.is_blank(0, 3));
    CHECK(l.is_blank(1, 0));
    CHECK(l.is_blank(2, 1));
    CHECK(l.is_blank(3, 2));
    CHECK(l.blank_pages() == 8);
    CHECK(l.n_groups() == 6);
}

TEST_CASE("conventional layout")
{
    const RaidLayout l = layout_conventional({4, 4});
    CHECK(l.n_groups() == 8);
    CHECK(l.blank_pages() == 0);
    for (int g = 0; g < l.n_groups(); ++g) {
        std::set<int> wls;
        std::set<PageType> types;
        for (const auto &m : l.members(g)) {
            wls.insert(m.wordline);
            types.insert(m.page);
        }
        CHECK(wls.size() == 1);
        CHECK(types.size() == 1);
    }
}

TEST_CASE("blank overhead at 128 wordlines")
{
    const RaidLayout l = layout_li_raid({128, 128});
    CHECK(std::round(l.blank_overhead() * 1e4) / 100 == doctest::Approx(0.78));
    CHECK(l.blank_overhead() < 0.008);
}

TEST_CASE("layout invariants over many shapes")
{
    for (int m : {2, 3, 4, 8})
        for (int mult : {1, 2, 4}) {
            const int n = m * mult;
            const RaidLayout li = layout_li_raid({m, n});
            const RaidLayout cv = layout_conventional({m, n});
            const int s = n / m;
            CAPTURE(m);
            CAPTURE(n);
            CHECK(li.n_groups() == 2 * (n - s));
            // Capacity: LI loses exactly 2*s pages per chip.
            CHECK(cv.n_groups() * m - li.n_groups() * m == 2 * s * m);
            for (int g = 0; g < li.n_groups(); ++g) {
                const auto &mem = li.members(g);
                REQUIRE(mem.size() == static_cast<std::size_t>(m));
                std::set<int> chips, wls;
                for (std::size_t i = 0; i < mem.size(); ++i) {
                    chips.insert(mem[i].chip);
                    wls.insert(mem[i].wordline);
                    CHECK(li.group_of(mem[i].chip, mem[i].wordline, mem[i].page) == g);
                    if (i > 0)
                        CHECK(mem[i].page != mem[i - 1].page);
                }
                CHECK(chips.size() == static_cast<std::size_t>(m));
                CHECK(wls.size() == static_cast<std::size_t>(m));
            }
            for (int c = 0; c < m; ++c) {
                int blanks = 0;
                for (int w = 0; w < n; ++w) {
                    const bool blank = li.is_blank(c, w);
                    blanks += blank;
                    CHECK(blank == (li.group_of(c, w, PageType::MSB) == RaidLayout::kBlank));
                    CHECK(blank == (li.group_of(c, w, PageType::LSB) == RaidLayout::kBlank));
                }
                CHECK(blanks == s);
            }
        }
    CHECK_THROWS_AS(layout_li_raid({3, 4}), ConfigError);
    CHECK_THROWS_AS(layout_li_raid({1, 4}), ConfigError);
}

TEST_CASE("write then recover is the identity")
{
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int m : {2, 4, 8}) {
        const RaidLayout l = layout_li_raid({m, m});
        for (int g = 0; g < l.n_groups(); ++g) {
            std::vector<PageBits> data(m - 1, PageBits(257));
            for (auto &p : data)
                for (auto &b : p)
                    b = static_cast<std::uint8_t>(bit(rng));
            const auto pages = raid_write(l, g, data);
            REQUIRE(pages.size() == static_cast<std::size_t>(m));
            PageBits x(257, 0);
            for (const auto &p : pages)
                for (std::size_t i = 0; i < x.size(); ++i)
                    x[i] ^= p[i];
            CHECK(x == PageBits(257, 0));
            for (int f = 0; f < m; ++f) {
                std::vector<std::optional<PageBits>> survivors(pages.begin(), pages.end());
                survivors[f].reset();
                CHECK(raid_recover(l, g, f, survivors) == pages[f]);
            }
        }
    }
}

TEST_CASE("double failure is unrecoverable")
{
    const RaidLayout l = layout_li_raid({4, 4});
    const auto pages = raid_write(l, 0, {PageBits(8, 1), PageBits(8, 0), PageBits(8, 1)});
    std::vector<std::optional<PageBits>> s(pages.begin(), pages.end());
    s[0].reset();
    s[2].reset();
    CHECK_THROWS_AS(raid_recover(l, 0, 0, s), std::runtime_error);
    CHECK_THROWS_AS(raid_write(l, 0, {PageBits(8, 1)}), std::invalid_argument);
}

TEST_CASE("group statistics")
{
    const RaidLayout l = layout_li_raid({4, 4});
    const GroupRber u = group_worst_case_rber(l, [](int, int, PageType) { return 1e-3; });
    for (double r : u.per_group)
        CHECK(r == 1e-3);

    // One hot layer: the MSB page of wordline 2 on every chip.
    auto hot = [](int, int w, PageType p) { return (w == 2 && p == PageType::MSB) ? 1e-2 : 1e-4; };
    const GroupRber cv = group_worst_case_rber(layout_conventional({4, 4}), hot);
    const GroupRber li_max = group_worst_case_rber(l, hot);
    const GroupRber li_mean = group_rber(l, hot, GroupStatistic::Mean);
    CHECK(cv.overall == 1e-2);
    CHECK(li_mean.overall < cv.overall);
    CHECK(li_max.overall <= cv.overall);
}

TEST_CASE("LI program order disturbs each page at most once")
{
    for (int m : {2, 4, 8})
        for (int mult : {1, 2}) {
            const RaidLayout l = layout_li_raid({m, m * mult});
            const int n = m * mult;
            for (int c = 0; c < m; ++c) {
                // First group that writes each wordline on this chip.
                std::vector<int> order(n, -1);
                for (int g = 0; g < l.n_groups(); ++g)
                    for (const auto &mem : l.members(g))
                        if (mem.chip == c && order[mem.wordline] < 0)
                            order[mem.wordline] = g;
                for (int w = 0; w + 1 < n; ++w) {
                    if (order[w] < 0)
                        continue;
                    // The next wordline is blank or programmed later, never earlier.
                    CHECK((l.is_blank(c, w + 1) || order[w + 1] >= order[w]));
                }
            }
        }
}

}
