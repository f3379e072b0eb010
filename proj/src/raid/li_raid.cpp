// SPDX-License-Identifier: Apache-2.0
#include "nandsim/li_raid.hpp"
#include "nandsim/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nandsim {

RaidLayout::RaidLayout(RaidScheme scheme, RaidGeometry geom) : scheme_(scheme), geom_(geom)
{
    if (geom.m < 2)
        throw ConfigError("a RAID group needs at least two chips");
    if (geom.n < 1)
        throw ConfigError("a block needs at least one wordline");
    assignment_.assign(static_cast<std::size_t>(geom.m) * geom.n * 2, kBlank);
}

int &RaidLayout::slot(int chip, int wordline, PageType page)
{
    return assignment_[(static_cast<std::size_t>(chip) * geom_.n + wordline) * 2 + static_cast<int>(page)];
}

void RaidLayout::assign(int group, RaidMember m)
{
    if (group >= static_cast<int>(groups_.size()))
        groups_.resize(group + 1);
    groups_[group].push_back(m);
    slot(m.chip, m.wordline, m.page) = group;
}

int RaidLayout::group_of(int chip, int wordline, PageType page) const
{
    if (chip < 0 || chip >= geom_.m || wordline < 0 || wordline >= geom_.n)
        throw std::out_of_range("page outside RAID geometry");
    return const_cast<RaidLayout *>(this)->slot(chip, wordline, page);
}

bool RaidLayout::is_blank(int chip, int wordline) const
{
    return group_of(chip, wordline, PageType::MSB) == kBlank && group_of(chip, wordline, PageType::LSB) == kBlank;
}

std::vector<bool> RaidLayout::blank_mask(int chip) const
{
    std::vector<bool> out(geom_.n);
    for (int w = 0; w < geom_.n; ++w)
        out[w] = is_blank(chip, w);
    return out;
}

int RaidLayout::blank_pages() const
{
    return static_cast<int>(std::count(assignment_.begin(), assignment_.end(), kBlank));
}

double RaidLayout::blank_overhead() const
{
    return static_cast<double>(blank_pages()) / static_cast<double>(assignment_.size());
}

std::string RaidLayout::format_table() const
{
    std::ostringstream os;
    os << "Wordline | Layer | Page";
    for (int c = 0; c < geom_.m; ++c)
        os << " | Chip " << c;
    os << "\n";
    for (int w = 0; w < geom_.n; ++w) {
        for (PageType p : {PageType::MSB, PageType::LSB}) {
            os << w << " | " << w << " | " << page_type_name(p);
            for (int c = 0; c < geom_.m; ++c) {
                const int g = group_of(c, w, p);
                if (g == kBlank)
                    os << " | Blank";
                else
                    os << " | Group " << g;
            }
            os << "\n";
        }
    }
    return os.str();
}

RaidLayout layout_conventional(const RaidGeometry &g)
{
    RaidLayout l(RaidScheme::Conventional, g);
    for (int w = 0; w < g.n; ++w)
        for (PageType p : {PageType::MSB, PageType::LSB})
            for (int c = 0; c < g.m; ++c)
                l.assign(2 * w + static_cast<int>(p), {c, w, p});
    return l;
}

RaidLayout layout_li_raid(const RaidGeometry &g)
{
    if (g.m < 2 || g.n % g.m != 0)
        throw ConfigError("layer-interleaved RAID needs the chip count to divide the wordline count");
    RaidLayout l(RaidScheme::LayerInterleaved, g);
    const int s = g.stride();
    // Group g starts at wordline floor(g/2) on chip 0 and steps s wordlines per chip,
    // alternating MSB and LSB. The last s wordlines of each chip's rotation stay blank.
    for (int grp = 0; grp < 2 * (g.n - s); ++grp) {
        const int w = grp / 2;
        for (int c = 0; c < g.m; ++c) {
            const int wl = (w + c * s) % g.n;
            const PageType p = (c + grp) % 2 == 0 ? PageType::MSB : PageType::LSB;
            l.assign(grp, {c, wl, p});
        }
    }
    return l;
}

std::vector<PageBits> raid_write(const RaidLayout &layout, int group, const std::vector<PageBits> &data)
{
    const int m = layout.geometry().m;
    if (group < 0 || group >= layout.n_groups())
        throw std::out_of_range("group out of range");
    if (static_cast<int>(data.size()) != m - 1)
        throw std::invalid_argument("a RAID write needs m-1 data pages");
    const std::size_t len = data.front().size();
    for (const auto &d : data)
        if (d.size() != len)
            throw std::invalid_argument("data pages differ in length");
    PageBits parity(len, 0);
    for (const auto &d : data)
        for (std::size_t i = 0; i < len; ++i)
            parity[i] ^= d[i];
    std::vector<PageBits> out;
    out.reserve(m);
    const int pm = layout.parity_member(group);
    for (int k = 0, j = 0; k < m; ++k)
        out.push_back(k == pm ? parity : data[j++]);
    return out;
}

PageBits raid_recover(const RaidLayout &layout, int group, int failed_member,
                      const std::vector<std::optional<PageBits>> &members)
{
    const int m = layout.geometry().m;
    if (group < 0 || group >= layout.n_groups())
        throw std::out_of_range("group out of range");
    if (static_cast<int>(members.size()) != m || failed_member < 0 || failed_member >= m)
        throw std::invalid_argument("member list does not match the group");
    int missing = 0;
    for (int k = 0; k < m; ++k)
        if (k == failed_member || !members[k])
            ++missing;
    if (missing > 1)
        throw std::runtime_error("unrecoverable: more than one failed member");
    PageBits out;
    for (int k = 0; k < m; ++k) {
        if (k == failed_member)
            continue;
        const PageBits &p = *members[k];
        if (out.empty())
            out.assign(p.size(), 0);
        if (p.size() != out.size())
            throw std::invalid_argument("member pages differ in length");
        for (std::size_t i = 0; i < p.size(); ++i)
            out[i] ^= p[i];
    }
    return out;
}

GroupRber group_rber(const RaidLayout &layout, const PageRberFn &rber, GroupStatistic stat)
{
    GroupRber out;
    out.per_group.reserve(layout.n_groups());
    for (int g = 0; g < layout.n_groups(); ++g) {
        double acc = 0.0;
        for (const auto &mb : layout.members(g)) {
            const double r = rber(mb.chip, mb.wordline, mb.page);
            acc = stat == GroupStatistic::Max ? std::max(acc, r) : acc + r;
        }
        if (stat == GroupStatistic::Mean)
            acc /= static_cast<double>(layout.members(g).size());
        out.per_group.push_back(acc);
        out.overall = std::max(out.overall, acc);
    }
    return out;
}

} // namespace nandsim
