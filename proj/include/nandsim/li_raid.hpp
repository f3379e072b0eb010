// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nandsim/voltage.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nandsim {

struct RaidGeometry {
    int m = 4; // chips per group
    int n = 4; // wordlines per block
    int stride() const { return n / m; }
};

enum class RaidScheme { Conventional, LayerInterleaved };

struct RaidMember {
    int chip;
    int wordline;
    PageType page;
};

class RaidLayout {
public:
    static constexpr int kBlank = -1;

    RaidLayout(RaidScheme scheme, RaidGeometry geom);

    RaidScheme scheme() const { return scheme_; }
    const RaidGeometry &geometry() const { return geom_; }
    int n_groups() const { return static_cast<int>(groups_.size()); }
    const std::vector<RaidMember> &members(int group) const { return groups_.at(group); }
    // Group id or kBlank.
    int group_of(int chip, int wordline, PageType page) const;
    bool is_blank(int chip, int wordline) const;
    std::vector<bool> blank_mask(int chip) const;
    int blank_pages() const;
    double blank_overhead() const;
    // Member index that holds the group's parity.
    int parity_member(int group) const { return group % geom_.m; }

    // Wordline | Layer | Page | Chip 0 | ... table.
    std::string format_table() const;

private:
    friend RaidLayout layout_conventional(const RaidGeometry &);
    friend RaidLayout layout_li_raid(const RaidGeometry &);
    void assign(int group, RaidMember m);
    int &slot(int chip, int wordline, PageType page);

    RaidScheme scheme_;
    RaidGeometry geom_;
    std::vector<int> assignment_;
    std::vector<std::vector<RaidMember>> groups_;
};

RaidLayout layout_conventional(const RaidGeometry &g);
RaidLayout layout_li_raid(const RaidGeometry &g);

using PageBits = std::vector<std::uint8_t>;

// Returns the group's m pages in member order with parity at parity_member(group).
std::vector<PageBits> raid_write(const RaidLayout &layout, int group, const std::vector<PageBits> &data);
PageBits raid_recover(const RaidLayout &layout, int group, int failed_member,
                      const std::vector<std::optional<PageBits>> &members);

using PageRberFn = std::function<double(int chip, int wordline, PageType page)>;

enum class GroupStatistic { Max, Mean };

struct GroupRber {
    std::vector<double> per_group;
    double overall = 0.0; // max over groups
};

GroupRber group_rber(const RaidLayout &layout, const PageRberFn &rber, GroupStatistic stat);
inline GroupRber group_worst_case_rber(const RaidLayout &layout, const PageRberFn &rber)
{
    return group_rber(layout, rber, GroupStatistic::Max);
}

} // namespace nandsim
