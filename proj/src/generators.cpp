#include "ordfrag/generators.hpp"

#include <algorithm>
#include <numeric>

#include "ordfrag/errors.hpp"
#include "ordfrag/simple.hpp"

namespace ordfrag {

std::uint64_t draw(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw DomainError("empty draw range");
    std::uint64_t span = hi - lo + 1;
    return span == 0 ? rng() : lo + rng() % span;
}

bool coin(Rng& rng) { return (rng() >> 63) != 0; }

StagedTree shuffled(const StagedTree& s, Rng& rng) {
    const auto n = s.size();
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[draw(rng, 0, i - 1)]);
    std::vector<NodeId> parent(n, kNoNode);
    for (NodeId x = 0; x < n; ++x) {
        if (s.parent(x) != kNoNode) parent[perm[x]] = perm[s.parent(x)];
    }
    StagedTree out(std::move(parent), s.top_level(), s.pool(), s.top_is_limit());
    if (s.has_payload()) {
        std::vector<ChainInterval> payload(n);
        for (NodeId x = 0; x < n; ++x) payload[perm[x]] = s.interval(x);
        out.set_payload(std::move(payload), s.chain_size());
        if (!s.chain_points().empty()) out.set_chain_points(s.chain_points());
    }
    if (s.source_ids().size() == n) {
        std::vector<std::size_t> ids(n);
        for (NodeId x = 0; x < n; ++x) ids[perm[x]] = s.source_ids()[x];
        out.set_source_ids(std::move(ids));
    }
    return out;
}

std::vector<NodeId> full_binary_parents(std::uint32_t top) {
    std::size_t n = (std::size_t{2} << top) - 1;
    std::vector<NodeId> parent(n);
    parent[0] = kNoNode;
    for (NodeId x = 1; x < n; ++x) parent[x] = (x - 1) / 2;
    return parent;
}

StagedTree full_binary(std::uint32_t top, std::vector<std::uint32_t> pool) {
    return StagedTree(full_binary_parents(top), top, std::move(pool));
}

StagedTree split_miniature(std::uint32_t depth, bool exclude_parent_level, Rng* rng) {
    if (depth < 2) throw DomainError("split miniature needs depth >= 2");
    std::uint32_t top = depth - 1;
    std::vector<std::uint32_t> pool;
    for (std::uint32_t l = 0; l + (exclude_parent_level ? 1 : 0) < top; ++l) pool.push_back(l);
    StagedTree s = full_binary(top, pool);
    // Breadth-first ids: node x at level l covers tops [(x - first(l)) << (top - l), ...].
    std::vector<ChainInterval> payload(s.size());
    for (NodeId x = 0; x < s.size(); ++x) {
        std::uint32_t l = s.level(x);
        std::uint64_t first = (std::uint64_t{1} << l) - 1;
        std::uint64_t width = std::uint64_t{1} << (top - l);
        std::uint64_t a = (x - first) * width;
        std::uint64_t b = a + width - 1;
        payload[x] = {2 * a, 2 * b + 1};
    }
    std::uint64_t pairs = std::uint64_t{1} << top;
    s.set_payload(std::move(payload), 2 * pairs);
    std::vector<Point> pts;
    for (std::uint64_t j = 0; j < 2 * pairs; ++j) pts.push_back(Point::split(j / 2, static_cast<Side>(j % 2)));
    s.set_chain_points(std::move(pts));
    return rng ? shuffled(s, *rng) : s;
}

void attach_walk_payload(StagedTree& s) {
    std::vector<ChainInterval> payload(s.size());
    std::uint64_t clock = 0;
    std::vector<std::pair<NodeId, std::size_t>> stack{{s.root(), 0}};
    payload[s.root()].lo = clock++;
    while (!stack.empty()) {
        auto& [x, next] = stack.back();
        if (next < s.children(x).size()) {
            NodeId c = s.children(x)[next++];
            payload[c].lo = clock++;
            stack.emplace_back(c, 0);
        } else {
            payload[x].hi = clock++;
            stack.pop_back();
        }
    }
    s.set_payload(std::move(payload), clock);
}

namespace {

// Appends a path of `length` new nodes below `from`; returns the last one.
NodeId extend(std::vector<NodeId>& parent, NodeId from, std::uint32_t length) {
    for (std::uint32_t i = 0; i < length; ++i) {
        parent.push_back(from);
        from = parent.size() - 1;
    }
    return from;
}

std::vector<std::uint32_t> depths(const std::vector<NodeId>& parent) {
    std::vector<std::uint32_t> d(parent.size(), 0);
    for (NodeId x = 0; x < parent.size(); ++x) {
        if (parent[x] != kNoNode) d[x] = d[parent[x]] + 1;  // parents precede children
    }
    return d;
}

}  // namespace

StagedTree comb(std::uint32_t teeth, std::uint32_t room) {
    if (teeth < 1) throw DomainError("comb needs a tooth");
    std::uint32_t top = teeth + room;
    std::vector<NodeId> parent{kNoNode};
    std::vector<NodeId> spine{0};
    for (std::uint32_t j = 1; j < teeth; ++j) spine.push_back(extend(parent, spine.back(), 1));
    for (std::uint32_t j = 0; j < teeth; ++j) extend(parent, spine[j], top - j);
    std::vector<std::uint32_t> pool;
    for (std::uint32_t l = teeth - 1; l < top; ++l) pool.push_back(l);
    StagedTree s(std::move(parent), top, std::move(pool));
    attach_walk_payload(s);
    return s;
}

StagedTree broom(std::uint32_t handle, std::uint32_t bristles, std::uint32_t length) {
    if (bristles < 1 || length < 2) throw DomainError("broom needs bristles of length >= 2");
    std::vector<NodeId> parent{kNoNode};
    NodeId end = extend(parent, 0, handle);
    for (std::uint32_t b = 0; b < bristles; ++b) extend(parent, end, length);
    std::uint32_t top = handle + length;
    std::vector<std::uint32_t> pool;
    for (std::uint32_t l = handle + 1; l < top; ++l) pool.push_back(l);
    StagedTree s(std::move(parent), top, std::move(pool));
    attach_walk_payload(s);
    return s;
}

RoomInstance with_room(Rng& rng, std::uint32_t max_tops) {
    std::uint32_t bound = static_cast<std::uint32_t>(draw(rng, 1, 3));
    std::uint32_t tops = static_cast<std::uint32_t>(draw(rng, 1, max_tops));
    std::vector<NodeId> parent{kNoNode};
    // Skeleton: nodes up to level `bound`, grown by random attachment.
    std::size_t skeleton = draw(rng, bound, bound + 4);
    extend(parent, 0, bound);
    while (parent.size() < skeleton + 1) {
        auto d = depths(parent);
        NodeId at = draw(rng, 0, parent.size() - 1);
        if (d[at] < bound) extend(parent, at, 1);
    }
    auto d = depths(parent);
    std::vector<NodeId> anchors;
    for (NodeId x = 0; x < parent.size(); ++x) {
        if (d[x] == bound) anchors.push_back(x);
    }
    std::uint32_t high = tops + static_cast<std::uint32_t>(draw(rng, 0, 2));
    std::uint32_t top = bound + 1 + high;
    // Each top's private path starts at a skeleton node of level `bound`.
    for (std::uint32_t t = 0; t < tops; ++t) {
        NodeId a = anchors[draw(rng, 0, anchors.size() - 1)];
        extend(parent, a, top - bound);
    }
    RoomInstance out;
    out.divergence_bound = bound;
    std::vector<std::uint32_t> pool;
    for (std::uint32_t l = 0; l <= bound; ++l) {
        if (coin(rng)) {
            pool.push_back(l);
            out.low_levels.push_back(l);
        }
    }
    for (std::uint32_t l = bound + 1; l < top; ++l) pool.push_back(l);
    StagedTree s(std::move(parent), top, std::move(pool));
    attach_walk_payload(s);
    out.tree = shuffled(s, rng);
    return out;
}

StagedTree sibling_tops(Rng& rng, std::size_t max_nodes) {
    for (;;) {
        std::uint32_t top = static_cast<std::uint32_t>(draw(rng, 2, 4));
        std::vector<NodeId> parent{kNoNode};
        NodeId p = extend(parent, 0, top - 1);
        extend(parent, p, 1);
        extend(parent, p, 1);
        std::size_t budget = max_nodes;
        while (parent.size() < budget && coin(rng)) {
            auto d = depths(parent);
            NodeId at = draw(rng, 0, parent.size() - 1);
            if (d[at] >= top) continue;
            if (parent.size() + (top - d[at]) > budget) break;
            extend(parent, at, top - d[at]);
        }
        std::vector<std::uint32_t> pool;
        for (std::uint32_t l = 0; l + 1 < top; ++l) {
            if (coin(rng)) pool.push_back(l);
        }
        if (pool.empty()) pool.push_back(static_cast<std::uint32_t>(draw(rng, 0, top - 2)));
        StagedTree s(std::move(parent), top, std::move(pool));
        if (is_simple(s, s.top_nodes()).simple) return shuffled(s, rng);
    }
}

StagedTree random_staged(Rng& rng, std::size_t max_nodes) {
    if (max_nodes < 3) throw DomainError("random staged trees need at least three nodes");
    std::uint32_t top = static_cast<std::uint32_t>(draw(rng, 1, std::min<std::size_t>(5, max_nodes - 1)));
    std::vector<NodeId> parent{kNoNode};
    extend(parent, 0, top);
    std::size_t target = draw(rng, top + 1, max_nodes);
    while (parent.size() < target) {
        auto d = depths(parent);
        NodeId at = draw(rng, 0, parent.size() - 1);
        if (d[at] >= top) continue;
        std::uint32_t len = coin(rng) ? top - d[at] : static_cast<std::uint32_t>(draw(rng, 1, top - d[at]));
        len = static_cast<std::uint32_t>(std::min<std::size_t>(len, target - parent.size()));
        extend(parent, at, len);
    }
    std::vector<std::uint32_t> pool;
    for (std::uint32_t l = 0; l < top; ++l) {
        if (coin(rng)) pool.push_back(l);
    }
    return shuffled(StagedTree(std::move(parent), top, std::move(pool)), rng);
}

NodeSet random_top_subset(const StagedTree& s, Rng& rng) {
    NodeSet out;
    for (auto x : s.top_nodes()) {
        if (coin(rng)) out.push_back(x);
    }
    return out;
}

std::vector<Ordinal> ordinal_menu() {
    return {Ordinal::omega(), Ordinal::omega_power(1, 2), Ordinal::omega_power(2),
            Ordinal({{2, 3}, {0, 5}}), Ordinal::omega_power(3)};
}

SpaceDescriptor random_space(Rng& rng) {
    switch (draw(rng, 0, 2)) {
        case 0: return SpaceDescriptor::finite_chain(draw(rng, 2, 512));
        case 1: {
            auto menu = ordinal_menu();
            return SpaceDescriptor::ordinal_interval(menu[draw(rng, 0, menu.size() - 1)]);
        }
        default: return SpaceDescriptor::split_chain(draw(rng, 1, 256));
    }
}

}  // namespace ordfrag
