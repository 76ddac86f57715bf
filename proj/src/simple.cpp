#include "ordfrag/simple.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ordfrag/errors.hpp"
#include "ordfrag/matching.hpp"

namespace ordfrag {

namespace {

std::string node_str(NodeId x) { return std::to_string(x); }

std::vector<std::uint32_t> normalized_pool(std::vector<std::uint32_t> pool, std::uint32_t top) {
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (auto l : pool) {
        if (l >= top) throw DomainError("pool level " + std::to_string(l) + " is not below the top level");
    }
    return pool;
}

// Pairs each source level with the smallest unused target >= it, keeping the order.
std::optional<std::map<std::uint32_t, std::uint32_t>> pair_levels(const std::vector<std::uint32_t>& sources,
                                                                  const std::vector<std::uint32_t>& targets) {
    std::map<std::uint32_t, std::uint32_t> out;
    std::size_t j = 0;
    for (auto p : sources) {
        while (j < targets.size() && targets[j] < p) ++j;
        if (j == targets.size()) return std::nullopt;
        out[p] = targets[j++];
    }
    return out;
}

std::vector<std::uint32_t> image_levels(const StagedTree& s, const RegressiveMap& m) {
    std::set<std::uint32_t> lv;
    for (const auto& [x, w] : m.image) lv.insert(s.level(w));
    return {lv.begin(), lv.end()};
}

void require_payload(const StagedTree& s) {
    if (!s.has_payload()) throw DomainError("staged tree has no payload");
}

}  // namespace

NodeSet RegressiveMap::domain() const {
    NodeSet d;
    d.reserve(image.size());
    for (const auto& [x, w] : image) d.push_back(x);
    return d;
}

bool RegressiveMap::injective() const {
    std::set<NodeId> seen;
    for (const auto& [x, w] : image) {
        if (!seen.insert(w).second) return false;
    }
    return true;
}

std::string check_regressive(const StagedTree& s, const NodeSet& domain, const RegressiveMap& m) {
    if (m.domain() != domain) return "map domain differs from the member set";
    for (const auto& [x, w] : m.image) {
        if (x >= s.size() || w >= s.size()) return "node id out of range";
        if (s.level(x) != s.top_level()) return "member " + node_str(x) + " is not at the top level";
        if (x == w || !s.is_ancestor_or_self(w, x)) return "image of " + node_str(x) + " is not a strict ancestor";
        if (!s.in_pool(s.level(w))) return "image of " + node_str(x) + " is not at a pool level";
    }
    return {};
}

bool validate_violator(const StagedTree& s, const NodeSet& h, const HallViolator& v) {
    if (v.members.empty()) return false;
    std::set<NodeId> hs(h.begin(), h.end());
    std::set<NodeId> n;
    for (auto x : v.members) {
        if (!hs.count(x)) return false;
        for (auto a : s.pool_ancestors(x)) n.insert(a);
    }
    if (std::vector<NodeId>(n.begin(), n.end()) != v.neighbourhood) return false;
    return n.size() < v.members.size();
}

std::optional<std::pair<NodeId, NodeId>> overlapping_segments(const StagedTree& s, const RegressiveMap& m) {
    // [w, x] and [w', y] meet iff the deeper of w, w' lies below both x and y.
    for (auto i = m.image.begin(); i != m.image.end(); ++i) {
        for (auto j = std::next(i); j != m.image.end(); ++j) {
            NodeId deeper = s.level(i->second) >= s.level(j->second) ? i->second : j->second;
            if (s.is_ancestor_or_self(deeper, i->first) && s.is_ancestor_or_self(deeper, j->first)) {
                return std::pair{i->first, j->first};
            }
        }
    }
    return std::nullopt;
}

SimplicityVerdict is_simple(const StagedTree& s, const NodeSet& h_in) {
    NodeSet h = make_node_set(s, h_in);
    std::unordered_map<NodeId, std::size_t> right_index;
    std::vector<NodeId> right_nodes;
    std::vector<std::vector<std::size_t>> edges(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (auto a : s.pool_ancestors(h[i])) {
            auto [it, fresh] = right_index.emplace(a, right_nodes.size());
            if (fresh) right_nodes.push_back(a);
            edges[i].push_back(it->second);
        }
    }
    BipartiteMatcher bm(h.size(), right_nodes.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (auto v : edges[i]) bm.add_edge(i, v);
    }
    SimplicityVerdict out;
    if (bm.solve() == h.size()) {
        out.simple = true;
        for (std::size_t i = 0; i < h.size(); ++i) out.witness.image[h[i]] = right_nodes[bm.match_of_left(i)];
        return out;
    }
    auto d = bm.deficiency();
    for (auto i : d.left) out.violator.members.push_back(h[i]);
    for (auto v : d.neighbourhood) out.violator.neighbourhood.push_back(right_nodes[v]);
    std::sort(out.violator.members.begin(), out.violator.members.end());
    std::sort(out.violator.neighbourhood.begin(), out.violator.neighbourhood.end());
    return out;
}

RegressiveMap transfer_cofinal(const StagedTree& s, const RegressiveMap& pi, std::vector<std::uint32_t> target_pool) {
    target_pool = normalized_pool(std::move(target_pool), s.top_level());
    if (auto why = check_regressive(s, pi.domain(), pi); !why.empty()) throw DomainError(why);
    if (!pi.injective()) throw NotInjective("source map is not injective");
    auto pairing = pair_levels(image_levels(s, pi), target_pool);
    if (!pairing) throw NoSubsequence("no subsequence of the target pool dominates the source levels");
    RegressiveMap out;
    for (const auto& [x, w] : pi.image) out.image[x] = s.ancestor_at_level(x, pairing->at(s.level(w)));
    if (!out.injective()) throw NotInjective("transferred map is not injective");
    return out;
}

RegressiveMap compose_fibrewise(const StagedTree& s, const RegressiveMap& pi,
                                const std::map<NodeId, RegressiveMap>& fibre_maps) {
    if (auto why = check_regressive(s, pi.domain(), pi); !why.empty()) throw DomainError(why);
    std::map<NodeId, NodeSet> fibres;
    for (const auto& [x, w] : pi.image) fibres[w].push_back(x);
    for (const auto& [w, m] : fibre_maps) {
        if (!fibres.count(w)) throw DomainError("fibre map given for " + node_str(w) + " which is not an image");
    }

    const auto& pool = s.pool();
    auto pool_index = [&](std::uint32_t level) {
        return static_cast<std::size_t>(std::lower_bound(pool.begin(), pool.end(), level) - pool.begin());
    };

    // Lift each fibre map onto pool levels >= level(w); injectivity survives.
    std::map<NodeId, NodeId> lifted;
    for (const auto& [w, members] : fibres) {
        auto it = fibre_maps.find(w);
        if (it == fibre_maps.end()) throw DomainError("missing fibre map for " + node_str(w));
        const auto& fm = it->second;
        if (auto why = check_regressive(s, members, fm); !why.empty()) throw DomainError("fibre of " + node_str(w) + ": " + why);
        if (!fm.injective()) throw NotInjective("fibre map of " + node_str(w) + " is not injective");
        std::vector<std::uint32_t> targets(std::lower_bound(pool.begin(), pool.end(), s.level(w)), pool.end());
        auto pairing = pair_levels(image_levels(s, fm), targets);
        if (!pairing) {
            throw NoRoom(members.front(), s.level(w),
                         "not enough pool levels above " + node_str(w) + " to lift its fibre map");
        }
        for (const auto& [x, v] : fm.image) lifted[x] = s.ancestor_at_level(x, pairing->at(s.level(v)));
    }

    std::map<NodeId, std::pair<std::size_t, std::size_t>> cls;
    for (const auto& [x, w] : pi.image) cls[x] = {pool_index(s.level(w)), pool_index(s.level(lifted[x]))};

    RegressiveMap sigma;
    for (const auto& [x, cx] : cls) {
        std::optional<std::uint32_t> bound;
        for (const auto& [y, cy] : cls) {
            if (y == x || cy == cx || cy.second > cx.second) continue;
            NodeId mt = s.meet(x, y);
            if (s.level(mt) < s.level(lifted[y])) continue;
            if (!bound || s.level(mt) > *bound) bound = s.level(mt);
        }
        NodeId choice = kNoNode;
        for (auto a : s.pool_ancestors(x)) {
            if (s.level(a) < s.level(lifted[x])) continue;
            if (bound && s.level(a) <= *bound) continue;
            choice = a;
            break;
        }
        if (choice == kNoNode) {
            std::ostringstream msg;
            msg << "no pool ancestor of " << x << " above level " << (bound ? *bound : s.level(lifted[x]));
            throw NoRoom(x, bound, msg.str());
        }
        sigma.image[x] = choice;
    }
    if (auto bad = overlapping_segments(s, sigma)) {
        throw std::logic_error("composed segments of " + node_str(bad->first) + " and " + node_str(bad->second) +
                               " meet");
    }
    return sigma;
}

RegressiveMap disjoint_intervals(const StagedTree& s, const NodeSet& h) {
    auto v = is_simple(s, h);
    if (!v.simple) throw NotSimpleError(v.violator, "member set is not simple");
    std::map<NodeId, RegressiveMap> fibres;
    for (const auto& [x, w] : v.witness.image) fibres[w].image[x] = w;
    return compose_fibrewise(s, v.witness, fibres);
}

RegressiveMap union_simple(const StagedTree& s, const std::vector<SimplePart>& parts,
                           const std::vector<std::uint32_t>& level_assignment) {
    if (level_assignment.size() != parts.size()) throw DomainError("one pool level per part is required");
    std::set<std::uint32_t> used;
    for (auto l : level_assignment) {
        if (!s.in_pool(l)) throw DomainError("assigned level " + std::to_string(l) + " is not a pool level");
        if (!used.insert(l).second) throw DomainError("level assignment is not injective");
    }
    std::set<NodeId> seen;
    RegressiveMap pi;
    std::map<NodeId, RegressiveMap> fibres;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        NodeSet members = make_node_set(s, parts[i].members);
        if (auto why = check_regressive(s, members, parts[i].witness); !why.empty()) {
            throw DomainError("part " + std::to_string(i) + ": " + why);
        }
        if (!parts[i].witness.injective()) throw NotInjective("witness of part " + std::to_string(i) + " is not injective");
        for (auto x : members) {
            if (!seen.insert(x).second) throw DomainError("parts overlap at " + node_str(x));
            NodeId w = s.ancestor_at_level(x, level_assignment[i]);
            pi.image[x] = w;
            fibres[w].image[x] = parts[i].witness(x);
        }
    }
    return compose_fibrewise(s, pi, fibres);
}

BoundedRegressive bounded_regressive(const StagedTree& s, const NodeSet& h_in, bool allow_trivial) {
    require_payload(s);
    NodeSet h = make_node_set(s, h_in);
    BoundedRegressive out;
    if (h.empty()) {
        out.trivial_branch = true;
        return out;
    }
    auto highest = [&](NodeId x) {
        auto anc = s.pool_ancestors(x);
        if (anc.empty()) throw NoRoom(x, std::nullopt, "member " + node_str(x) + " has no pool ancestor");
        return anc.back();
    };
    NodeId top_min = h.front();
    for (auto x : h) {
        if (s.interval(x).lo > s.interval(top_min).lo) top_min = x;
    }

    std::map<NodeId, NodeId> proof_bound;  // a -> b_a
    if (allow_trivial) {
        out.trivial_branch = true;
        for (auto x : h) out.map.image[x] = highest(x);
    } else {
        for (auto a : h) {
            std::optional<NodeId> ba;
            for (auto b : h) {
                if (s.interval(a).hi < s.interval(b).lo && (!ba || s.interval(b).lo > s.interval(*ba).lo)) ba = b;
            }
            if (!ba) {
                out.map.image[a] = highest(a);
                continue;
            }
            NodeId choice = kNoNode;
            for (auto w : s.pool_ancestors(a)) {
                if (s.interval(w).hi < s.interval(*ba).lo) {
                    choice = w;
                    break;
                }
            }
            if (choice == kNoNode) {
                throw NoRoom(a, std::nullopt,
                             "no pool ancestor of " + node_str(a) + " ends before the minimum of " + node_str(*ba));
            }
            out.map.image[a] = choice;
            proof_bound[a] = *ba;
        }
    }

    std::map<NodeId, NodeSet> fibres;
    for (const auto& [x, w] : out.map.image) fibres[w].push_back(x);
    for (const auto& [w, members] : fibres) {
        FibreCertificate c{w, top_min, false};
        for (auto a : members) {
            if (auto it = proof_bound.find(a); it != proof_bound.end()) {
                c.bound = it->second;
                c.strict = true;
                break;
            }
        }
        out.certificates.push_back(c);
    }
    return out;
}

bool verify_bounded(const StagedTree& s, const NodeSet& h, const BoundedRegressive& r) {
    if (!s.has_payload()) return false;
    if (!check_regressive(s, h, r.map).empty()) return false;
    std::map<NodeId, NodeSet> fibres;
    for (const auto& [x, w] : r.map.image) fibres[w].push_back(x);
    if (r.certificates.size() != fibres.size()) return false;
    std::set<NodeId> hs(h.begin(), h.end());
    for (const auto& c : r.certificates) {
        auto it = fibres.find(c.image);
        if (it == fibres.end() || !hs.count(c.bound)) return false;
        auto bound = s.interval(c.bound).lo;
        if (c.strict && !(s.interval(c.image).hi < bound)) return false;
        for (auto a : it->second) {
            auto m = s.interval(a).lo;
            if (c.strict ? !(m < bound) : !(m <= bound)) return false;
        }
    }
    return true;
}

bool default_simplicity_oracle(const StagedTree& s, const NodeSet& h) { return is_simple(s, h).simple; }

NodeSet left_window(const StagedTree& s, const NodeSet& h, std::uint64_t x, std::uint64_t min_b) {
    NodeSet out;
    for (auto a : h) {
        if (x < s.interval(a).lo && s.interval(a).hi <= min_b) out.push_back(a);
    }
    return out;
}

NodeSet right_window(const StagedTree& s, const NodeSet& h, std::uint64_t max_b, std::uint64_t y) {
    NodeSet out;
    for (auto a : h) {
        if (max_b <= s.interval(a).lo && s.interval(a).hi < y) out.push_back(a);
    }
    return out;
}

EndpointSplit endpoint_LR(const StagedTree& s, const NodeSet& h_in, const SimplicityOracle& oracle) {
    require_payload(s);
    NodeSet h = make_node_set(s, h_in);
    EndpointSplit out;
    for (auto b : h) {
        const auto& iv = s.interval(b);
        for (std::uint64_t x = 0; x < iv.lo; ++x) {
            if (oracle(s, left_window(s, h, x, iv.lo))) {
                out.left.push_back(b);
                break;
            }
        }
        for (std::uint64_t y = iv.hi + 1; y < s.chain_size(); ++y) {
            if (oracle(s, right_window(s, h, iv.hi, y))) {
                out.right.push_back(b);
                break;
            }
        }
    }
    return out;
}

CondensationCore condensation_core(const StagedTree& s, const NodeSet& h_in) {
    NodeSet h = make_node_set(s, h_in);
    auto lr = endpoint_LR(s, h);
    CondensationCore out;
    std::set<NodeId> covered(lr.left.begin(), lr.left.end());
    covered.insert(lr.right.begin(), lr.right.end());
    for (auto x : h) {
        if (!covered.count(x)) out.core.push_back(x);
    }
    if (is_simple(s, h).simple) return out;
    for (auto c : out.core) {
        const auto& iv = s.interval(c);
        for (std::uint64_t x = 0; x < iv.lo; ++x) {
            ++out.windows_checked;
            if (is_simple(s, left_window(s, out.core, x, iv.lo)).simple) out.verified = false;
        }
        for (std::uint64_t y = iv.hi + 1; y < s.chain_size(); ++y) {
            ++out.windows_checked;
            if (is_simple(s, right_window(s, out.core, iv.hi, y)).simple) out.verified = false;
        }
    }
    return out;
}

}  // namespace ordfrag
