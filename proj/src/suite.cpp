#include "ordfrag/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "ordfrag/generators.hpp"
#include "ordfrag/oracles.hpp"
#include "ordfrag/simple.hpp"

namespace ordfrag {

Pipeline make_pipeline(const SpaceDescriptor& k, std::size_t budget) {
    Pipeline p;
    p.space = k;
    p.tree = build_tree(k, budget);
    p.staged = to_staged(p.tree, complete_depth(p.tree), {}, false);
    p.partition = *partition_open(p.staged).partition;
    p.ln = ln_decomposition(p.tree, p.staged, p.partition);
    p.l = ln_union(p.ln);
    p.deltas = decomposition_deltas(k, p.ln);
    p.family = separating_family(k, p.deltas);
    return p;
}

bool SuiteReport::all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

std::string SuiteReport::render() const {
    std::ostringstream out;
    out << "ordfrag acceptance suite, seed " << seed << "\n";
    for (const auto& c : criteria) {
        out << (c.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << c.detail << "\n";
    }
    out << (all_pass() ? "all criteria pass" : "some criteria fail") << "\n";
    return out.str();
}

namespace {

using Clock = std::chrono::steady_clock;

Rng criterion_rng(std::uint64_t seed, int id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id)};
    return Rng(seq);
}

std::vector<PointPair> all_pairs(const std::vector<Point>& pts) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) out.emplace_back(pts[i], pts[j]);
    }
    return out;
}

Family random_subfamily(const Family& f, Rng& rng) {
    Family out;
    for (const auto& s : f) {
        if (coin(rng)) out.push_back(s);
    }
    return out;
}

SpaceDescriptor omega_squared() { return SpaceDescriptor::ordinal_interval(Ordinal::omega_power(2)); }

constexpr std::size_t kOrdinalBudget = 256;

// Test points of [0, w^2]: the three limits w, w*2, w^2 and seeded truncated points.
std::vector<Point> ordinal_samples(Rng& rng, std::size_t count) {
    auto pool = truncated_ordinal_points(Ordinal::omega_power(2), kDefaultTruncation);
    std::vector<Point> out{Point::ordinal(Ordinal::omega()), Point::ordinal(Ordinal::omega_power(1, 2)),
                           Point::ordinal(Ordinal::omega_power(2))};
    while (out.size() < count) out.push_back(pool[draw(rng, 0, pool.size() - 1)]);
    return out;
}

CriterionResult admissibility(std::uint64_t seed) {
    auto rng = criterion_rng(seed, 1);
    auto menu = ordinal_menu();
    std::size_t finite = 0, ordinal = 0, failures = 0, nodes = 0;
    std::string first;
    auto start = Clock::now();
    for (int i = 0; i < 200; ++i) {
        SpaceDescriptor k = i % 2 == 0 ? SpaceDescriptor::finite_chain(draw(rng, 2, 512))
                                       : SpaceDescriptor::ordinal_interval(menu[(i / 2) % menu.size()]);
        (i % 2 == 0 ? finite : ordinal)++;
        auto t = build_tree(k, draw(rng, 1, 2000));
        nodes += t.size();
        auto r = verify_admissible(t);
        if (!r.ok()) {
            ++failures;
            if (first.empty()) first = describe(k) + ": " + r.violations.front().clause + " " + r.violations.front().detail;
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult c{1, "admissibility", failures == 0 && secs < kAdmissibilitySeconds, {}, secs};
    std::ostringstream d;
    d << finite << " finite chains and " << ordinal << " ordinal intervals, " << nodes << " nodes, " << failures
      << " trees with violations";
    if (!first.empty()) d << " (first: " << first << ")";
    if (secs >= kAdmissibilitySeconds) d << ", over the time limit";
    c.detail = d.str();
    return c;
}

CriterionResult matching(std::uint64_t seed) {
    auto rng = criterion_rng(seed, 2);
    std::size_t agree = 0, revalidated = 0, simple = 0;
    const std::size_t total = 1000;
    for (std::size_t i = 0; i < total; ++i) {
        auto s = random_staged(rng, 18);
        NodeSet h = i % 2 == 0 ? s.top_nodes() : random_top_subset(s, rng);
        auto v = is_simple(s, h);
        if (v.simple == oracle::sdr_exists(s, h)) ++agree;
        if (v.simple) {
            ++simple;
            if (check_regressive(s, h, v.witness).empty() && v.witness.injective()) ++revalidated;
        } else if (validate_violator(s, h, v.violator)) {
            ++revalidated;
        }
    }
    std::ostringstream d;
    d << total << " trees (" << simple << " simple), agreement " << agree << "/" << total << ", witnesses revalidated "
      << revalidated << "/" << total;
    return {2, "matching oracle", agree == total && revalidated == total, d.str()};
}

CriterionResult constructions(std::uint64_t seed) {
    auto rng = criterion_rng(seed, 3);
    std::size_t noroom = 0, bad = 0, other = 0;
    const std::size_t total = 500;
    for (std::size_t i = 0; i < total; ++i) {
        auto inst = with_room(rng);
        const auto& s = inst.tree;
        auto h = s.top_nodes();
        auto segments_ok = [&](const RegressiveMap& m) {
            return check_regressive(s, h, m).empty() && !overlapping_segments(s, m);
        };
        try {
            if (!segments_ok(disjoint_intervals(s, h))) ++bad;

            RegressiveMap pi;
            for (auto x : h) pi.image[x] = s.pool_ancestors(x).front();
            std::map<NodeId, NodeSet> fibres;
            for (const auto& [x, w] : pi.image) fibres[w].push_back(x);
            std::map<NodeId, RegressiveMap> fibre_maps;
            for (const auto& [w, f] : fibres) fibre_maps[w] = is_simple(s, f).witness;
            if (!segments_ok(compose_fibrewise(s, pi, fibre_maps))) ++bad;

            std::size_t parts = std::min<std::size_t>(h.size(), std::max<std::size_t>(1, inst.low_levels.size()));
            std::vector<SimplePart> ps(parts);
            for (auto x : h) ps[draw(rng, 0, parts - 1)].members.push_back(x);
            std::vector<std::uint32_t> levels(s.pool().begin(), s.pool().begin() + static_cast<std::ptrdiff_t>(parts));
            for (auto& p : ps) p.witness = is_simple(s, p.members).witness;
            if (!segments_ok(union_simple(s, ps, levels))) ++bad;

            for (bool trivial : {true, false}) {
                if (!verify_bounded(s, h, bounded_regressive(s, h, trivial))) ++bad;
            }
        } catch (const NoRoom&) {
            ++noroom;
        } catch (const std::exception&) {
            ++other;
        }
    }
    std::size_t sib_total = 100, sib_noroom = 0, sib_confirmed = 0;
    for (std::size_t i = 0; i < sib_total; ++i) {
        auto s = sibling_tops(rng, 14);
        auto h = s.top_nodes();
        try {
            disjoint_intervals(s, h);
        } catch (const NoRoom&) {
            ++sib_noroom;
        }
        if (!oracle::disjoint_segments(s, h)) ++sib_confirmed;
    }
    std::ostringstream d;
    d << total << " instances with room: " << noroom << " NoRoom, " << bad << " failed checks, " << other
      << " other errors; sibling tops: NoRoom " << sib_noroom << "/" << sib_total << ", brute force infeasible "
      << sib_confirmed << "/" << sib_total;
    bool pass = noroom == 0 && bad == 0 && other == 0 && sib_noroom == sib_total && sib_confirmed == sib_total;
    return {3, "construction postconditions", pass, d.str()};
}

CriterionResult open_partitions(std::uint64_t seed) {
    auto rng = criterion_rng(seed, 4);
    std::size_t accepted = 0, verified = 0, glue = 0;
    std::size_t refused_random = 0, refusal_sound = 0, noroom_random = 0, noroom_sound = 0;
    auto accept = [&](const StagedTree& s) {
        auto out = partition_open(s);
        if (!out.accepted()) return;
        ++accepted;
        if (verify_open_partition(s, *out.partition).ok()) ++verified;
        if (check_glue(s, partition_stages(s, *out.partition)).ok()) ++glue;
    };
    for (std::uint32_t teeth = 1; teeth <= 6; ++teeth) accept(comb(teeth));
    for (std::uint32_t handle = 0; handle <= 3; ++handle) {
        for (std::uint32_t b = 1; b <= 4; ++b) accept(broom(handle, b, 3));
    }
    for (int i = 0; i < 100; ++i) accept(with_room(rng).tree);
    for (int i = 0; i < 200; ++i) {
        auto s = random_staged(rng, 12);
        try {
            auto out = partition_open(s);
            if (out.accepted()) {
                ++accepted;
                if (verify_open_partition(s, *out.partition).ok()) ++verified;
                if (check_glue(s, partition_stages(s, *out.partition)).ok()) ++glue;
            } else {
                ++refused_random;
                if (oracle::open_partitions(s) == 0) ++refusal_sound;
            }
        } catch (const NoRoom&) {
            ++noroom_random;
            if (oracle::open_partitions(s) == 0) ++noroom_sound;
        }
    }
    std::size_t minis = 100, refused = 0, counting = 0;
    for (std::size_t i = 0; i < minis; ++i) {
        auto s = split_miniature(3 + static_cast<std::uint32_t>(i % 4), true, &rng);
        auto out = partition_open(s);
        if (out.accepted()) continue;
        ++refused;
        const auto& v = out.refusal->violator;
        if (validate_violator(s, s.top_nodes(), v)) ++counting;
    }
    auto small = split_miniature(3, true);
    std::size_t candidates = oracle::chain_partition_count(small);
    std::size_t valid_chain = oracle::open_partitions(small, false);
    std::size_t valid_sets = oracle::open_set_partitions(small);

    std::ostringstream d;
    d << accepted << " accepted, " << verified << " verified, " << glue << " glue relations checked; random refusals "
      << refusal_sound << "/" << refused_random << " confirmed, NoRoom " << noroom_sound << "/" << noroom_random
      << " confirmed; split miniatures refused " << refused << "/" << minis << " with counting violators " << counting
      << "; depth 3: " << valid_chain << " of " << candidates << " chain-convex candidates and " << valid_sets
      << " set partitions are open";
    bool pass = verified == accepted && glue == accepted && refusal_sound == refused_random &&
                noroom_sound == noroom_random && refused == minis && counting == minis && valid_chain == 0 &&
                valid_sets == 0;
    return {4, "open partitions", pass, d.str()};
}

struct PipelineInstance {
    std::string name;
    Pipeline p;
    bool finite = true;
};

std::vector<PipelineInstance> pipeline_instances() {
    std::vector<PipelineInstance> out;
    for (std::uint64_t n = 4; n <= 64; ++n) {
        out.push_back({"finite " + std::to_string(n), make_pipeline(SpaceDescriptor::finite_chain(n), 4 * n), true});
    }
    out.push_back({"w^2", make_pipeline(omega_squared(), kOrdinalBudget), false});
    return out;
}

CriterionResult decomposition(std::uint64_t seed, const std::vector<PipelineInstance>& insts) {
    auto rng = criterion_rng(seed, 5);
    std::size_t failures = 0, levels = 0, pairs_checked = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        ++failures;
        if (first.empty()) first = what;
    };
    for (const auto& inst : insts) {
        const auto& p = inst.p;
        if (!p.ln.nested) fail(inst.name + ": not nested");
        if (!p.ln.gap_identity) fail(inst.name + ": gap identity");
        for (const auto& l : p.ln.levels) {
            ++levels;
            auto r = verify_scattered_closed(p.space, l);
            if (!r.closed || !r.scattered) fail(inst.name + ": a level is not closed and scattered");
        }
        std::vector<PointPair> pairs;
        if (inst.finite) {
            pairs = all_pairs(enumerate(p.space, whole_space(p.space)));
        } else {
            while (pairs.size() < 200) {
                auto a = p.l[draw(rng, 0, p.l.size() - 1)], b = p.l[draw(rng, 0, p.l.size() - 1)];
                if (a < b) pairs.emplace_back(a, b);
                else if (b < a) pairs.emplace_back(b, a);
            }
        }
        pairs_checked += pairs.size();
        if (verify_density(p.space, p.l, pairs)) fail(inst.name + ": density");
    }
    std::size_t cb_ok = 0;
    auto menu = ordinal_menu();
    for (const auto& a : menu) {
        auto k = SpaceDescriptor::ordinal_interval(a);
        auto r = verify_scattered_closed(k, truncated_ordinal_points(a, kDefaultTruncation));
        if (r.closed && r.cb_rank == degree(a)) ++cb_ok;
        else fail("degree cross-check at " + render(a));
    }
    std::ostringstream d;
    d << insts.size() << " instances, " << levels << " levels closed and scattered, " << pairs_checked
      << " density pairs, CB rank equals degree on " << cb_ok << "/" << menu.size() << " ordinals, " << failures
      << " failures";
    if (!first.empty()) d << " (first: " << first << ")";
    return {5, "L_n decomposition", failures == 0, d.str()};
}

CriterionResult separation(std::uint64_t seed, const std::vector<PipelineInstance>& insts) {
    auto rng = criterion_rng(seed, 6);
    std::size_t unseparated = 0, calls = 0, failures = 0, subsets = 0;
    std::string first;
    for (const auto& inst : insts) {
        const auto& p = inst.p;
        std::vector<Point> ws;
        if (inst.finite) {
            ws = enumerate(p.space, whole_space(p.space));
            if (check_separation(p.family, all_pairs(ws))) ++unseparated;
        } else {
            ws = ordinal_samples(rng, 100);
        }
        for (int sample = 0; sample < 20; ++sample) {
            ++subsets;
            auto a = random_subfamily(p.family, rng);
            auto rec = dense_set(p.space, p.deltas, a, p.l);
            auto metric = pseudo_metric(a);
            for (const auto& w : ws) {
                for (std::uint32_t n = 1; n <= 8; ++n) {
                    ++calls;
                    try {
                        auto r = approximate(p.space, w, n, p.deltas, a, rec);
                        bool in_d = std::binary_search(rec.d.begin(), rec.d.end(), r.z);
                        if (!in_d || !(metric(w, r.z) < Rational(1, n))) {
                            ++failures;
                            if (first.empty()) first = inst.name + " w = " + render_point(w);
                        }
                    } catch (const std::exception& e) {
                        ++failures;
                        if (first.empty()) first = inst.name + ": " + e.what();
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << insts.size() << " instances, " << unseparated << " unseparated families, " << subsets << " subsets A, "
      << calls << " approximations, " << failures << " guarantee failures";
    if (!first.empty()) d << " (first: " << first << ")";
    return {6, "separation and approximation", unseparated == 0 && failures == 0, d.str()};
}

CriterionResult namioka(std::uint64_t seed, const std::vector<PipelineInstance>& insts) {
    auto rng = criterion_rng(seed, 7);
    std::size_t passed = 0, norm_caught = 0, sep_caught = 0, controls = 0;
    std::string witness;
    for (const auto& inst : insts) {
        const auto& p = inst.p;
        std::vector<Point> ws = inst.finite ? enumerate(p.space, whole_space(p.space)) : ordinal_samples(rng, 100);
        std::vector<PointPair> pairs = inst.finite ? all_pairs(ws) : std::vector<PointPair>{};
        if (!inst.finite) {
            for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
                if (ws[i] < ws[i + 1]) pairs.emplace_back(ws[i], ws[i + 1]);
                else if (ws[i + 1] < ws[i]) pairs.emplace_back(ws[i + 1], ws[i]);
            }
        }
        std::vector<NamiokaSample> samples;
        for (int i = 0; i < 3; ++i) samples.push_back({random_subfamily(p.family, rng), ws});
        if (namioka_check(p.space, p.family, p.deltas, p.l, pairs, samples, 8).ok()) ++passed;
        if (!inst.finite) continue;
        ++controls;
        if (!namioka_check(p.space, scaled(p.family, Rational(3)), p.deltas, p.l, pairs, {}, 8).norm_ok) ++norm_caught;
        std::uint32_t top = static_cast<std::uint32_t>(p.deltas.size() - 1);
        auto r = namioka_check(p.space, without_level(p.family, top), p.deltas, p.l, pairs, {}, 8);
        if (r.unseparated) {
            ++sep_caught;
            if (witness.empty()) {
                witness = inst.name + " level " + std::to_string(top) + " removed, (" + render_point(r.unseparated->first) +
                          ", " + render_point(r.unseparated->second) + ")";
            }
        }
    }
    std::ostringstream d;
    d << "full constructions pass " << passed << "/" << insts.size() << "; scaled family caught " << norm_caught << "/"
      << controls << "; deleted gap level caught " << sep_caught << "/" << controls;
    if (!witness.empty()) d << " (first: " << witness << ")";
    bool pass = passed == insts.size() && norm_caught == controls && sep_caught == controls;
    return {7, "Namioka checker", pass, d.str()};
}

CriterionResult weight(std::uint64_t seed) {
    auto rng = criterion_rng(seed, 8);
    std::size_t simple = 0, holds = 0, consistent = 0, total = 0;
    auto check = [&](const StagedTree& s) {
        ++total;
        auto w = weight_bound(s);
        if (w.simple == is_simple(s, s.top_nodes()).simple) ++consistent;
        if (!w.simple) return;
        ++simple;
        if (w.holds) ++holds;
    };
    for (std::uint32_t teeth = 1; teeth <= 6; ++teeth) check(comb(teeth));
    for (std::uint32_t b = 1; b <= 4; ++b) check(broom(2, b, 3));
    for (int i = 0; i < 200; ++i) check(with_room(rng).tree);
    for (int i = 0; i < 300; ++i) check(random_staged(rng, 18));
    std::size_t margins = 0;
    std::ostringstream m;
    for (std::uint32_t k = 2; k <= 6; ++k) {
        auto s = split_miniature(k + 1, false, &rng);
        auto w = weight_bound(s);
        std::size_t want = std::size_t{1} << k;
        if (w.top_size == want && w.pool_size == want - 1 && w.margin == 1 && !w.holds && !w.simple) ++margins;
        m << (k == 2 ? "" : ", ") << w.top_size << " vs " << w.pool_size;
    }
    std::ostringstream d;
    d << total << " instances, " << simple << " simple, bound holds on " << holds << ", verdicts consistent " << consistent
      << "/" << total << "; split miniatures " << m.str();
    return {8, "weight analogue", holds == simple && consistent == total && margins == 5, d.str()};
}

template <class F>
CriterionResult timed(F&& f) {
    auto start = Clock::now();
    CriterionResult c = f();
    if (c.seconds == 0) c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return c;
}

}  // namespace

SuiteReport run_criteria(std::uint64_t seed) {
    SuiteReport r;
    r.seed = seed;
    r.criteria.push_back(timed([&] { return admissibility(seed); }));
    r.criteria.push_back(timed([&] { return matching(seed); }));
    r.criteria.push_back(timed([&] { return constructions(seed); }));
    r.criteria.push_back(timed([&] { return open_partitions(seed); }));
    auto start = Clock::now();
    auto insts = pipeline_instances();
    double build = std::chrono::duration<double>(Clock::now() - start).count();
    r.criteria.push_back(timed([&] { return decomposition(seed, insts); }));
    r.criteria.back().seconds += build;
    r.criteria.push_back(timed([&] { return separation(seed, insts); }));
    r.criteria.push_back(timed([&] { return namioka(seed, insts); }));
    r.criteria.push_back(timed([&] { return weight(seed); }));
    return r;
}

SuiteReport run_suite(std::uint64_t seed) {
    auto start = Clock::now();
    auto first = run_criteria(seed);
    double once = std::chrono::duration<double>(Clock::now() - start).count();
    auto second = run_criteria(seed);
    double twice = std::chrono::duration<double>(Clock::now() - start).count();
    bool identical = first.render() == second.render();
    bool fast = once < kSuiteSeconds;
    std::ostringstream d;
    d << "second run " << (identical ? "renders identically" : "differs") << ", single run "
      << (fast ? "within" : "over") << " the time limit";
    first.criteria.push_back({9, "determinism", identical && fast, d.str(), twice - once});
    return first;
}

}  // namespace ordfrag
