#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordfrag/errors.hpp"
#include "ordfrag/generators.hpp"
#include "ordfrag/io.hpp"
#include "ordfrag/suite.hpp"

using namespace ordfrag;

namespace {

// Exit statuses: a verified negative answer is a result, not a failure.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Config {
    std::string space;
    std::string in;
    std::string out;
    std::size_t budget = 256;
    std::uint64_t seed = 1;
    std::uint64_t denbound = kDefaultDenominatorBound;
    std::size_t samples = 100;
    bool dot = false;

    // staged gen
    std::string kind = "split";
    std::uint32_t depth = 4;
    std::uint32_t teeth = 4;
    std::uint32_t room = 2;
    std::uint32_t handle = 1;
    std::uint32_t bristles = 3;
    std::uint32_t length = 3;
    std::uint32_t top = 2;
    std::vector<std::uint32_t> pool;
    bool exclude_parent = false;
    bool successor_top = false;

    // constructions and checks
    std::string members;
    std::string map;
    std::size_t parts = 2;
    bool no_trivial = false;
    std::string eps = "1/2";
    std::string point;
    std::uint32_t n = 2;
    bool maximal = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Inline JSON text, or the path of a file holding it.
Json load_json(const std::string& text_or_path, const std::string& what) {
    if (text_or_path.empty()) throw UsageError("missing " + what);
    auto first = text_or_path.find_first_not_of(" \t\n");
    bool inline_text = first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[');
    return Json::parse(inline_text ? text_or_path : slurp(text_or_path));
}

void emit(const Config& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

void emit(const Config& c, const Json& j) { emit(c, j.dump(2)); }

SpaceDescriptor space_of(const Config& c) { return space_from_json(load_json(c.space, "--space")); }

StagedTree staged_in(const Config& c) { return staged_from_json(load_json(c.in, "--in staged tree")); }

NodeSet members_of(const Config& c, const StagedTree& s) {
    if (c.members.empty()) return s.top_nodes();
    return nodeset_from_json(s, load_json(c.members, "--members"));
}

Json point_list(const std::vector<Point>& pts) { return points_to_json(pts); }

std::vector<Point> sample_points(const SpaceDescriptor& k, Rng& rng, std::size_t count) {
    std::vector<Point> pool;
    if (is_finite_space(k)) {
        pool = enumerate(k, whole_space(k));
    } else if (k.kind == SpaceKind::ordinal) {
        pool = truncated_ordinal_points(k.alpha, kDefaultTruncation);
    } else {
        pool = endpoints(build_tree(k, 512));
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pool[draw(rng, 0, pool.size() - 1)]);
    return sorted_points(out);
}

std::vector<PointPair> pairs_of(const std::vector<Point>& pts) {
    std::vector<PointPair> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) out.emplace_back(pts[i], pts[j]);
    }
    return out;
}

// Exhaustive on finite spaces, seeded otherwise.
std::vector<Point> test_points(const Pipeline& p, Rng& rng, std::size_t samples) {
    if (is_finite_space(p.space)) return enumerate(p.space, whole_space(p.space));
    auto pts = sample_points(p.space, rng, samples);
    pts.push_back(max_point(p.space));
    return sorted_points(pts);
}

Family seeded_subfamily(const Family& f, Rng& rng) {
    Family out;
    for (const auto& g : f) {
        if (coin(rng)) out.push_back(g);
    }
    return out;
}

Json report_json(const AdmissibilityReport& r) {
    Json v = Json::array();
    for (const auto& x : r.violations) v.push_back({{"clause", x.clause}, {"nodes", x.nodes}, {"detail", x.detail}});
    return {{"v", kSchemaVersion}, {"ok", r.ok()}, {"violations", v}};
}

// ---- space

int space_show(const Config& c) {
    auto k = space_of(c);
    auto count = point_count(k, whole_space(k));
    Json j{{"v", kSchemaVersion},
           {"space", space_to_json(k)},
           {"describe", describe(k)},
           {"min", render_point(min_point(k))},
           {"max", render_point(max_point(k))},
           {"points", count ? Json(*count) : Json("countably-infinite")}};
    emit(c, j);
    return kOk;
}

int space_sample(const Config& c) {
    Rng rng(c.seed);
    if (c.space.empty()) {
        Json spaces = Json::array();
        for (std::size_t i = 0; i < c.samples; ++i) spaces.push_back(space_to_json(random_space(rng)));
        emit(c, Json{{"v", kSchemaVersion}, {"spaces", spaces}});
        return kOk;
    }
    auto k = space_of(c);
    emit(c, Json{{"v", kSchemaVersion}, {"points", point_list(sample_points(k, rng, c.samples))}});
    return kOk;
}

// ---- tree

int tree_build(const Config& c) {
    auto t = build_tree(space_of(c), c.budget);
    emit(c, c.dot ? tree_to_dot(t) : tree_to_json(t).dump(2));
    return kOk;
}

int tree_verify(const Config& c) {
    auto t = tree_from_json(load_json(c.in, "--in tree"));
    auto r = verify_admissible(t);
    emit(c, report_json(r));
    return r.ok() ? kOk : kNegative;
}

int tree_export(const Config& c) {
    auto t = tree_from_json(load_json(c.in, "--in tree"));
    emit(c, c.dot ? tree_to_dot(t) : tree_to_json(t).dump(2));
    return kOk;
}

// ---- staged

StagedTree generate(const Config& c) {
    Rng rng(c.seed);
    if (c.kind == "split") return split_miniature(c.depth, c.exclude_parent);
    if (c.kind == "binary") return full_binary(c.depth - 1, c.pool);
    if (c.kind == "comb") return comb(c.teeth, c.room);
    if (c.kind == "broom") return broom(c.handle, c.bristles, c.length);
    if (c.kind == "room") return with_room(rng).tree;
    if (c.kind == "siblings") return sibling_tops(rng, 14);
    if (c.kind == "random") return random_staged(rng, 18);
    if (c.kind == "tree") {
        auto t = c.in.empty() ? build_tree(space_of(c), c.budget) : tree_from_json(load_json(c.in, "--in tree"));
        return to_staged(t, c.top, c.pool, !c.successor_top);
    }
    throw UsageError("unknown --kind " + c.kind + " (split, binary, comb, broom, room, siblings, random, tree)");
}

int staged_gen(const Config& c) {
    auto s = generate(c);
    emit(c, c.dot ? staged_to_dot(s) : staged_to_json(s).dump(2));
    return kOk;
}

int staged_check_simple(const Config& c) {
    auto s = staged_in(c);
    auto v = is_simple(s, members_of(c, s));
    emit(c, verdict_to_json(v));
    return v.simple ? kOk : kNegative;
}

Json negative(const std::string& kind, const std::string& what) {
    return {{"v", kSchemaVersion}, {"ok", false}, {"error", kind}, {"detail", what}};
}

RegressiveMap map_or_witness(const Config& c, const StagedTree& s, const NodeSet& h) {
    if (!c.map.empty()) return map_from_json(load_json(c.map, "--map"));
    auto v = is_simple(s, h);
    if (!v.simple) throw NotSimpleError(v.violator, "the members are not simple");
    return v.witness;
}

Json construct(const Config& c, const std::string& op, const StagedTree& s, const NodeSet& h) {
    auto with_map = [](const RegressiveMap& m) {
        auto j = map_to_json(m);
        j["ok"] = true;
        return j;
    };
    if (op == "cofinal") {
        if (c.pool.empty()) throw UsageError("cofinal needs --pool");
        return with_map(transfer_cofinal(s, map_or_witness(c, s, h), c.pool));
    }
    if (op == "compose") {
        RegressiveMap pi;
        if (!c.map.empty()) {
            pi = map_from_json(load_json(c.map, "--map"));
        } else {
            for (auto x : h) {
                auto anc = s.pool_ancestors(x);
                if (anc.empty()) throw NoRoom(x, std::nullopt, "no pool ancestor");
                pi.image[x] = anc.front();
            }
        }
        std::map<NodeId, NodeSet> fibres;
        for (const auto& [x, w] : pi.image) fibres[w].push_back(x);
        std::map<NodeId, RegressiveMap> maps;
        for (const auto& [w, f] : fibres) {
            auto v = is_simple(s, f);
            if (!v.simple) throw NotSimpleError(v.violator, "a fibre is not simple");
            maps[w] = v.witness;
        }
        return with_map(compose_fibrewise(s, pi, maps));
    }
    if (op == "disjoint") return with_map(disjoint_intervals(s, h));
    if (op == "union") {
        std::size_t parts = std::max<std::size_t>(1, std::min(c.parts, s.pool().size()));
        std::vector<SimplePart> ps(parts);
        for (std::size_t i = 0; i < h.size(); ++i) ps[i % parts].members.push_back(h[i]);
        for (auto& p : ps) {
            auto v = is_simple(s, p.members);
            if (!v.simple) throw NotSimpleError(v.violator, "a part is not simple");
            p.witness = v.witness;
        }
        std::vector<std::uint32_t> levels(s.pool().begin(), s.pool().begin() + static_cast<std::ptrdiff_t>(parts));
        return with_map(union_simple(s, ps, levels));
    }
    if (op == "bounded") {
        auto r = bounded_regressive(s, h, !c.no_trivial);
        Json certs = Json::array();
        for (const auto& f : r.certificates) certs.push_back({{"image", f.image}, {"bound", f.bound}, {"strict", f.strict}});
        auto j = with_map(r.map);
        j["trivial_branch"] = r.trivial_branch;
        j["certificates"] = certs;
        j["verified"] = verify_bounded(s, h, r);
        return j;
    }
    if (op == "lr") {
        auto lr = endpoint_LR(s, h);
        return {{"v", kSchemaVersion}, {"ok", true}, {"L", lr.left}, {"R", lr.right}};
    }
    if (op == "core") {
        auto core = condensation_core(s, h);
        return {{"v", kSchemaVersion},
                {"ok", core.verified},
                {"core", core.core},
                {"windows_checked", core.windows_checked}};
    }
    throw UsageError("unknown construction " + op);
}

int staged_construct(const Config& c, const std::string& op) {
    auto s = staged_in(c);
    auto h = members_of(c, s);
    try {
        auto j = construct(c, op, s, h);
        emit(c, j);
        return j.value("ok", true) ? kOk : kNegative;
    } catch (const NoRoom& e) {
        auto j = negative("NoRoom", e.what());
        j["member"] = e.member();
        if (e.bound_level()) j["bound_level"] = *e.bound_level();
        emit(c, j);
    } catch (const NotSimpleError& e) {
        auto j = negative("NotSimple", e.what());
        j["violator"] = violator_to_json(e.violator());
        emit(c, j);
    } catch (const NoSubsequence& e) {
        emit(c, negative("NoSubsequence", e.what()));
    } catch (const NotInjective& e) {
        emit(c, negative("NotInjective", e.what()));
    }
    return kNegative;
}

int staged_partition(const Config& c) {
    auto s = staged_in(c);
    std::optional<RegressiveMap> w;
    if (!c.map.empty()) w = map_from_json(load_json(c.map, "--map"));
    PartitionOutcome out;
    try {
        out = partition_open(s, w);
    } catch (const NoRoom& e) {
        emit(c, negative("NoRoom", e.what()));
        return kNegative;
    }
    if (!out.accepted()) {
        auto j = negative("refused", "top level is not simple");
        j["level"] = out.refusal->level;
        j["violator"] = violator_to_json(out.refusal->violator);
        emit(c, j);
        return kNegative;
    }
    if (c.dot) {
        emit(c, staged_to_dot(s, &*out.partition));
        return kOk;
    }
    auto j = partition_to_json(*out.partition);
    j["verified"] = verify_open_partition(s, *out.partition).ok();
    j["ranks"] = ranks(s, *out.partition);
    emit(c, j);
    return kOk;
}

// ---- frag

int frag_ln(const Config& c) {
    auto p = make_pipeline(space_of(c), c.budget);
    auto j = ln_to_json(p.ln);
    Json scatter = Json::array();
    for (const auto& l : p.ln.levels) {
        auto r = verify_scattered_closed(p.space, l);
        scatter.push_back({{"closed", r.closed}, {"scattered", r.scattered}, {"cb_rank", r.cb_rank}});
    }
    j["scatter"] = scatter;
    emit(c, j);
    bool ok = p.ln.nested && p.ln.gap_identity &&
              std::all_of(scatter.begin(), scatter.end(), [](const Json& s) { return s["closed"] && s["scattered"]; });
    return ok ? kOk : kNegative;
}

int frag_density(const Config& c) {
    auto p = make_pipeline(space_of(c), c.budget);
    Rng rng(c.seed);
    auto pairs = pairs_of(test_points(p, rng, c.samples));
    auto bad = verify_density(p.space, p.l, pairs);
    Json j{{"v", kSchemaVersion}, {"ok", !bad}, {"pairs", pairs.size()}};
    if (bad) j["counterexample"] = {render_point(bad->first), render_point(bad->second)};
    emit(c, j);
    return bad ? kNegative : kOk;
}

int frag_delta(const Config& c) {
    auto k = space_of(c);
    Json levels = Json::array();
    auto render_pairs = [](const GapPairs& g) {
        Json a = Json::array();
        for (const auto& [x, y] : g) a.push_back({render_point(x), render_point(y)});
        return a;
    };
    if (!c.in.empty()) {
        levels.push_back(render_pairs(delta_pairs(k, points_from_json(k, load_json(c.in, "--in points")))));
    } else {
        for (const auto& g : make_pipeline(k, c.budget).deltas) levels.push_back(render_pairs(g));
    }
    emit(c, Json{{"v", kSchemaVersion}, {"deltas", levels}});
    return kOk;
}

int frag_check(const Config& c) {
    auto k = space_of(c);
    auto eps = parse_rational(c.eps);
    auto pref = c.maximal ? WitnessPreference::maximal : WitnessPreference::minimal;
    std::optional<FragmentWitness> w;
    if (!c.in.empty()) {
        auto table = metric_from_json(k, load_json(c.in, "--in metric"));
        if (auto why = table.validate(); !why.empty()) throw UsageError("metric table: " + why);
        w = fragment_check(k, table.points, [&](const Point& u, const Point& v) { return table(u, v); }, eps, pref);
    } else {
        auto p = make_pipeline(k, c.budget);
        Rng rng(c.seed);
        auto m = test_points(p, rng, c.samples);
        auto d = induced_metric(p.family);
        w = fragment_check(k, m, [&](const Point& u, const Point& v) { return d(u, v); }, eps, pref);
    }
    Json j{{"v", kSchemaVersion}, {"ok", w.has_value()}};
    if (w) {
        j["lo"] = w->lo ? Json(render_point(*w->lo)) : Json(nullptr);
        j["hi"] = w->hi ? Json(render_point(*w->hi)) : Json(nullptr);
        j["members"] = point_list(w->members);
        j["diameter"] = render_rational(w->diameter);
    }
    emit(c, j);
    return w ? kOk : kNegative;
}

int frag_weight(const Config& c) {
    auto s = staged_in(c);
    auto w = weight_bound(s);
    emit(c, Json{{"v", kSchemaVersion},
                 {"top_size", w.top_size},
                 {"pool_size", w.pool_size},
                 {"simple", w.simple},
                 {"holds", w.holds},
                 {"margin", w.margin}});
    return w.holds ? kOk : kNegative;
}

// ---- rn

int rn_witness(const Config& c) {
    auto p = make_pipeline(space_of(c), c.budget);
    auto j = family_to_json(p.family);
    j["levels"] = p.deltas.size();
    emit(c, j);
    return kOk;
}

struct DenseInput {
    Pipeline p;
    Family a;
    DenseSetRecord rec;
};

DenseInput dense_input(const Config& c) {
    auto p = make_pipeline(space_of(c), c.budget);
    Rng rng(c.seed);
    Family a = c.in.empty() ? seeded_subfamily(p.family, rng) : family_from_json(p.space, load_json(c.in, "--in family"));
    auto rec = dense_set(p.space, p.deltas, a, p.l, c.denbound);
    return {std::move(p), std::move(a), std::move(rec)};
}

int rn_dense(const Config& c) {
    auto in = dense_input(c);
    auto j = dense_to_json(in.rec);
    j["a"] = family_to_json(in.a)["family"];
    emit(c, j);
    return kOk;
}

int rn_approx(const Config& c) {
    auto in = dense_input(c);
    if (c.point.empty()) throw UsageError("approx needs --point");
    auto w = parse_point(in.p.space, c.point);
    try {
        auto r = approximate(in.p.space, w, c.n, in.p.deltas, in.a, in.rec);
        emit(c, Json{{"v", kSchemaVersion},
                     {"ok", true},
                     {"w", render_point(w)},
                     {"z", render_point(r.z)},
                     {"distance", render_rational(r.distance)},
                     {"bound", render_rational(Rational(1, c.n))},
                     {"k", r.k},
                     {"trace", r.trace}});
        return kOk;
    } catch (const ApproximationFailure& e) {
        auto j = negative("ApproximationFailure", e.what());
        j["trace"] = e.trace();
        emit(c, j);
        return kNegative;
    }
}

int rn_check(const Config& c) {
    auto p = make_pipeline(space_of(c), c.budget);
    Rng rng(c.seed);
    auto pts = test_points(p, rng, c.samples);
    std::vector<NamiokaSample> samples;
    for (int i = 0; i < 5; ++i) samples.push_back({seeded_subfamily(p.family, rng), pts});
    auto r = namioka_check(p.space, p.family, p.deltas, p.l, pairs_of(pts), samples, 8, c.denbound);
    Json j{{"v", kSchemaVersion},
           {"ok", r.ok()},
           {"norm_ok", r.norm_ok},
           {"density_checks", r.density_checks},
           {"density_failures", r.density_failures}};
    if (r.unseparated) j["unseparated"] = {render_point(r.unseparated->first), render_point(r.unseparated->second)};
    emit(c, j);
    return r.ok() ? kOk : kNegative;
}

// ---- suite

int suite_run(const Config& c) {
    auto report = run_suite(c.seed);
    emit(c, report.render());
    return report.all_pass() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ordfrag: partition trees, open partitions, fragmentability and separating families"};
    app.require_subcommand(1);
    Config c;
    std::function<int()> action;

    auto io = [&](CLI::App* sub) {
        sub->add_option("--out", c.out, "write the result to a file instead of standard output");
    };
    auto with_space = [&](CLI::App* sub) {
        sub->add_option("--space", c.space, "space descriptor: inline JSON or a file");
        sub->add_option("--budget", c.budget, "maximum materialized tree nodes")->capture_default_str();
    };
    auto with_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", c.seed, "seed for every randomized choice")->capture_default_str();
        sub->add_option("--samples", c.samples, "sample count")->capture_default_str();
    };
    auto with_in = [&](CLI::App* sub, const std::string& what) {
        sub->add_option("--in", c.in, what + ": inline JSON or a file");
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int(const Config&)> f) {
        auto* sub = parent->add_subcommand(name, help);
        io(sub);
        sub->callback([&, f] { action = [&, f] { return f(c); }; });
        return sub;
    };

    auto* space = app.add_subcommand("space", "inspect and sample spaces")->require_subcommand(1);
    auto* show = leaf(space, "show", "describe a space", space_show);
    with_space(show);
    auto* sample = leaf(space, "sample", "sample points of a space, or random space descriptors", space_sample);
    with_space(sample);
    with_seed(sample);

    auto* tree = app.add_subcommand("tree", "admissible partition trees")->require_subcommand(1);
    auto* build = leaf(tree, "build", "materialize a partition tree", tree_build);
    with_space(build);
    build->add_flag("--dot", c.dot, "emit DOT instead of JSON");
    with_in(leaf(tree, "verify", "check every admissibility clause", tree_verify), "tree");
    auto* exp = leaf(tree, "export", "re-emit a tree as JSON or DOT", tree_export);
    with_in(exp, "tree");
    exp->add_flag("--dot", c.dot, "emit DOT instead of JSON");

    auto* staged = app.add_subcommand("staged", "staged trees and regressive maps")->require_subcommand(1);
    auto* gen = leaf(staged, "gen", "generate a staged tree", staged_gen);
    gen->add_option("--kind", c.kind, "split, binary, comb, broom, room, siblings, random or tree")->capture_default_str();
    gen->add_option("--depth", c.depth, "levels of split and binary trees")->capture_default_str();
    gen->add_option("--teeth", c.teeth, "comb teeth")->capture_default_str();
    gen->add_option("--room", c.room, "comb levels above the teeth")->capture_default_str();
    gen->add_option("--handle", c.handle, "broom handle length")->capture_default_str();
    gen->add_option("--bristles", c.bristles, "broom bristles")->capture_default_str();
    gen->add_option("--length", c.length, "broom bristle length")->capture_default_str();
    gen->add_option("--top", c.top, "top level when truncating a tree")->capture_default_str();
    gen->add_option("--pool", c.pool, "pool levels")->delimiter(',');
    gen->add_flag("--exclude-parent", c.exclude_parent, "split miniature pool stops below the top's parent level");
    gen->add_flag("--successor-top", c.successor_top, "truncated top level is a successor level");
    gen->add_flag("--dot", c.dot, "emit DOT instead of JSON");
    with_space(gen);
    with_in(gen, "tree to truncate");
    gen->add_option("--seed", c.seed, "seed for random kinds")->capture_default_str();

    auto* simple = leaf(staged, "check-simple", "decide simplicity of the top level or --members", staged_check_simple);
    with_in(simple, "staged tree");
    simple->add_option("--members", c.members, "node set: inline JSON or a file");

    auto* cons = staged->add_subcommand("construct", "regressive-map constructions")->require_subcommand(1);
    for (std::string op : {"cofinal", "compose", "disjoint", "union", "bounded", "lr", "core"}) {
        auto* sub = leaf(cons, op, "run the " + op + " construction",
                         [op](const Config& cfg) { return staged_construct(cfg, op); });
        with_in(sub, "staged tree");
        sub->add_option("--members", c.members, "node set: inline JSON or a file");
        sub->add_option("--map", c.map, "regressive map: inline JSON or a file");
        sub->add_option("--pool", c.pool, "target pool levels for cofinal")->delimiter(',');
        sub->add_option("--parts", c.parts, "number of parts for union")->capture_default_str();
        sub->add_flag("--no-trivial", c.no_trivial, "bounded: skip the maximal-minimum shortcut");
    }

    auto* part = leaf(staged, "partition", "build an open partition or refuse", staged_partition);
    with_in(part, "staged tree");
    part->add_option("--map", c.map, "simplicity witness for the top level");
    part->add_flag("--dot", c.dot, "emit DOT with cells coloured");

    auto* frag = app.add_subcommand("frag", "scattered decompositions and fragmentability")->require_subcommand(1);
    with_space(leaf(frag, "ln", "L_n decomposition with scatter checks", frag_ln));
    auto* dens = leaf(frag, "density", "check that L separates pairs", frag_density);
    with_space(dens);
    with_seed(dens);
    auto* delta = leaf(frag, "delta", "gap pairs of a point set or of every L_n", frag_delta);
    with_space(delta);
    with_in(delta, "points");
    auto* check = leaf(frag, "check", "fragmentation witness for a metric table or the induced metric", frag_check);
    with_space(check);
    with_seed(check);
    with_in(check, "metric table");
    check->add_option("--eps", c.eps, "positive rational")->capture_default_str();
    check->add_flag("--maximal", c.maximal, "prefer the longest run instead of the shortest");
    with_in(leaf(frag, "weight", "compare the top level with the pool", frag_weight), "staged tree");

    auto* rn = app.add_subcommand("rn", "separating families and dense sets")->require_subcommand(1);
    with_space(leaf(rn, "witness", "the separating step-function family", rn_witness));
    for (auto [name, help, fn] : std::vector<std::tuple<std::string, std::string, std::function<int(const Config&)>>>{
             {"dense", "dense set for a seeded subfamily A or --in family", rn_dense},
             {"approx", "approximate --point within 1/n", rn_approx}}) {
        auto* sub = leaf(rn, name, help, fn);
        with_space(sub);
        with_in(sub, "family A");
        sub->add_option("--seed", c.seed, "seed choosing A")->capture_default_str();
        sub->add_option("--denbound", c.denbound, "largest box denominator")->capture_default_str();
        if (name == "approx") {
            sub->add_option("--point", c.point, "point w");
            sub->add_option("--n", c.n, "precision 1/n")->capture_default_str();
        }
    }
    auto* rcheck = leaf(rn, "check", "norm bound, separation and density", rn_check);
    with_space(rcheck);
    with_seed(rcheck);
    rcheck->add_option("--denbound", c.denbound, "largest box denominator")->capture_default_str();

    auto* suite = app.add_subcommand("suite", "acceptance suite")->require_subcommand(1);
    leaf(suite, "run", "run every criterion twice and report", suite_run)
        ->add_option("--seed", c.seed, "suite seed")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
    } catch (const SchemaError& e) {
        std::cerr << "error: schema: " << e.what() << "\n";
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const InsufficientMaterialization& e) {
        std::cerr << "error: " << e.what() << "; raise --budget\n";
    }
    return kUsage;
}
