#include "ordfrag/io.hpp"

#include <sstream>

#include "ordfrag/errors.hpp"

namespace ordfrag {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

// Optional typed field; a type mismatch is reported at where/key.
template <class T>
T value_at(const Json& j, const char* key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw SchemaError(where + "/" + key, e.what());
    }
}

void check_version(const Json& j, const std::string& where) {
    if (j.is_object() && j.contains("v") && j.at("v") != kSchemaVersion) {
        throw SchemaError(where + "/v", "unsupported schema version " + j.at("v").dump());
    }
}

// Runs a decoder, turning library type errors into SchemaError at `where`.
template <class F>
auto decode(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Json::exception& e) {
        throw SchemaError(where, e.what());
    }
}

Json point_json(const Point& p) { return render_point(p); }

Point point_from(const SpaceDescriptor& k, const Json& j, const std::string& where) {
    if (!j.is_string()) throw SchemaError(where, "point must be a string");
    try {
        return parse_point(k, j.get<std::string>());
    } catch (const DomainError& e) {
        throw SchemaError(where, e.what());
    }
}

std::string kind_name(SpaceKind k) {
    switch (k) {
        case SpaceKind::finite: return "finite";
        case SpaceKind::ordinal: return "ordinal";
        case SpaceKind::split: return "split";
        case SpaceKind::sum: return "sum";
    }
    return "finite";
}

}  // namespace

Json space_to_json(const SpaceDescriptor& k) {
    Json j{{"kind", kind_name(k.kind)}};
    switch (k.kind) {
        case SpaceKind::finite:
            j["size"] = k.size;
            if (!k.labels.empty()) j["labels"] = k.labels;
            break;
        case SpaceKind::split: j["size"] = k.size; break;
        case SpaceKind::ordinal: j["alpha"] = render(k.alpha); break;
        case SpaceKind::sum: {
            j["parts"] = Json::array();
            for (const auto& p : k.parts) j["parts"].push_back(space_to_json(p));
            break;
        }
    }
    return j;
}

SpaceDescriptor space_from_json(const Json& j) {
    return decode("/space", [&] {
        check_version(j, "");
        auto kind = field(j, "kind", "").get<std::string>();
        try {
            if (kind == "finite") {
                auto k = SpaceDescriptor::finite_chain(field(j, "size", "").get<std::uint64_t>());
                if (j.contains("labels")) {
                    k.labels = j.at("labels").get<std::vector<std::string>>();
                    if (k.labels.size() != k.size) throw SchemaError("/labels", "one label per point is required");
                }
                return k;
            }
            if (kind == "split") return SpaceDescriptor::split_chain(field(j, "size", "").get<std::uint64_t>());
            if (kind == "ordinal") return SpaceDescriptor::ordinal_interval(parse_ordinal(field(j, "alpha", "").get<std::string>()));
            if (kind == "sum") {
                std::vector<SpaceDescriptor> parts;
                for (const auto& p : field(j, "parts", "")) parts.push_back(space_from_json(p));
                return SpaceDescriptor::order_sum(std::move(parts));
            }
        } catch (const DomainError& e) {
            throw SchemaError("/space", e.what());
        }
        throw SchemaError("/kind", "unknown space kind '" + kind + "'");
    });
}

Json tree_to_json(const PartitionTree& t) {
    Json nodes = Json::array();
    for (const auto& n : t.nodes) {
        nodes.push_back({{"id", n.id},
                         {"lo", point_json(n.interval.lo)},
                         {"hi", point_json(n.interval.hi)},
                         {"level", render(n.level)},
                         {"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
                         {"children", n.children}});
    }
    return {{"v", kSchemaVersion}, {"space", space_to_json(t.space)}, {"budget", t.budget}, {"nodes", nodes}};
}

PartitionTree tree_from_json(const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        PartitionTree t;
        t.space = space_from_json(field(j, "space", ""));
        t.budget = j.value("budget", std::size_t{0});
        const auto& nodes = field(j, "nodes", "");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            std::string where = "/nodes/" + std::to_string(i);
            const auto& n = nodes[i];
            TreeNode tn;
            tn.id = field(n, "id", where).get<std::size_t>();
            tn.interval = {point_from(t.space, field(n, "lo", where), where + "/lo"),
                           point_from(t.space, field(n, "hi", where), where + "/hi")};
            try {
                tn.level = parse_ordinal(field(n, "level", where).get<std::string>());
            } catch (const DomainError& e) {
                throw SchemaError(where + "/level", e.what());
            }
            if (n.contains("parent") && !n.at("parent").is_null()) tn.parent = n.at("parent").get<std::size_t>();
            tn.children = n.value("children", std::vector<std::size_t>{});
            t.nodes.push_back(std::move(tn));
        }
        return t;
    });
}

Json staged_to_json(const StagedTree& s) {
    Json parent = Json::array();
    for (auto p : s.parents()) parent.push_back(p == kNoNode ? Json(nullptr) : Json(p));
    Json j{{"v", kSchemaVersion},
           {"parent", parent},
           {"top", s.top_level()},
           {"pool", s.pool()},
           {"top_is_limit", s.top_is_limit()}};
    if (s.has_payload()) {
        Json iv = Json::array();
        for (const auto& a : s.payload()) iv.push_back({a.lo, a.hi});
        j["payload"] = {{"chain_size", s.chain_size()}, {"intervals", iv}};
    }
    if (!s.source_ids().empty()) j["source_ids"] = s.source_ids();
    return j;
}

StagedTree staged_from_json(const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        std::vector<NodeId> parent;
        for (const auto& p : field(j, "parent", "")) parent.push_back(p.is_null() ? kNoNode : p.get<NodeId>());
        try {
            StagedTree s(std::move(parent), field(j, "top", "").get<std::uint32_t>(),
                         value_at(j, "pool", std::vector<std::uint32_t>{}, ""),
                         value_at(j, "top_is_limit", true, ""));
            if (j.contains("payload")) {
                const auto& pl = j.at("payload");
                std::vector<ChainInterval> iv;
                for (const auto& a : field(pl, "intervals", "/payload")) {
                    iv.push_back({a.at(0).get<std::uint64_t>(), a.at(1).get<std::uint64_t>()});
                }
                s.set_payload(std::move(iv), field(pl, "chain_size", "/payload").get<std::uint64_t>());
            }
            if (j.contains("source_ids")) s.set_source_ids(j.at("source_ids").get<std::vector<std::size_t>>());
            return s;
        } catch (const DomainError& e) {
            throw SchemaError("", e.what());
        }
    });
}

Json nodeset_to_json(const NodeSet& h) { return {{"v", kSchemaVersion}, {"members", h}}; }

NodeSet nodeset_from_json(const StagedTree& s, const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        auto raw = j.is_array() ? j.get<std::vector<NodeId>>() : field(j, "members", "").get<std::vector<NodeId>>();
        for (auto x : raw) {
            if (x >= s.size()) throw SchemaError("/members", "node " + std::to_string(x) + " out of range");
        }
        return make_node_set(s, std::move(raw));
    });
}

Json map_to_json(const RegressiveMap& m) {
    Json map = Json::object();
    for (const auto& [x, w] : m.image) map[std::to_string(x)] = w;
    return {{"v", kSchemaVersion}, {"map", map}};
}

RegressiveMap map_from_json(const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        RegressiveMap m;
        for (const auto& [k, v] : field(j, "map", "").items()) {
            std::size_t used = 0;
            NodeId x = 0;
            try {
                x = std::stoull(k, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != k.size()) throw SchemaError("/map/" + k, "member key must be a node id");
            m.image[x] = v.get<NodeId>();
        }
        return m;
    });
}

Json violator_to_json(const HallViolator& v) {
    return {{"members", v.members}, {"neighbourhood", v.neighbourhood}};
}

Json verdict_to_json(const SimplicityVerdict& v) {
    Json j{{"v", kSchemaVersion}, {"simple", v.simple}};
    if (v.simple) {
        j["witness"] = map_to_json(v.witness)["map"];
    } else {
        j["violator"] = violator_to_json(v.violator);
    }
    return j;
}

Json partition_to_json(const OpenPartition& p) { return {{"v", kSchemaVersion}, {"cells", p.cells}}; }

OpenPartition partition_from_json(const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        return OpenPartition{field(j, "cells", "").get<std::vector<std::vector<NodeId>>>()};
    });
}

Json points_to_json(const std::vector<Point>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(point_json(p));
    return a;
}

std::vector<Point> points_from_json(const SpaceDescriptor& k, const Json& j) {
    if (!j.is_array()) throw SchemaError("", "point list must be an array");
    std::vector<Point> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from(k, j[i], "/" + std::to_string(i)));
    return out;
}

Json metric_to_json(const MetricTable& m) {
    Json d = Json::array();
    for (const auto& row : m.d) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(render_rational(v));
        d.push_back(r);
    }
    return {{"v", kSchemaVersion}, {"points", points_to_json(m.points)}, {"d", d}};
}

MetricTable metric_from_json(const SpaceDescriptor& k, const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        MetricTable m;
        m.points = points_from_json(k, field(j, "points", ""));
        for (const auto& row : field(j, "d", "")) {
            std::vector<Rational> r;
            for (const auto& v : row) {
                try {
                    r.push_back(v.is_number_integer() ? Rational(v.get<std::int64_t>()) : parse_rational(v.get<std::string>()));
                } catch (const DomainError& e) {
                    throw SchemaError("/d", e.what());
                }
            }
            m.d.push_back(std::move(r));
        }
        if (auto why = m.validate(); !why.empty()) throw SchemaError("/d", why);
        return m;
    });
}

Json family_to_json(const Family& f) {
    Json a = Json::array();
    for (const auto& s : f) {
        a.push_back({{"gap", {point_json(s.x), point_json(s.y)}},
                     {"n", s.n},
                     {"cut", {point_json(s.cut_lo), point_json(s.cut_hi)}},
                     {"jump", render_rational(s.jump)}});
    }
    return {{"v", kSchemaVersion}, {"family", a}};
}

Family family_from_json(const SpaceDescriptor& k, const Json& j) {
    return decode("", [&] {
        check_version(j, "");
        Family out;
        const auto& a = field(j, "family", "");
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string where = "/family/" + std::to_string(i);
            const auto& e = a[i];
            StepFunction f;
            const auto& gap = field(e, "gap", where);
            const auto& cut = field(e, "cut", where);
            f.x = point_from(k, gap.at(0), where + "/gap/0");
            f.y = point_from(k, gap.at(1), where + "/gap/1");
            f.cut_lo = point_from(k, cut.at(0), where + "/cut/0");
            f.cut_hi = point_from(k, cut.at(1), where + "/cut/1");
            f.n = field(e, "n", where).get<std::uint32_t>();
            try {
                f.jump = e.contains("jump") ? parse_rational(e.at("jump").get<std::string>())
                                            : Rational(1, static_cast<std::int64_t>(f.n));
            } catch (const DomainError& err) {
                throw SchemaError(where + "/jump", err.what());
            }
            out.push_back(std::move(f));
        }
        return out;
    });
}

Json ln_to_json(const LnDecomposition& d) {
    Json levels = Json::array();
    for (const auto& l : d.levels) levels.push_back(points_to_json(l));
    return {{"v", kSchemaVersion}, {"levels", levels}, {"nested", d.nested}, {"gap_identity", d.gap_identity}};
}

Json dense_to_json(const DenseSetRecord& d) {
    Json m = Json::array();
    for (const auto& mn : d.m) m.push_back(points_to_json(mn));
    Json boxes = Json::array();
    for (const auto& b : d.boxes) {
        Json box = Json::array();
        for (const auto& [q, r] : b.box) box.push_back({render_rational(q), render_rational(r)});
        boxes.push_back({{"pair", b.pair},
                         {"lower", b.lower ? point_json(*b.lower) : Json(nullptr)},
                         {"upper", b.upper ? point_json(*b.upper) : Json(nullptr)},
                         {"box", box},
                         {"z", point_json(b.z)}});
    }
    return {{"v", kSchemaVersion},
            {"D", points_to_json(d.d)},
            {"M", m},
            {"boxes", boxes},
            {"denominator_bound", d.denominator_bound}};
}

std::string tree_to_dot(const PartitionTree& t) {
    std::ostringstream out;
    out << "digraph tree {\n  node [shape=box];\n";
    for (const auto& n : t.nodes) {
        out << "  n" << n.id << " [label=\"[" << render_point(n.interval.lo) << ", " << render_point(n.interval.hi)
            << "]\\nlevel " << render(n.level) << "\"];\n";
    }
    for (const auto& n : t.nodes) {
        for (auto c : n.children) out << "  n" << n.id << " -> n" << c << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string staged_to_dot(const StagedTree& s, const OpenPartition* p) {
    static const char* palette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
    std::vector<std::size_t> idx;
    if (p) idx = p->cell_index(s.size());
    std::ostringstream out;
    out << "digraph staged {\n  node [shape=ellipse, style=filled, fillcolor=white];\n";
    for (NodeId x = 0; x < s.size(); ++x) {
        out << "  n" << x << " [label=\"" << x << " @" << s.level(x);
        if (s.has_payload()) out << "\\n[" << s.interval(x).lo << ", " << s.interval(x).hi << "]";
        out << "\"";
        if (s.in_pool(s.level(x))) out << ", penwidth=2";
        if (p && idx[x] != kNoNode) out << ", fillcolor=\"" << palette[idx[x] % std::size(palette)] << "\"";
        out << "];\n";
    }
    for (NodeId x = 0; x < s.size(); ++x) {
        if (s.parent(x) != kNoNode) out << "  n" << s.parent(x) << " -> n" << x << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace ordfrag
