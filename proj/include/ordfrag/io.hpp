#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "ordfrag/frag.hpp"
#include "ordfrag/openpart.hpp"
#include "ordfrag/ptree.hpp"
#include "ordfrag/rnwit.hpp"
#include "ordfrag/simple.hpp"
#include "ordfrag/space.hpp"
#include "ordfrag/staged.hpp"

namespace ordfrag {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or mismatched document; `where` is a JSON pointer into it.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

Json space_to_json(const SpaceDescriptor& k);
SpaceDescriptor space_from_json(const Json& j);

Json tree_to_json(const PartitionTree& t);
PartitionTree tree_from_json(const Json& j);

Json staged_to_json(const StagedTree& s);
StagedTree staged_from_json(const Json& j);

Json nodeset_to_json(const NodeSet& h);
/// Accepts a bare array or {"members": [...]}.
NodeSet nodeset_from_json(const StagedTree& s, const Json& j);

Json map_to_json(const RegressiveMap& m);
RegressiveMap map_from_json(const Json& j);

Json violator_to_json(const HallViolator& v);
Json verdict_to_json(const SimplicityVerdict& v);

Json partition_to_json(const OpenPartition& p);
OpenPartition partition_from_json(const Json& j);

Json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const SpaceDescriptor& k, const Json& j);

Json metric_to_json(const MetricTable& m);
MetricTable metric_from_json(const SpaceDescriptor& k, const Json& j);

Json family_to_json(const Family& f);
Family family_from_json(const SpaceDescriptor& k, const Json& j);

Json ln_to_json(const LnDecomposition& d);
Json dense_to_json(const DenseSetRecord& d);

std::string tree_to_dot(const PartitionTree& t);
/// Nodes of one cell share a colour when a partition is given.
std::string staged_to_dot(const StagedTree& s, const OpenPartition* p = nullptr);

}  // namespace ordfrag
