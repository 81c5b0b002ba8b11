#pragma once

#include "scatter/quiver.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace scatter {

using Json = nlohmann::json; // std::map objects, so keys are emitted sorted

// Schema violation; the message starts with the path to the offending field.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json to_json(const Rational& r);
Json to_json(const LatticeVector& v);
Json to_json(const Point2& p);
Json to_json(const Coefficient& c);
Json to_json(const LieElement& g);
Json to_json(const AlgebraElement& a);
Json to_json(const SupportR2& s);
Json to_json(const Wall& w);
Json to_json(const Diagram& d);
Json to_json(const BrokenLine& l);
Json to_json(const TreeInfo& t);
Json to_json(const TreeFamily& f);
Json to_json(const QuiverData& q);
Json context_json(const LieContext& ctx);

Rational rational_from_json(const Json& j, const std::string& path);
LatticeVector vector_from_json(const Json& j, const std::string& path);
Point2 point_from_json(const Json& j, const std::string& path);
Coefficient coefficient_from_json(const Json& j, const std::string& path);
LieElement lie_from_json(const Json& j, const ContextPtr& ctx, const std::string& path);
AlgebraElement algebra_from_json(const Json& j, const ContextPtr& ctx, const std::string& path);
SupportR2 support_from_json(const Json& j, const std::string& path);
ContextPtr context_from_json(const Json& j, const std::string& path);
Diagram diagram_from_json(const Json& j, const std::string& path = "$");
QuiverData quiver_from_json(const Json& j, const std::string& path = "$");

// Canonical text: two-space indent, sorted keys, trailing newline.
std::string dump(const Json& j);
Json read_json_file(const std::string& path);
// Write to a temporary sibling, then rename over the target.
void write_file_atomic(const std::string& path, const std::string& content);

struct SvgOptions {
    int order = 0; // 0: diagram order
    std::vector<BrokenLine> lines;
    const TreeFamily* trees = nullptr; // draws tree supports with nonzero multiplicity
};

// Walls as polylines, joints as dots, broken lines as polylines with bend labels.
std::string render_svg(const Diagram& d, const SvgOptions& opt = {});

} // namespace scatter
