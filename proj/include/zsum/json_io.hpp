#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "zsum/constructive.hpp"
#include "zsum/invariants.hpp"
#include "zsum/inverse.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

using nlohmann::json;

enum class OutputFormat { Json, Csv, Text };
std::string format_name(OutputFormat f);
OutputFormat format_from_name(const std::string& name);

json group_spec_to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const json& j);  // throws SchemaError

// {"group": {...}, "terms": [{"label": "y", "mult": 7}, ...]}, terms sorted
// by element id.
json sequence_to_json(const Sequence& s);

// Binds the sequence to `g`; the file's group spec must match g.spec()
// (GroupMismatch otherwise). Labels like "y^9" over n = 8 are normalized with
// a note appended to `warnings`. Throws SchemaError / UnknownLabel.
Sequence sequence_from_json(const json& j, const GroupTable& g,
                            std::vector<std::string>* warnings = nullptr);
Sequence parse_sequence_file(const std::string& path, const GroupTable& g,
                             std::vector<std::string>* warnings = nullptr);

// Resolve a possibly unnormalized label ("y^9", "x*y^10") to an element,
// recording a note when normalization changed it. Throws UnknownLabel.
ElementId parse_label(const GroupTable& g, const std::string& label,
                      std::vector<std::string>* warnings = nullptr);

json certificate_to_json(const Certificate& c);
json search_stats_to_json(const SearchStats& st);  // omits wall time: reports
                                                   // must be byte-deterministic
json invariant_report_to_json(const GroupTable& g, const InvariantReport& r);
json inequality_report_to_json(const InequalityReport& r);
json inverse_report_to_json(const GroupTable& g, const InverseReport& r);
json extraction_result_to_json(const ExtractionResult& r);

// Deterministic rendering: sorted keys (nlohmann's std::map ordering), stable
// sequence ordering. Csv flattens top-level scalar fields only.
std::string emit_report(const json& report, OutputFormat f);

}  // namespace zsum
