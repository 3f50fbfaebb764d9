#pragma once

#include "aldc/core.hpp"
#include "aldc/partition.hpp"
#include "aldc/qquery.hpp"
#include "aldc/reduction.hpp"
#include "aldc/spectral.hpp"
#include "aldc/tiling.hpp"
#include "aldc/types.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace aldc::io {

using json = nlohmann::ordered_json;

/// Parses a version-1 code document. Every structural error is distinct
/// and carries its location (byte position for syntax errors, the JSON
/// path for semantic ones).
CodeConfig parse(const std::string& text);

/// Renders a code document that parses back bit-exactly.
std::string render(const CodeConfig& code);

CodeConfig load(const std::string& path);
void save(const CodeConfig& code, const std::string& path);

json to_json(const CodeConfig& code);
CodeConfig config_from_json(const json& doc);

json to_json(const VerificationReport& report);
json to_json(const ReductionTrace& trace);
json to_json(const BucketTrace& trace);
json to_json(const Cut& cut);
json to_json(const CutCertificate& cert);
json to_json(const LevelSchedule& schedule);
json to_json(const TilingCertificate& cert);
json to_json(const WitnessBound& bound);
json to_json(const SpectralReport& report);
json to_json(const NckResult& result);
json to_json(const OneQueryBound& bound);
json to_json(const BoundedCodeBound& bound);
json to_json(const RankCheck& check);

}  // namespace aldc::io
