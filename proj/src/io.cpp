#include "aldc/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace aldc::io {

namespace {

const json& require(const json& doc, const char* key, const std::string& where) {
    if (!doc.contains(key)) {
        throw ValidationError(where + ": missing required field '" + key + "'");
    }
    return doc.at(key);
}

int require_int(const json& doc, const char* key, const std::string& where) {
    const json& value = require(doc, key, where);
    if (!value.is_number_integer()) {
        throw ValidationError(where + ": field '" + key + "' must be an integer");
    }
    return value.get<int>();
}

}  // namespace

json to_json(const CodeConfig& code) {
    json doc;
    doc["version"] = 1;
    doc["d"] = code.d;
    doc["q"] = code.q;
    json vectors = json::array();
    for (const auto& p : code.points) {
        json row = json::array();
        for (int i = 0; i < code.d; ++i) row.push_back(p[i]);
        vectors.push_back(std::move(row));
    }
    doc["vectors"] = std::move(vectors);
    json matchings = json::array();
    for (const auto& m : code.matchings) {
        json entry;
        entry["direction"] = m.direction;
        json tuples = json::array();
        for (const auto& t : m.tuples) {
            json tuple = json::array();
            for (Index idx : t) tuple.push_back(idx);
            tuples.push_back(std::move(tuple));
        }
        entry["tuples"] = std::move(tuples);
        matchings.push_back(std::move(entry));
    }
    doc["matchings"] = std::move(matchings);
    return doc;
}

CodeConfig config_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("document: top level must be an object");
    const int version = require_int(doc, "version", "document");
    if (version != 1) {
        throw ValidationError("document: unsupported version " + std::to_string(version));
    }
    CodeConfig code;
    code.d = require_int(doc, "d", "document");
    code.q = require_int(doc, "q", "document");

    const json& vectors = require(doc, "vectors", "document");
    if (!vectors.is_array()) throw ValidationError("vectors: must be an array");
    for (std::size_t r = 0; r < vectors.size(); ++r) {
        const json& row = vectors[r];
        const std::string where = "vectors[" + std::to_string(r) + "]";
        if (!row.is_array()) throw ValidationError(where + ": must be an array of reals");
        if (row.size() != static_cast<std::size_t>(code.d)) {
            throw ValidationError(where + ": has " + std::to_string(row.size()) +
                                  " coordinates, expected d=" + std::to_string(code.d));
        }
        RealVec v(code.d);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!row[i].is_number()) {
                throw ValidationError(where + "[" + std::to_string(i) + "]: must be a number");
            }
            v[static_cast<Eigen::Index>(i)] = row[i].get<double>();
        }
        code.points.push_back(std::move(v));
    }

    const json& matchings = require(doc, "matchings", "document");
    if (!matchings.is_array()) throw ValidationError("matchings: must be an array");
    for (std::size_t mi = 0; mi < matchings.size(); ++mi) {
        const json& entry = matchings[mi];
        const std::string where = "matchings[" + std::to_string(mi) + "]";
        if (!entry.is_object()) throw ValidationError(where + ": must be an object");
        DirectionMatching m;
        m.direction = require_int(entry, "direction", where);
        const json& tuples = require(entry, "tuples", where);
        if (!tuples.is_array()) throw ValidationError(where + ".tuples: must be an array");
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
            const json& tuple = tuples[ti];
            const std::string twhere = where + ".tuples[" + std::to_string(ti) + "]";
            if (!tuple.is_array()) throw ValidationError(twhere + ": must be an index list");
            Tuple t;
            for (const json& idx : tuple) {
                if (!idx.is_number_unsigned() && !idx.is_number_integer()) {
                    throw ValidationError(twhere + ": indices must be integers");
                }
                const auto value = idx.get<std::int64_t>();
                if (value < 0) throw ValidationError(twhere + ": indices must be nonnegative");
                t.push_back(static_cast<Index>(value));
            }
            m.tuples.push_back(std::move(t));
        }
        code.matchings.push_back(std::move(m));
    }
    code.validate();
    return code;
}

CodeConfig parse(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed document: ") + e.what());
    }
    return config_from_json(doc);
}

std::string render(const CodeConfig& code) { return to_json(code).dump(2) + "\n"; }

CodeConfig load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

void save(const CodeConfig& code, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << render(code);
}

json to_json(const VerificationReport& report) {
    json doc;
    doc["alpha_claim"] = report.alpha_claim;
    doc["achieved_alpha"] = report.achieved_alpha;
    doc["density"] = report.density;
    doc["simple"] = report.simple;
    doc["verified"] = report.verified();
    doc["tolerance"] = VerificationReport::kTolerance;
    if (report.has_pair_lengths) {
        doc["length_min"] = report.length_min;
        doc["length_max"] = report.length_max;
    } else {
        doc["length_min"] = nullptr;
        doc["length_max"] = nullptr;
    }
    json tuples = json::array();
    for (const auto& diag : report.per_tuple) {
        json entry;
        entry["direction"] = diag.direction;
        entry["tuple"] = diag.tuple;
        entry["span_weight"] = diag.span_weight;
        if (diag.degenerate) entry["degenerate"] = true;
        tuples.push_back(std::move(entry));
    }
    doc["per_tuple"] = std::move(tuples);
    doc["flagged"] = report.flagged;
    return doc;
}

json to_json(const ReductionTrace& trace) {
    json doc;
    doc["k"] = trace.k;
    doc["alpha_in"] = trace.alpha_in;
    doc["pairs_removed_step1"] = trace.pairs_removed_step1;
    doc["zero_points_discarded"] = trace.zero_points_discarded;
    doc["sign_choices"] = trace.sign_choices;
    doc["alpha_out"] = trace.alpha_out;
    doc["delta_out"] = trace.delta_out;
    doc["n_out"] = trace.n_out;
    doc["corollary_hypothesis_ok"] = trace.corollary_hypothesis_ok;
    if (!trace.warning.empty()) doc["warning"] = trace.warning;
    return doc;
}

json to_json(const BucketTrace& trace) {
    json doc;
    doc["c"] = trace.c;
    doc["buckets"] = trace.buckets;
    doc["histogram"] = trace.histogram;
    doc["chosen"] = trace.chosen;
    doc["scale"] = trace.scale;
    doc["pairs_kept"] = trace.pairs_kept;
    return doc;
}

json to_json(const Cut& cut) {
    json doc;
    doc["s1"] = cut.s1;
    doc["s2"] = cut.s2;
    doc["cut_edges"] = cut.cut_edges;
    doc["direction"] = cut.direction;
    if (cut.has_plane) doc["threshold"] = cut.threshold;
    doc["right_direction_count"] = cut.right_direction_count;
    return doc;
}

json to_json(const CutCertificate& cert) {
    json doc;
    doc["n"] = cert.n;
    doc["c_param"] = cert.c_param;
    doc["total_edges"] = cert.total_edges;
    doc["edge_budget"] = cert.edge_budget;
    doc["verified"] = cert.verified;
    json nodes = json::array();
    for (const auto& node : cert.nodes) {
        json entry;
        entry["subset_size"] = node.subset_size;
        entry["s1"] = node.s1_size;
        entry["s2"] = node.s2_size;
        entry["cut_edges"] = node.cut_edge_count;
        entry["direction"] = node.direction;
        entry["ok"] = node.ok;
        nodes.push_back(std::move(entry));
    }
    doc["nodes"] = std::move(nodes);
    if (!cert.failure.empty()) {
        doc["failure"] = cert.failure;
        doc["failed_subset"] = cert.failed_subset;
    }
    return doc;
}

json to_json(const LevelSchedule& schedule) {
    json doc;
    doc["eps"] = schedule.eps;
    doc["t"] = schedule.t;
    doc["residue"] = schedule.residue;
    doc["alpha"] = schedule.alpha;
    doc["k_min"] = schedule.k_min;
    doc["k_max"] = schedule.k_max;
    doc["grids"] = schedule.grids;
    return doc;
}

json to_json(const TilingCertificate& cert) {
    json doc;
    doc["schedule"] = to_json(cert.schedule);
    doc["kappa"] = cert.kappa;
    doc["p_bound"] = cert.p_bound;
    doc["rounds_used"] = cert.rounds_used;
    doc["good_fraction"] = cert.good_fraction;
    doc["edges_bucketed"] = cert.edges_bucketed;
    doc["edges_good"] = cert.edges_good;
    doc["delta_in"] = cert.delta_in;
    doc["delta_bucket"] = cert.delta_bucket;
    doc["delta_good"] = cert.delta_good;
    doc["cut_certificate"] = to_json(cert.cut);
    doc["implied_bound"] = cert.implied_bound;
    doc["verified"] = cert.verified;
    if (!cert.failure.empty()) doc["failure"] = cert.failure;
    return doc;
}

json to_json(const WitnessBound& bound) {
    json doc;
    doc["witness_value"] = bound.witness_value;
    doc["paper_floor"] = bound.paper_floor;
    doc["trace_norm"] = bound.trace_norm_value;
    doc["pairs"] = bound.pairs;
    doc["certified"] = bound.certified;
    return doc;
}

json to_json(const SpectralReport& report) {
    json doc;
    doc["alpha"] = report.alpha;
    doc["delta"] = report.delta;
    doc["trace_norms"] = report.trace_norms;
    doc["witness_floors"] = report.witness_floors;
    doc["lhs"] = report.lhs;
    doc["rhs"] = report.rhs;
    doc["holds"] = report.holds;
    doc["implied_bound"] = report.implied_bound;
    return doc;
}

json to_json(const NckResult& result) {
    json doc;
    doc["estimate"] = result.estimate;
    doc["std_error"] = result.std_error;
    doc["bound"] = result.bound;
    doc["holds"] = result.holds;
    return doc;
}

json to_json(const OneQueryBound& bound) {
    json doc;
    doc["alpha"] = bound.alpha;
    doc["delta"] = bound.delta;
    doc["bound"] = bound.bound == std::numeric_limits<double>::infinity()
                       ? json("inf")
                       : json(bound.bound);
    doc["holds"] = bound.holds;
    return doc;
}

json to_json(const BoundedCodeBound& bound) {
    json doc;
    doc["log_c_ceil"] = bound.log_c_ceil;
    doc["delta_prime"] = bound.delta_prime;
    doc["exponent"] = bound.exponent;
    doc["value"] = bound.value;
    return doc;
}

json to_json(const RankCheck& check) {
    json doc;
    doc["rank"] = check.rank;
    doc["holds"] = check.holds;
    doc["trace"] = check.trace;
    doc["sigma_sum"] = check.sigma_sum;
    doc["frob_sq"] = check.frob_sq;
    doc["k"] = check.k;
    return doc;
}

}  // namespace aldc::io
