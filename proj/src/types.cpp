#include "aldc/types.hpp"

#include <cmath>
#include <set>

namespace aldc {

std::size_t CodeConfig::total_tuples() const {
    std::size_t total = 0;
    for (const auto& m : matchings) total += m.tuples.size();
    return total;
}

double CodeConfig::density() const {
    if (d <= 0 || points.empty()) return 0.0;
    return static_cast<double>(total_tuples()) / (static_cast<double>(d) * static_cast<double>(n()));
}

const DirectionMatching* CodeConfig::matching_for(int direction) const {
    for (const auto& m : matchings) {
        if (m.direction == direction) return &m;
    }
    return nullptr;
}

void CodeConfig::validate() const {
    if (d < 1) throw ValidationError("dimension d must be at least 1");
    if (q < 1) throw ValidationError("query count q must be at least 1");
    if (points.empty()) throw ValidationError("code must contain at least one point");
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != d) {
            throw ValidationError("point " + std::to_string(j) + " has length " +
                                  std::to_string(points[j].size()) + ", expected d=" +
                                  std::to_string(d));
        }
        for (int c = 0; c < d; ++c) {
            if (!std::isfinite(points[j][c])) {
                throw ValidationError("point " + std::to_string(j) + " coordinate " +
                                      std::to_string(c) + " is not finite");
            }
        }
    }
    std::set<int> seen;
    for (const auto& m : matchings) {
        if (m.direction < 0 || m.direction >= d) {
            throw ValidationError("matching direction " + std::to_string(m.direction) +
                                  " out of range [0," + std::to_string(d) + ")");
        }
        if (!seen.insert(m.direction).second) {
            throw ValidationError("duplicate matching for direction " +
                                  std::to_string(m.direction));
        }
        std::set<Index> used;
        for (const auto& t : m.tuples) {
            if (t.size() != static_cast<std::size_t>(q)) {
                throw ValidationError("direction " + std::to_string(m.direction) +
                                      ": tuple has " + std::to_string(t.size()) +
                                      " indices, expected q=" + std::to_string(q));
            }
            for (std::size_t p = 0; p < t.size(); ++p) {
                if (t[p] >= n()) {
                    throw ValidationError("direction " + std::to_string(m.direction) +
                                          ": point index " + std::to_string(t[p]) +
                                          " out of range [0," + std::to_string(n()) + ")");
                }
                if (p > 0 && t[p] <= t[p - 1]) {
                    throw ValidationError("direction " + std::to_string(m.direction) +
                                          ": tuple indices must be strictly increasing");
                }
                if (!used.insert(t[p]).second) {
                    throw ValidationError("matching not disjoint in direction " +
                                          std::to_string(m.direction) + ": index " +
                                          std::to_string(t[p]) + " reused");
                }
            }
        }
    }
}

}  // namespace aldc
