#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "littlewood/errors.hpp"
#include "littlewood/tensor.hpp"

namespace littlewood {

/// Tensor document:
///   {"m": int, "dims": [int, ...], "entries": [{"idx": [int, ...], "val": number}, ...]}
/// 1-based indices, entries sorted lexicographically, no zero values.
inline std::string serialize(const CoefficientTensor& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (const Entry& e : t.entries())
        entries.push_back({{"idx", e.idx}, {"val", e.val}});
    const nlohmann::json doc = {{"m", t.arity()}, {"dims", t.dims()}, {"entries", entries}};
    return doc.dump();
}

inline CoefficientTensor deserialize(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("tensor document is not valid JSON: ") + e.what());
    }

    try {
        if (!doc.is_object() || !doc.contains("m") || !doc.contains("dims") ||
            !doc.contains("entries"))
            throw FormatError("tensor document must carry m, dims and entries");
        if (!doc["m"].is_number_integer())
            throw FormatError("field m must be an integer");
        const int m = doc["m"].get<int>();
        if (!doc["dims"].is_array())
            throw FormatError("field dims must be an array");
        std::vector<int> dims;
        for (const auto& d : doc["dims"]) {
            if (!d.is_number_integer()) throw FormatError("dims must hold integers");
            dims.push_back(d.get<int>());
        }
        if (!doc["entries"].is_array())
            throw FormatError("field entries must be an array");
        std::vector<Entry> entries;
        entries.reserve(doc["entries"].size());
        for (const auto& item : doc["entries"]) {
            if (!item.is_object() || !item.contains("idx") || !item.contains("val"))
                throw FormatError("each entry must carry idx and val");
            if (!item["idx"].is_array()) throw FormatError("entry idx must be an array");
            MultiIndex idx;
            for (const auto& v : item["idx"]) {
                if (!v.is_number_integer()) throw FormatError("entry idx must hold integers");
                idx.push_back(v.get<int>());
            }
            if (!item["val"].is_number()) throw FormatError("entry val must be a number");
            entries.push_back({std::move(idx), item["val"].get<double>()});
        }
        return CoefficientTensor(m, std::move(dims), std::move(entries));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw FormatError(std::string("invalid tensor document: ") + e.what());
    }
}

}  // namespace littlewood
