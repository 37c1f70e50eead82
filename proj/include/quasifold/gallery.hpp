#pragma once

// Built-in example documents. The JSON files under data/gallery are embedded
// at build time into quasifold/gallery_data.hpp.

#include <string>
#include <string_view>
#include <vector>

#include "quasifold/document.hpp"
#include "quasifold/gallery_data.hpp"

namespace quasifold {

inline std::vector<std::string> gallery_names() {
    std::vector<std::string> out;
    for (const auto& e : gallery_data::entries) out.emplace_back(e.name);
    return out;
}

inline std::string_view gallery_source(const std::string& name) {
    for (const auto& e : gallery_data::entries)
        if (e.name == name) return e.text;
    std::string known;
    for (const auto& n : gallery_names()) known += (known.empty() ? "" : ", ") + n;
    throw input_error("unknown gallery entry '" + name + "' (available: " + known + ")");
}

inline InputDocument load_gallery(const std::string& name) {
    const auto text = gallery_source(name);
    return parse_document(json::parse(text.begin(), text.end()), "gallery:" + name);
}

}  // namespace quasifold
