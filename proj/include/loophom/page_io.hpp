#pragma once

#include "loophom/ss_engine.hpp"

#include "json.hpp"

#include <string>

namespace loophom {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json to_json(const Int& v);
Json to_json(const AbelianGroup& g);

/// Stable dump: page_index, variance, window, cells {p, q, free_rank, torsion, basis},
/// differentials {source, target, entries} for the given d_r (if any).
Json page_to_json(const Page& page, const Differential* d = nullptr);

/// Text grid, q increasing upward and p rightward, followed by the arrows of d (if any) between nonempty cells
/// as annotated source -> target pairs.
std::string render_diagram(const Page& page, const Differential* d = nullptr);

}  // namespace loophom
