#pragma once

#include "monolab/certify.hpp"
#include "monolab/core.hpp"
#include "monolab/iterate.hpp"

#include <json.hpp>

#include <string>

namespace monolab {

using json = nlohmann::ordered_json;

// Vector      -> [x0, x1, ...]
// SetValue    -> {"kind": "empty"} | {"kind": "singleton", "v": [...]}
//                | {"kind": "ray", "direction": [...]}
// Certificate -> object with every field; absent optionals are null
// Trace       -> object mirroring IterationTrace
void to_json(json& j, const Vector& v);
void to_json(json& j, const SetValue& s);
void to_json(json& j, const Certificate& c);
void to_json(json& j, const IterationTrace& t);

/// Throws InvalidInput on malformed documents.
Vector vector_from_json(const json& j);
SetValue set_value_from_json(const json& j);

/// CSV with header "n,x,norm,theta,ratio"; x is semicolon-joined, numbers carry
/// 17 significant digits, undefined cells are empty.
std::string trace_to_csv(const IterationTrace& t);

/// %.17g formatting.
std::string format_double(double v);

} // namespace monolab
