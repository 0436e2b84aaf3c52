#pragma once

#include <string>

#include <json.hpp>

#include "amplitude.hpp"
#include "diagram.hpp"
#include "rewrite.hpp"
#include "tensor.hpp"

namespace zxh {

using json = nlohmann::ordered_json;

json amp_to_json(const AmplitudeFn& a);
AmplitudeFn amp_from_json(const json& j);

json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);
Diagram diagram_from_text(const std::string& text);

json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const json& j);

// Integers, reals, [re, im] pairs and amplitude objects.
json params_to_json(const Params& p);
Params params_from_json(const json& j);
Param param_from_text(const std::string& text);

json suite_to_json(const std::vector<SuiteCell>& cells);

}  // namespace zxh
