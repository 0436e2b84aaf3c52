#pragma once

#include <string>
#include <vector>

#include "diagram.hpp"
#include "rewrite.hpp"
#include "tensor.hpp"

namespace zxh {

struct GadgetInfo {
    std::string name;
    std::vector<std::string> params;
};

const std::vector<GadgetInfo>& gadgets();

Diagram build_gadget(const std::string& name, const Params& params, const Context& ctx);
// Closed-form operator at the well-tempered normalisation.
Tensor gadget_target(const std::string& name, const Params& params, const Context& ctx);

// m inputs; sends the all-U_D input to nu^m * alpha and every other basis input to nu^m.
Diagram mbox_gadget(int m, cd alpha, const Context& ctx);

// Requires the well-tempered nu.
Diagram normal_form(const Tensor& omega, const Context& ctx);

}  // namespace zxh
