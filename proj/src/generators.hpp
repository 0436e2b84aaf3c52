#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amplitude.hpp"
#include "measure.hpp"
#include "tensor.hpp"

namespace zxh {

enum class Kind { green, red, hplus, hminus, white, hbox, gray, notdot };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& s);

// Legs 0..m-1 are inputs, m..m+n-1 outputs. Every kind is flexsymmetric, so
// the split only fixes the tensor orientation.
struct Generator {
    Kind kind = Kind::white;
    AmplitudeFn amp = amp::One{};
    int64_t c = 0;
    int m = 0;
    int n = 0;

    int legs() const { return m + n; }
    bool copies() const { return kind == Kind::green || kind == Kind::white; }
};

Generator green(AmplitudeFn a, int m, int n);
Generator red(AmplitudeFn a, int m, int n);
Generator white(int m, int n);
Generator gray(int m, int n);
Generator hbox(AmplitudeFn a, int m, int n);
Generator hplus();
Generator hminus();
Generator notdot(int64_t c);

void validate(const Context& ctx, const Generator& g);
bool same_generator(const Generator& a, const Generator& b);

// Entry of the generator tensor at the given leg labels (values in [D]).
class Kernel {
public:
    Kernel(const Context& ctx, const Generator& g);
    cd operator()(const int64_t* labels) const;

private:
    const Context& ctx_;
    const Generator& g_;
    double scale_ = 1.0;
    std::vector<cd> red_;
};

Tensor eval_generator(const Context& ctx, const Generator& g);
Generator adjoint(const Context& ctx, const Generator& g);

}  // namespace zxh
