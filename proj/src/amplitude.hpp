#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "measure.hpp"

namespace zxh::amp {

struct One {};
struct Zero {};
struct Phase {
    double theta;
};
// Indexed by the labels lo..hi of [D].
struct PhaseVec {
    std::vector<double> thetas;
};
// t -> tau^(2at + bt^2)
struct Stab {
    int64_t a;
    int64_t b;
};
struct Char {
    int64_t c;
};
struct UnitPow {
    cd alpha;
};
// Indexed by the labels lo..hi of [D].
struct Table {
    std::vector<cd> values;
};
struct MBox {
    int64_t k;
    cd alpha;
};
struct Sign {
    std::vector<int64_t> set;
};
struct Indicator {
    std::vector<int64_t> set;
};

}  // namespace zxh::amp

namespace zxh {

using AmplitudeFn = std::variant<amp::One, amp::Zero, amp::Phase, amp::PhaseVec, amp::Stab, amp::Char, amp::UnitPow,
                                 amp::Table, amp::MBox, amp::Sign, amp::Indicator>;

bool residues_only(const AmplitudeFn& a);
std::string amp_name(const AmplitudeFn& a);
void amp_validate(const Context& ctx, const AmplitudeFn& a);
cd amp_eval(const Context& ctx, const AmplitudeFn& a, int64_t t);
AmplitudeFn amp_multiply(const Context& ctx, const AmplitudeFn& a, const AmplitudeFn& b);
// Pointwise complex conjugate.
AmplitudeFn amp_conj(const AmplitudeFn& a);
// k -> conj(f(residue(-k))); the amplitude of an adjoint red dot.
AmplitudeFn amp_conj_reflect(const Context& ctx, const AmplitudeFn& a);
// Tabulate over [D].
AmplitudeFn amp_table(const Context& ctx, const AmplitudeFn& a);
bool amp_equal(const AmplitudeFn& a, const AmplitudeFn& b);

}  // namespace zxh
