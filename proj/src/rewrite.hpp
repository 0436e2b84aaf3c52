#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "amplitude.hpp"
#include "diagram.hpp"
#include "measure.hpp"

namespace zxh {

using Param = std::variant<int64_t, double, cd, AmplitudeFn>;
using Params = std::map<std::string, Param>;
using Rng = std::mt19937_64;

int64_t param_int(const Params& p, const std::string& name);
double param_real(const Params& p, const std::string& name);
cd param_complex(const Params& p, const std::string& name);
const AmplitudeFn& param_amp(const Params& p, const std::string& name);

enum class NuRequirement { any, well_tempered };

struct RuleSpec {
    std::string id;
    std::vector<std::string> params;
    NuRequirement nu = NuRequirement::well_tempered;
    // Largest dimension checked; 0 means unbounded.
    int64_t max_dim = 0;
    // Throws Errc::param when the assignment is invalid for the dimension.
    std::function<void(const Context&, const Params&)> domain;
    // Returns nothing when the dimension admits no valid assignment.
    std::function<std::optional<Params>(const Context&, Rng&)> sample;
    std::function<std::pair<Diagram, Diagram>(const Context&, const Params&)> build;
};

const std::vector<RuleSpec>& catalog();
const RuleSpec* find_rule(const std::string& id);

std::pair<Diagram, Diagram> instantiate(const RuleSpec& rule, const Params& params, const Context& ctx);

struct SoundnessReport {
    double max_err = 0.0;
    bool pass = false;
};

SoundnessReport check_soundness(const RuleSpec& rule, const Params& params, const Context& ctx, double tol);

enum class CellStatus { pass, fail, skip };

struct SuiteCell {
    std::string rule;
    int64_t dim = 0;
    int sample = 0;
    Params params;
    double max_err = 0.0;
    CellStatus status = CellStatus::skip;
    std::string note;
    double nu = 0.0;
};

struct SuiteOptions {
    int64_t dim_lo = 2;
    int64_t dim_hi = 6;
    int samples = 5;
    uint64_t seed = 0;
    double tol = 1e-8;
    std::optional<double> nu;  // empty: well-tempered
    std::vector<std::string> rules;  // empty: all
};

std::vector<SuiteCell> check_all(const SuiteOptions& opt);
const char* status_name(CellStatus s);

// Anchor: lhs node id -> host node id.
Diagram apply(const Diagram& host, const RuleSpec& rule, const Params& params,
              const std::map<std::string, std::string>& anchor, const Context& ctx);

// Shared sampling helpers.
int64_t sample_unit(const Context& ctx, Rng& rng);
int64_t sample_label(const Context& ctx, Rng& rng);
double sample_angle(Rng& rng);
cd sample_alpha(Rng& rng);
AmplitudeFn sample_amplitude(const Context& ctx, Rng& rng, bool all_integers);
// Inverse of a unit as a stabiliser label: modulo 2D for even D, D for odd D.
int64_t label_inverse(const Context& ctx, int64_t u);

}  // namespace zxh
