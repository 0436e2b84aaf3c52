#ifndef ZXH_ZXH_H
#define ZXH_ZXH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZXH_API __declspec(dllexport)
#else
#define ZXH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
enum zxh_status {
    ZXH_OK = 0,
    ZXH_ERR_PARAM = 1,
    ZXH_ERR_PARSE = 2,
    ZXH_ERR_SEMANTIC = 3,
    ZXH_ERR_OVERFLOW = 4,
    ZXH_ERR_DOMAIN = 5,
    ZXH_ERR_SHAPE = 6,
    ZXH_ERR_TOO_LARGE = 7,
    ZXH_ERR_MATCH = 8,
    ZXH_ERR_INTERNAL = 100
};

typedef struct zxh_context zxh_context;
typedef struct zxh_diagram zxh_diagram;
typedef struct zxh_tensor zxh_tensor;

/* Message for the last failure on the calling thread; empty after success. */
ZXH_API const char* zxh_last_error(void);
/* Releases strings returned through char** out-parameters. */
ZXH_API void zxh_string_free(char* s);

/* Well-tempered context, nu = D^(-1/4). */
ZXH_API int zxh_context_create(int64_t dim, zxh_context** out);
ZXH_API int zxh_context_create_nu(int64_t dim, double nu, zxh_context** out);
ZXH_API void zxh_context_destroy(zxh_context* ctx);
ZXH_API int64_t zxh_context_dim(const zxh_context* ctx);
/* {"D", "L", "U", "sigma", "nu", "well_tempered", "tau", "omega"} */
ZXH_API int zxh_context_info(const zxh_context* ctx, char** json_out);

/* Accepts the JSON diagram format or the line-based text format. */
ZXH_API int zxh_diagram_parse(const char* text, zxh_diagram** out);
ZXH_API int zxh_diagram_to_json(const zxh_diagram* d, char** json_out);
ZXH_API void zxh_diagram_destroy(zxh_diagram* d);
ZXH_API int64_t zxh_diagram_dim(const zxh_diagram* d);
ZXH_API int zxh_diagram_boundary(const zxh_diagram* d, int* inputs, int* outputs);
ZXH_API int zxh_diagram_adjoint(const zxh_context* ctx, const zxh_diagram* d, zxh_diagram** out);
/* parallel != 0: side by side; otherwise `first` then `second`. */
ZXH_API int zxh_diagram_compose(const zxh_diagram* first, const zxh_diagram* second, int parallel,
                                zxh_diagram** out);
ZXH_API int zxh_evaluate(const zxh_context* ctx, const zxh_diagram* d, zxh_tensor** out);

ZXH_API int zxh_tensor_parse(const char* json, zxh_tensor** out);
ZXH_API int zxh_tensor_to_json(const zxh_tensor* t, char** json_out);
ZXH_API void zxh_tensor_destroy(zxh_tensor* t);
ZXH_API int zxh_tensor_shape(const zxh_tensor* t, int64_t* dim, int* in_legs, int* out_legs, size_t* size);
ZXH_API int zxh_tensor_entry(const zxh_tensor* t, size_t index, double* re, double* im);
ZXH_API int zxh_tensor_max_abs_diff(const zxh_tensor* a, const zxh_tensor* b, double* out);

/* [{"id", "params", "nu", "max_dim"}] */
ZXH_API int zxh_rule_list(char** json_out);
ZXH_API int zxh_rule_instantiate(const zxh_context* ctx, const char* rule, const char* params_json,
                                 zxh_diagram** lhs, zxh_diagram** rhs);
ZXH_API int zxh_rule_check(const zxh_context* ctx, const char* rule, const char* params_json, double tol,
                           double* max_err, int* pass);
/* anchor_json maps rule-side node ids to host node ids. */
ZXH_API int zxh_rule_apply(const zxh_context* ctx, const zxh_diagram* host, const char* rule,
                           const char* params_json, const char* anchor_json, zxh_diagram** out);
/* Options: {"dim_lo", "dim_hi", "samples", "seed", "tol", "nu", "rules"}; all optional.
   Writes the suite report and the number of failed cells. */
ZXH_API int zxh_check_suite(const char* options_json, char** report_json, int* failures);

/* [{"name", "params"}] */
ZXH_API int zxh_gadget_list(char** json_out);
ZXH_API int zxh_gadget_build(const zxh_context* ctx, const char* name, const char* params_json, zxh_diagram** out);
ZXH_API int zxh_gadget_target(const zxh_context* ctx, const char* name, const char* params_json, zxh_tensor** out);
ZXH_API int zxh_mbox_gadget(const zxh_context* ctx, int m, double alpha_re, double alpha_im, zxh_diagram** out);
ZXH_API int zxh_normal_form(const zxh_context* ctx, const zxh_tensor* omega, zxh_diagram** out);

ZXH_API int zxh_gauss_sum(int64_t r, int64_t s, int64_t n, double* re, double* im);
/* t receives the magnitude class: |value| = sqrt(t), or 0 when zero != 0. */
ZXH_API int zxh_gamma(const zxh_context* ctx, int64_t a, int64_t b, double* re, double* im, int64_t* t,
                      int* zero);
/* CSV with header a,b,D,re,im,magnitude_class over a, b in [D] for each D in the range. */
ZXH_API int zxh_gamma_table(int64_t dim_lo, int64_t dim_hi, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif
