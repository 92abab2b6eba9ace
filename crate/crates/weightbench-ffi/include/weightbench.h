#ifndef WEIGHTBENCH_H
#define WEIGHTBENCH_H

/* Generated by cbindgen from the weightbench-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code for every fallible entry point.
 */
typedef enum WbStatus {
  WB_STATUS_OK = 0,
  /**
   * null pointer, non-UTF-8 text, or an out-parameter missing
   */
  WB_STATUS_INVALID_ARGUMENT = 1,
  /**
   * malformed group / automorphism / pair text
   */
  WB_STATUS_PARSE_ERROR = 2,
  /**
   * an element or chain cap was exceeded
   */
  WB_STATUS_CAP_EXCEEDED = 3,
  WB_STATUS_NOT_AN_AUTOMORPHISM = 4,
  /**
   * bad prime, coprimality failure, or another checked precondition
   */
  WB_STATUS_PRECONDITION_VIOLATED = 5,
  WB_STATUS_INTERNAL_ERROR = 6,
} WbStatus;

/**
 * Opaque handle to a loaded permutation group.
 */
typedef struct WbGroup WbGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a group from `degree N` + cycle-notation text (same format as
 * the CLI's .grp files).  On success `*out` owns the new handle.
 */
enum WbStatus wb_group_parse(const char *text, uintptr_t cap_elements, struct WbGroup **out);

void wb_group_free(struct WbGroup *group);

/**
 * Group order, or 0 for a null handle.
 */
uint64_t wb_group_order(const struct WbGroup *group);

/**
 * Number of permuted points, or 0 for a null handle.
 */
uint32_t wb_group_degree(const struct WbGroup *group);

/**
 * Brauer-count versus weight-count comparison; `*out` receives the JSON
 * report.
 */
enum WbStatus wb_alperin_check_json(const struct WbGroup *group, uint64_t prime, char **out);

/**
 * The three-way alternating-sum comparison; `*out` receives the JSON
 * report.
 */
enum WbStatus wb_alternating_sums_json(const struct WbGroup *group,
                                       uint64_t prime,
                                       uintptr_t cap_chains,
                                       char **out);

/**
 * Equivariant orbit-count comparison under the automorphism described
 * by `auto_text` (same format as the CLI's .auto files).
 */
enum WbStatus wb_equivariant_check_json(const struct WbGroup *group,
                                        uint64_t prime,
                                        const char *auto_text,
                                        char **out);

/**
 * Exhaustive fixed-rank bucket sweep for the cyclic order `m`; pass
 * `prime = 0` to skip the coprimality requirement.
 */
enum WbStatus wb_cyclic_sweep_json(uint64_t m, uint64_t prime, char **out);

/**
 * Fixed-rank comparison of the two twisted subgroups described by
 * `spec_text` (two lines of `t u` pairs, as for the CLI's --spec).
 */
enum WbStatus wb_pair_ranks_json(uint64_t m, uint64_t prime, const char *spec_text, char **out);

/**
 * Release a string returned through any `*_json` out-parameter.
 */
void wb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEIGHTBENCH_H */
