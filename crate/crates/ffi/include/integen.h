#ifndef INTEGEN_H
#define INTEGEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which string of a pair to fetch.
 */
typedef enum IntegenField {
  INTEGEN_FIELD_INTEGRAND_INFIX = 0,
  INTEGEN_FIELD_INTEGRAL_INFIX = 1,
  /**
   * Space-separated prefix tokens.
   */
  INTEGEN_FIELD_INTEGRAND_PREFIX = 2,
  INTEGEN_FIELD_INTEGRAL_PREFIX = 3,
  INTEGEN_FIELD_METHOD = 4,
  INTEGEN_FIELD_TOWER = 5,
} IntegenField;

/**
 * Result code of every fallible call.
 */
typedef enum IntegenStatus {
  INTEGEN_STATUS_OK = 0,
  INTEGEN_STATUS_NULL_POINTER = 1,
  INTEGEN_STATUS_INVALID_UTF8 = 2,
  INTEGEN_STATUS_INVALID_ARGUMENT = 3,
  INTEGEN_STATUS_INVALID_CONFIG = 4,
  INTEGEN_STATUS_PARSE = 5,
  INTEGEN_STATUS_GENERATION = 6,
  INTEGEN_STATUS_MATH = 7,
  INTEGEN_STATUS_OUT_OF_RANGE = 8,
  INTEGEN_STATUS_INTERNAL = 9,
  INTEGEN_STATUS_PANIC = 10,
} IntegenStatus;

/**
 * Generator settings.
 */
typedef struct IntegenConfig IntegenConfig;

/**
 * Generated pairs, in index order.
 */
typedef struct IntegenDataset IntegenDataset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library; static, do not free.
 */
const char *integen_version(void);

/**
 * Copy of the last error message on this thread, or NULL when the last
 * call succeeded. Free with [`integen_string_free`].
 */
char *integen_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void integen_string_free(char *s);

/**
 * New configuration with default settings and the given seed.
 */
struct IntegenConfig *integen_config_new(uint64_t seed);

void integen_config_free(struct IntegenConfig *cfg);

/**
 * `poly`, `sqfree`, `hermite`, `mixed`, or NULL for the default mix.
 */
enum IntegenStatus integen_config_set_method(struct IntegenConfig *cfg, const char *method);

/**
 * `log`, `exp` or `random`.
 */
enum IntegenStatus integen_config_set_extension(struct IntegenConfig *cfg, const char *extension);

enum IntegenStatus integen_config_set_tower_height(struct IntegenConfig *cfg, size_t height);

enum IntegenStatus integen_config_set_max_theta_degree(struct IntegenConfig *cfg, size_t degree);

/**
 * Enables or disables arctangent factors. Unless set, they are used on
 * every extension choice except `exp`.
 */
enum IntegenStatus integen_config_set_arctan_factors(struct IntegenConfig *cfg, bool enabled);

/**
 * Checks the configuration without generating anything.
 */
enum IntegenStatus integen_config_validate(const struct IntegenConfig *cfg);

/**
 * Generates `count` pairs into a new dataset written to `*out`.
 */
enum IntegenStatus integen_generate(const struct IntegenConfig *cfg,
                                    size_t count,
                                    struct IntegenDataset **out);

void integen_dataset_free(struct IntegenDataset *ds);

/**
 * Number of pairs, 0 for NULL.
 */
size_t integen_dataset_len(const struct IntegenDataset *ds);

/**
 * Copies a field of pair `index` into a new string at `*out`.
 */
enum IntegenStatus integen_dataset_get(const struct IntegenDataset *ds,
                                       size_t index,
                                       enum IntegenField field,
                                       char **out);

/**
 * The whole dataset as JSON Lines in a new string at `*out`.
 */
enum IntegenStatus integen_dataset_to_jsonl(const struct IntegenDataset *ds, char **out);

/**
 * Checks one pair given as space-separated prefix tokens and writes
 * whether the derivative of the integral equals the integrand.
 */
enum IntegenStatus integen_verify_prefix(const char *integrand, const char *integral, bool *passed);

/**
 * Verifies every record of a JSON Lines document; unreadable records
 * count as failures.
 */
enum IntegenStatus integen_verify_jsonl(const char *jsonl, size_t *passed, size_t *failed);

/**
 * Parses space-separated prefix tokens and writes the infix form of the
 * expression to `*out`.
 */
enum IntegenStatus integen_prefix_to_infix(const char *tokens, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTEGEN_H */
