#ifndef KHI_H
#define KHI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KhiStatus {
  KHI_STATUS_OK = 0,
  KHI_STATUS_NULL_POINTER = 1,
  KHI_STATUS_INVALID_UTF8 = 2,
  KHI_STATUS_INVALID_DIAGRAM = 3,
  KHI_STATUS_RESOURCE_LIMIT = 4,
  KHI_STATUS_COMPUTATION = 5,
  KHI_STATUS_PANIC = 6,
} KhiStatus;

/**
 * `(𝔽₂, 0)`, `(𝔽₂[H], H)` or `(𝔽₂, 1)`.
 */
typedef enum KhiTheory {
  KHI_THEORY_KH = 0,
  KHI_THEORY_BN = 1,
  KHI_THEORY_BN1 = 2,
} KhiTheory;

typedef enum KhiVariant {
  KHI_VARIANT_UNREDUCED = 0,
  KHI_VARIANT_REDUCED = 1,
  KHI_VARIANT_COREDUCED = 2,
} KhiVariant;

/**
 * Opaque diagram handle.
 */
typedef struct KhiDiagram KhiDiagram;

typedef struct KhiInvariants {
  int64_t s_lower;
  int64_t s_upper;
  int64_t s_classic;
  uint32_t d_lower;
  uint32_t d_upper;
  int64_t w;
  int64_t r;
} KhiInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `.sik` text into a new handle.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KhiStatus khi_diagram_parse(const char *text, struct KhiDiagram **out);

/**
 * Builds one of the bundled diagrams, e.g. `"3_1"`, `"mirror:m9_46"`,
 * `"torus2(5)+"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KhiStatus khi_diagram_named(const char *name, struct KhiDiagram **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void khi_diagram_free(struct KhiDiagram *d);

/**
 * Number of crossings, or -1 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
int32_t khi_diagram_crossings(const struct KhiDiagram *d);

/**
 * Returns the mirror image as a new handle.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum KhiStatus khi_diagram_mirror(const struct KhiDiagram *d, struct KhiDiagram **out);

/**
 * `(s̲, s̄, s)` with both extraction methods cross-checked.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum KhiStatus khi_s_invariants(const struct KhiDiagram *d,
                                uint32_t cap,
                                struct KhiInvariants *out);

/**
 * Homology as a newly allocated string: JSON when `json` is true,
 * otherwise the text table.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum KhiStatus khi_homology(const struct KhiDiagram *d,
                            enum KhiTheory theory,
                            enum KhiVariant variant,
                            bool involutive,
                            bool json,
                            uint32_t cap,
                            char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void khi_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *khi_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KHI_H */
