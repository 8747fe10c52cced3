#ifndef CREMONA_H
#define CREMONA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every fallible entry point.
typedef enum CremonaStatus {
  CREMONA_STATUS_OK = 0,
  CREMONA_STATUS_NULL_POINTER = 1,
  CREMONA_STATUS_INVALID_UTF8 = 2,
  CREMONA_STATUS_INVALID_INPUT = 3,
  CREMONA_STATUS_COMPUTATION_FAILED = 4,
  CREMONA_STATUS_BUFFER_TOO_SMALL = 5,
  CREMONA_STATUS_PANIC = 6,
} CremonaStatus;

// Opaque birational self-map of the projective plane.
typedef struct CremonaMap CremonaMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread, or NULL.
//
// The pointer stays valid until the next call into this library from the
// same thread. Do not free it.
const char *cremona_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
//
// `s` must come from this library and must not be used afterwards.
void cremona_string_free(char *s);

// Parses a map such as `P2 [x*y, y*z, z*x]` or `A2 [x, y + 1]`.
//
// `field` is a minimal polynomial in `t` (for example `t^2+t+1`); NULL or
// an empty string selects the rationals.
//
// # Safety
//
// `field` may be NULL; `body` must be a NUL-terminated string; `out` must
// be writable. The handle written to `out` must be released with
// `cremona_map_free`.
enum CremonaStatus cremona_map_parse(const char *field, const char *body, struct CremonaMap **out);

// Releases a map handle. NULL is ignored.
//
// # Safety
//
// `map` must come from this library and must not be used afterwards.
void cremona_map_free(struct CremonaMap *map);

// Degree of the homogeneous components.
//
// # Safety
//
// `map` must be a live handle; `out` must be writable.
enum CremonaStatus cremona_map_degree(const struct CremonaMap *map, uint32_t *out);

// Writes `a ∘ b` to `out`.
//
// # Safety
//
// `a` and `b` must be live handles over the same field; `out` must be
// writable.
enum CremonaStatus cremona_map_compose(const struct CremonaMap *a,
                                       const struct CremonaMap *b,
                                       struct CremonaMap **out);

// Solves for the inverse map.
//
// # Safety
//
// `map` must be a live handle; `out` must be writable.
enum CremonaStatus cremona_map_inverse(const struct CremonaMap *map, struct CremonaMap **out);

// Tests equality as maps, that is up to a common scalar factor.
//
// # Safety
//
// `a` and `b` must be live handles; `out` must be writable.
enum CremonaStatus cremona_map_equals(const struct CremonaMap *a,
                                      const struct CremonaMap *b,
                                      bool *out);

// Fills `buf[0..k]` with the degrees of the first `k` iterates.
//
// # Safety
//
// `map` must be a live handle; `buf` must point to at least `len`
// writable `uint32_t` values. Fails with `BufferTooSmall` when `len < k`.
enum CremonaStatus cremona_map_iterate_degrees(const struct CremonaMap *map,
                                               size_t k,
                                               uint32_t *buf,
                                               size_t len);

// Renders the map as `[p0, p1, p2]`.
//
// # Safety
//
// `map` must be a live handle; `out` must be writable. Free the result
// with `cremona_string_free`.
enum CremonaStatus cremona_map_to_string(const struct CremonaMap *map, char **out);

// Growth classification of the first `k` iterate degrees, as JSON.
//
// # Safety
//
// `map` must be a live handle; `out` must be writable. Free the result
// with `cremona_string_free`.
enum CremonaStatus cremona_map_classify_json(const struct CremonaMap *map, size_t k, char **out);

// Baumslag-Solitar verdict for BS(m, n), as JSON.
//
// # Safety
//
// `out` must be writable. Free the result with `cremona_string_free`.
enum CremonaStatus cremona_bs_check_json(int64_t m, int64_t n, char **out);

// Verifies the GL(2,Q) embedding with weight `k` and character `chi`
// (for example `trivial` or `-1->-1,2->1/2`) on `pairs` random pairs.
//
// # Safety
//
// `chi` may be NULL for the trivial character; `out` must be writable.
// Free the result with `cremona_string_free`.
enum CremonaStatus cremona_gl2q_verify_json(int64_t k,
                                            const char *chi,
                                            size_t pairs,
                                            uint64_t seed,
                                            char **out);

// Runs one named fixture. `passed` receives the overall verdict and `out`
// the JSON comparison record.
//
// # Safety
//
// `name` must be a NUL-terminated string; `passed` and `out` must be
// writable. Free the result with `cremona_string_free`.
enum CremonaStatus cremona_fixture_json(const char *name, bool *passed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREMONA_H */
