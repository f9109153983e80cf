/* C interface to the vknots library.
 *
 * Every fallible call returns a VkStatus; output parameters are written only
 * when the call returns VK_OK. Strings returned through `char **` outputs are
 * heap allocations that must be released with vk_string_free; handles must be
 * released with their matching *_free. Passing null to a free function is a
 * no-op. Handles are not thread-safe to mutate concurrently, but all
 * operations here only read them.
 */

#ifndef VKNOTS_H
#define VKNOTS_H

/* Generated by cbindgen from vknots-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * A multiset of cut points, addressed by circle and gap.
 */
typedef struct VkCuts VkCuts;

/**
 * An oriented virtual link diagram.
 */
typedef struct VkDiagram VkDiagram;

/**
 * A parsed planar-diagram code.
 */
typedef struct VkPd VkPd;

/**
 * Result of every fallible call.
 */
typedef int32_t VkStatus;

/**
 * Success.
 */
#define VK_OK 0

/**
 * A required pointer argument was null.
 */
#define VK_NULL_ARG 1

/**
 * The input text could not be parsed.
 */
#define VK_PARSE 2

/**
 * The arguments are well formed but inconsistent: cut points outside the
 * diagram, an operation that needs a knot applied to a link, and so on.
 */
#define VK_INVALID 3

/**
 * Nothing satisfies the request within the given bounds.
 */
#define VK_NOT_FOUND 4

/**
 * A state bound was exceeded before the computation finished.
 */
#define VK_LIMIT 5

/**
 * An unexpected failure inside the library.
 */
#define VK_INTERNAL 6

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A static description of a status code. Never null; do not free.
 */
const char *vk_status_describe(VkStatus status);

/**
 * Parses a Gauss code such as `"O1+O2+U1+U2+"`, with `|` separating circles.
 */
VkStatus vk_gauss_parse(const char *text, struct VkDiagram **out);

/**
 * The canonical Gauss code of a diagram.
 */
VkStatus vk_diagram_code(const struct VkDiagram *d, char **out);

VkStatus vk_diagram_circle_count(const struct VkDiagram *d, size_t *out);

VkStatus vk_diagram_chord_count(const struct VkDiagram *d, size_t *out);

/**
 * The sum of crossing signs.
 */
VkStatus vk_diagram_writhe(const struct VkDiagram *d, int64_t *out);

/**
 * Whether every chord is even, i.e. the diagram is checkerboard colorable.
 */
VkStatus vk_diagram_is_normal(const struct VkDiagram *d, bool *out);

/**
 * The sum of signs over odd chords. `VK_INVALID` unless the diagram is a
 * knot (a single circle).
 */
VkStatus vk_diagram_odd_writhe(const struct VkDiagram *d, int64_t *out);

/**
 * The normalized bracket polynomial as JSON pairs `[[exponent, coefficient],
 * ...]` in descending exponent order. The state sum expands `2^chords`
 * states; diagrams with more than `limit` chords return `VK_LIMIT`. A
 * `limit` of 0 selects the default bound.
 */
VkStatus vk_diagram_f_json(const struct VkDiagram *d, size_t limit, char **out);

void vk_diagram_free(struct VkDiagram *d);

/**
 * Parses a planar-diagram code: records `X+(a,b,c,d)`, `X-(a,b,c,d)` and
 * `V(a,b,c,d)` separated by whitespace or commas.
 */
VkStatus vk_pd_parse(const char *text, struct VkPd **out);

/**
 * Traces a planar-diagram code into a diagram. `VK_INVALID` when the edges
 * do not close up into circles.
 */
VkStatus vk_pd_diagram(const struct VkPd *pd, struct VkDiagram **out);

/**
 * Traces a planar-diagram code and places one cut point on each side of
 * every virtual record. Writes the traced diagram and the cut system
 * together, since the cut positions refer to that diagram's gap labeling.
 */
VkStatus vk_pd_canonical_cuts(const struct VkPd *pd,
                              struct VkDiagram **out_diagram,
                              struct VkCuts **out_cuts);

void vk_pd_free(struct VkPd *pd);

/**
 * Parses a cut system given as JSON triples `[[circle, gap, count], ...]`
 * against the diagram whose circles and gaps the triples refer to.
 */
VkStatus vk_cuts_parse(const char *json, const struct VkDiagram *d, struct VkCuts **out);

/**
 * Serializes a cut system as JSON triples `[[circle, gap, count], ...]`.
 */
VkStatus vk_cuts_json(const struct VkCuts *c, char **out);

/**
 * The total number of cut points.
 */
VkStatus vk_cuts_total(const struct VkCuts *c, uint32_t *out);

/**
 * Searches for a smallest cut system of the diagram. `VK_NOT_FOUND` when the
 * bounded search exhausts its budget.
 */
VkStatus vk_cuts_find_small(const struct VkDiagram *d, struct VkCuts **out);

/**
 * Whether the cut points alternate the induced orientation coherently, i.e.
 * form a valid cut system for the diagram.
 */
VkStatus vk_cuts_check(const struct VkDiagram *d, const struct VkCuts *c, bool *out);

void vk_cuts_free(struct VkCuts *c);

/**
 * The double covering determined by a cut system. The cover of a diagram
 * with a valid cut system is always normal. `VK_INVALID` when the cut
 * system is not valid for the diagram.
 */
VkStatus vk_double_cover(const struct VkDiagram *d, const struct VkCuts *c, struct VkDiagram **out);

/**
 * The linking number of the two lifted circles in the double cover of a
 * knot. `VK_INVALID` for links or invalid cut systems.
 */
VkStatus vk_lk_n(const struct VkDiagram *d, const struct VkCuts *c, int64_t *out);

/**
 * Searches for a sequence of cut moves from one cut system to another,
 * exploring at most `max_depth` moves while every intermediate system keeps
 * at most `cap` cut points in any single gap. On success writes the moves
 * as a JSON array. `VK_INVALID` when either endpoint is not a valid cut
 * system; `VK_NOT_FOUND` when no path exists within the bounds.
 */
VkStatus vk_cut_path_json(const struct VkDiagram *d,
                          const struct VkCuts *from,
                          const struct VkCuts *to,
                          uint32_t max_depth,
                          uint32_t cap,
                          char **out);

/**
 * Releases a string returned by this library.
 */
void vk_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* VKNOTS_H */
