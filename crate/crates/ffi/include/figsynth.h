#ifndef FIGSYNTH_H
#define FIGSYNTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FsStatus {
  FS_STATUS_OK = 0,
  FS_STATUS_NULL_POINTER = 1,
  FS_STATUS_INVALID_INPUT = 2,
  FS_STATUS_CONFIG = 3,
  FS_STATUS_RENDER = 4,
  FS_STATUS_GENERATION = 5,
  FS_STATUS_IO = 6,
  FS_STATUS_FORMAT = 7,
  FS_STATUS_OUT_OF_RANGE = 8,
  FS_STATUS_PANIC = 9,
} FsStatus;

typedef enum FsSchemeMode {
  FS_SCHEME_MODE_TRAINING = 0,
  FS_SCHEME_MODE_ALTERNATED = 1,
} FsSchemeMode;

typedef enum FsElementClass {
  FS_ELEMENT_CLASS_BAR = 0,
  FS_ELEMENT_CLASS_LINE_SEGMENT_GROUP = 1,
  FS_ELEMENT_CLASS_LINE_SEGMENT = 2,
  FS_ELEMENT_CLASS_DOT_MARKER_GROUP = 3,
  FS_ELEMENT_CLASS_PIE_SLICE = 4,
  FS_ELEMENT_CLASS_X_AXIS = 5,
  FS_ELEMENT_CLASS_Y_AXIS = 6,
  FS_ELEMENT_CLASS_TICK_LABEL = 7,
  FS_ELEMENT_CLASS_AXIS_LABEL = 8,
  FS_ELEMENT_CLASS_TITLE = 9,
  FS_ELEMENT_CLASS_LEGEND_TOKEN = 10,
  FS_ELEMENT_CLASS_LEGEND_LABEL = 11,
  FS_ELEMENT_CLASS_GRID_LINE = 12,
} FsElementClass;

typedef enum FsFigureType {
  FS_FIGURE_TYPE_VERTICAL_BAR = 0,
  FS_FIGURE_TYPE_HORIZONTAL_BAR = 1,
  FS_FIGURE_TYPE_LINE = 2,
  FS_FIGURE_TYPE_DOT_LINE = 3,
  FS_FIGURE_TYPE_PIE = 4,
} FsFigureType;

// Sampled figure source data.
typedef struct FsFigure FsFigure;

typedef struct FsQaList FsQaList;

// Rendered PNG and boxes.
typedef struct FsRender FsRender;

// Color partition plus active mode.
typedef struct FsScheme FsScheme;

// Bounding box; `color_id` is -1 for elements without a series color.
typedef struct FsBox {
  enum FsElementClass element_class;
  int32_t color_id;
  uint32_t x;
  uint32_t y;
  uint32_t w;
  uint32_t h;
} FsBox;

// Question-answer pair; `color_y` is -1 for single-subject templates.
// `question` is NUL-terminated and owned by the list it came from.
typedef struct FsQa {
  uint64_t figure_id;
  uint8_t template_id;
  int32_t color_x;
  int32_t color_y;
  bool answer_yes;
  const char *question;
} FsQa;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *fs_last_error_message(void);

// Static NUL-terminated generator version.
const char *fs_version(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void fs_string_free(char *s);

// Seeded color partition.
//
// # Safety
// `out` must be a valid pointer.
enum FsStatus fs_scheme_new(uint64_t master_seed, enum FsSchemeMode mode, struct FsScheme **out);

// # Safety
// `scheme` must be NULL or a handle from `fs_scheme_new`, not yet freed.
void fs_scheme_free(struct FsScheme *scheme);

// Samples figure source data. `figure_type` is an `FsFigureType` value;
// `attempt` selects an independent redraw of the same id.
//
// # Safety
// `scheme` must be a live handle and `out` a valid pointer.
enum FsStatus fs_figure_sample(const struct FsScheme *scheme,
                               uint32_t figure_type,
                               uint64_t figure_id,
                               uint64_t master_seed,
                               uint32_t attempt,
                               struct FsFigure **out);

// # Safety
// `figure` must be NULL or a live handle.
void fs_figure_free(struct FsFigure *figure);

// # Safety
// `figure` must be a live handle and `out` a valid pointer.
enum FsStatus fs_figure_series_count(const struct FsFigure *figure, uintptr_t *out);

// Source data as JSON; free the string with `fs_string_free`.
//
// # Safety
// `figure` must be a live handle and `out` a valid pointer.
enum FsStatus fs_figure_to_json(const struct FsFigure *figure, char **out);

// Rasterizes a figure. `FS_STATUS_RENDER` means the layout does not fit;
// sample the next attempt and retry.
//
// # Safety
// `figure` must be a live handle and `out` a valid pointer.
enum FsStatus fs_figure_render(const struct FsFigure *figure,
                               uint32_t base_height,
                               bool per_segment_boxes,
                               struct FsRender **out);

// # Safety
// `render` must be NULL or a live handle.
void fs_render_free(struct FsRender *render);

// Borrowed PNG bytes, valid while `render` lives.
//
// # Safety
// `render` must be a live handle; `data` and `len` valid pointers.
enum FsStatus fs_render_png(const struct FsRender *render, const uint8_t **data, uintptr_t *len);

// # Safety
// `render` must be a live handle; `width` and `height` valid pointers.
enum FsStatus fs_render_size(const struct FsRender *render, uint32_t *width, uint32_t *height);

// # Safety
// `render` must be a live handle and `out` a valid pointer.
enum FsStatus fs_render_box_count(const struct FsRender *render, uintptr_t *out);

// # Safety
// `render` must be a live handle and `out` a valid pointer.
enum FsStatus fs_render_box(const struct FsRender *render, uintptr_t index, struct FsBox *out);

// Unbalanced question-answer pairs for one figure.
//
// # Safety
// `figure` must be a live handle and `out` a valid pointer.
enum FsStatus fs_figure_questions(const struct FsFigure *figure, struct FsQaList **out);

// # Safety
// `list` must be NULL or a live handle.
void fs_qa_list_free(struct FsQaList *list);

// # Safety
// `list` must be a live handle and `out` a valid pointer.
enum FsStatus fs_qa_count(const struct FsQaList *list, uintptr_t *out);

// # Safety
// `list` must be a live handle and `out` a valid pointer.
enum FsStatus fs_qa_get(const struct FsQaList *list, uintptr_t index, struct FsQa *out);

// Roughness of a curve given as `n` points.
//
// # Safety
// `x` and `y` must point to `n` doubles; `out` must be valid.
enum FsStatus fs_roughness(const double *x, const double *y, uintptr_t n, double *out);

// Trapezoidal area under a curve given as `n` points.
//
// # Safety
// `x` and `y` must point to `n` doubles; `out` must be valid.
enum FsStatus fs_area_under_curve(const double *x, const double *y, uintptr_t n, double *out);

// Whether two curves on the shared grid `x` touch or cross.
//
// # Safety
// `x`, `a` and `b` must point to `n` doubles; `out` must be valid.
enum FsStatus fs_curves_intersect(const double *x,
                                  const double *a,
                                  const double *b,
                                  uintptr_t n,
                                  bool *out);

// Generates a corpus from a TOML config file. `out_dir` may be NULL to use
// the configured directory; `workers == 0` uses one per core.
//
// # Safety
// `config_path` must be a valid string; `out_dir` NULL or a valid string.
enum FsStatus fs_generate_corpus(const char *config_path, const char *out_dir, uintptr_t workers);

// Validates a corpus and reports the total violation count; optionally
// returns the full report as JSON (pass NULL to skip).
//
// # Safety
// `dir` must be a valid string, `violations` a valid pointer, `report_json`
// NULL or a valid pointer.
enum FsStatus fs_validate_corpus(const char *dir,
                                 bool full_pixel_scan,
                                 uint64_t *violations,
                                 char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIGSYNTH_H */
