#ifndef VHCONNECT_H
#define VHCONNECT_H

/* C interface to the vhconnect shared library: VH proposal generation from
 * grayscale/RGB images, budgeted merging of ranked proposal sources, and
 * recall/overlap evaluation against ground-truth boxes.
 *
 * Conventions: every fallible function returns vhc_status and writes its
 * result through out-parameters. VHC_OK is 0; errors are negative. On
 * failure, vhc_last_error() returns a thread-local human-readable detail
 * string. Objects returned through vhc_*_create/load/generate calls are
 * owned by the caller and released with the matching vhc_*_free. Strings
 * returned through const char* out-parameters stay owned by the queried
 * object and are valid until that object is modified or freed.
 */

#include <stddef.h>
#include <stdint.h>

#ifndef VHC_API
#  if defined(_WIN32) && defined(VHC_BUILD_DLL)
#    define VHC_API __declspec(dllexport)
#  elif defined(_WIN32)
#    define VHC_API __declspec(dllimport)
#  elif defined(__GNUC__)
#    define VHC_API __attribute__((visibility("default")))
#  else
#    define VHC_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define VHC_VERSION_MAJOR 0
#define VHC_VERSION_MINOR 1
#define VHC_VERSION_PATCH 0

typedef enum vhc_status {
    VHC_OK = 0,
    VHC_ERROR_INVALID_INPUT = -1, /* argument or state violates a precondition */
    VHC_ERROR_PARSE = -2,         /* malformed file content */
    VHC_ERROR_IO = -3,            /* file unreadable or unwritable */
    VHC_ERROR_CONFIG = -4,        /* inconsistent run configuration */
    VHC_ERROR_NULL_ARGUMENT = -5, /* required pointer was NULL */
    VHC_ERROR_OUT_OF_RANGE = -6,  /* index past the end of a collection */
    VHC_ERROR_UNKNOWN = -7
} vhc_status;

/* Axis-aligned box, zero-indexed pixels, max coordinates exclusive. */
typedef struct vhc_box {
    int32_t x_min;
    int32_t y_min;
    int32_t x_max;
    int32_t y_max;
} vhc_box;

typedef struct vhc_image vhc_image;             /* 8-bit grayscale or RGB raster */
typedef struct vhc_config vhc_config;           /* VH generator parameters */
typedef struct vhc_proposals vhc_proposals;     /* ranked boxes grouped by image id */
typedef struct vhc_annotations vhc_annotations; /* ground-truth boxes with class labels */
typedef struct vhc_size_table vhc_size_table;   /* image id -> pixel dimensions */
typedef struct vhc_split vhc_split;             /* budget fractions per source tag */
typedef struct vhc_report vhc_report;           /* evaluation results, one block per budget */

/* ---- library ---- */

VHC_API const char* vhc_version(void); /* "major.minor.patch" */
VHC_API const char* vhc_status_message(vhc_status status);
/* Detail text of the most recent failure on the calling thread ("" if none). */
VHC_API const char* vhc_last_error(void);

/* ---- images ---- */

/* Reads a binary PGM (P5) or PPM (P6) file. */
VHC_API vhc_status vhc_image_load(const char* path, vhc_image** out);
/* Wraps caller-supplied pixels (copied). Grayscale: row-major, one byte per
 * pixel. RGB: row-major, three interleaved bytes per pixel. */
VHC_API vhc_status vhc_image_from_gray(const uint8_t* data, int32_t width, int32_t height,
                                       vhc_image** out);
VHC_API vhc_status vhc_image_from_rgb(const uint8_t* data, int32_t width, int32_t height,
                                      vhc_image** out);
VHC_API vhc_status vhc_image_size(const vhc_image* image, int32_t* width, int32_t* height);
/* Writes the image as binary PGM; RGB input is converted to grayscale. */
VHC_API vhc_status vhc_image_save_pgm(const vhc_image* image, const char* path);
VHC_API void vhc_image_free(vhc_image* image);

/* ---- generator configuration ---- */

/* Defaults: 3x3 elliptical gradient element; scales 1, 1/2, 1/4; kernel
 * lengths 9, 15, 30, 45; fill ratio 0.5; prescale cap 1024 px. */
VHC_API vhc_status vhc_config_create(vhc_config** out);
VHC_API vhc_status vhc_config_set_se_size(vhc_config* cfg, int32_t se_size);
VHC_API vhc_status vhc_config_set_scales(vhc_config* cfg, const double* scales, size_t count);
VHC_API vhc_status vhc_config_set_kernel_lengths(vhc_config* cfg, const int32_t* lengths,
                                                 size_t count);
VHC_API vhc_status vhc_config_set_fill_ratio(vhc_config* cfg, double p);
VHC_API vhc_status vhc_config_set_max_side(vhc_config* cfg, int32_t max_side);
VHC_API void vhc_config_free(vhc_config* cfg);

/* ---- proposal generation ---- */

/* Runs the VH pipeline on one image. cfg NULL means defaults. stage_dir,
 * when non-NULL, receives PGM dumps of the per-scale gradient and edge
 * stages. The result carries source tag "vh" and ranks 1..n. */
VHC_API vhc_status vhc_generate(const vhc_image* image, const vhc_config* cfg,
                                const char* image_id, const char* stage_dir,
                                vhc_proposals** out);

/* ---- proposal sets ---- */

VHC_API vhc_status vhc_proposals_create(const char* source_tag, vhc_proposals** out);
/* CSV with header image_id,x_min,y_min,x_max,y_max; per-image line order is
 * rank order. */
VHC_API vhc_status vhc_proposals_load(const char* path, const char* source_tag,
                                      vhc_proposals** out);
VHC_API vhc_status vhc_proposals_save(const vhc_proposals* proposals, const char* path);
/* Appends with the next rank for that image and the set's source tag. */
VHC_API vhc_status vhc_proposals_append(vhc_proposals* proposals, const char* image_id,
                                        vhc_box box);
/* Moves src's rows into dst, image by image; ranks continue per image. */
VHC_API vhc_status vhc_proposals_merge(vhc_proposals* dst, const vhc_proposals* src);
VHC_API vhc_status vhc_proposals_count(const vhc_proposals* proposals, size_t* out);
VHC_API vhc_status vhc_proposals_image_count(const vhc_proposals* proposals, size_t* out);
/* Flat row access: images in sorted id order, rows in rank order. */
VHC_API vhc_status vhc_proposals_row(const vhc_proposals* proposals, size_t index,
                                     const char** image_id, vhc_box* box, int32_t* rank,
                                     const char** source);
VHC_API void vhc_proposals_free(vhc_proposals* proposals);

/* ---- ground truth ---- */

VHC_API vhc_status vhc_annotations_create(vhc_annotations** out);
/* CSV with header image_id,class,x_min,y_min,x_max,y_max. */
VHC_API vhc_status vhc_annotations_load(const char* path, vhc_annotations** out);
VHC_API vhc_status vhc_annotations_append(vhc_annotations* annotations, const char* image_id,
                                          const char* class_label, vhc_box box);
VHC_API vhc_status vhc_annotations_count(const vhc_annotations* annotations, size_t* out);
VHC_API vhc_status vhc_annotations_row(const vhc_annotations* annotations, size_t index,
                                       const char** image_id, const char** class_label,
                                       vhc_box* box);
VHC_API void vhc_annotations_free(vhc_annotations* annotations);

/* ---- image sizes ---- */

VHC_API vhc_status vhc_size_table_create(vhc_size_table** out);
/* CSV with header image_id,width,height. */
VHC_API vhc_status vhc_size_table_load(const char* path, vhc_size_table** out);
VHC_API vhc_status vhc_size_table_add(vhc_size_table* table, const char* image_id, int32_t width,
                                      int32_t height);
VHC_API void vhc_size_table_free(vhc_size_table* table);

/* ---- budget splitting and combination ---- */

/* Parses "ss=0.5,eb=0.4,vh=0.1"; fractions must be positive and sum to 1. */
VHC_API vhc_status vhc_split_parse(const char* text, vhc_split** out);
VHC_API vhc_status vhc_split_create(vhc_split** out);
/* Appends one allocation; the split is validated when it is used. */
VHC_API vhc_status vhc_split_add(vhc_split* split, const char* source_tag, double fraction);
VHC_API vhc_status vhc_split_count(const vhc_split* split, size_t* out);
VHC_API vhc_status vhc_split_source(const vhc_split* split, size_t index, const char** source_tag,
                                    double* fraction);
/* Integer share per source: floor(fraction*total), remainder handed out one
 * unit at a time in declaration order. counts must hold one entry per
 * allocation. */
VHC_API vhc_status vhc_split_budget(const vhc_split* split, int64_t total, int64_t* counts,
                                    size_t counts_len);
VHC_API void vhc_split_free(vhc_split* split);

/* Merges sources into one ranked list of at most `total` proposals per
 * image: per-source heads sized by the split, concatenated in allocation
 * order, exact-duplicate boxes dropped, slots refilled round-robin from the
 * sources' next ranks. Sources are matched to split tags by their source
 * tag. */
VHC_API vhc_status vhc_combine(const vhc_proposals* const* sources, size_t source_count,
                               int64_t total, const vhc_split* split, vhc_proposals** out);

/* ---- evaluation ---- */

/* One report block per budget: every image's proposal list is truncated to
 * its top `budget` rows, then per-class average best overlap (ABO), their
 * mean (MABO), recall over the IoU threshold grid 0.5, 0.5+step, ..., 1.0,
 * and the area under that curve. sizes may be NULL; when given, ground-truth
 * box statistics are attached to the report. */
VHC_API vhc_status vhc_evaluate(const vhc_annotations* gts, const vhc_proposals* proposals,
                                const int64_t* budgets, size_t budget_count, double step,
                                const vhc_size_table* sizes, vhc_report** out);

VHC_API vhc_status vhc_report_budget_count(const vhc_report* report, size_t* out);
VHC_API vhc_status vhc_report_budget(const vhc_report* report, size_t budget_index, int64_t* out);
VHC_API vhc_status vhc_report_mabo(const vhc_report* report, size_t budget_index, double* out);
VHC_API vhc_status vhc_report_average_recall(const vhc_report* report, size_t budget_index,
                                             double* out);
VHC_API vhc_status vhc_report_curve_size(const vhc_report* report, size_t budget_index,
                                         size_t* out);
VHC_API vhc_status vhc_report_curve_point(const vhc_report* report, size_t budget_index,
                                          size_t point_index, double* threshold, double* recall);
VHC_API vhc_status vhc_report_class_count(const vhc_report* report, size_t budget_index,
                                          size_t* out);
VHC_API vhc_status vhc_report_class_abo(const vhc_report* report, size_t budget_index,
                                        size_t class_index, const char** class_label,
                                        double* abo);
/* VHC_ERROR_INVALID_INPUT when the report was built without a size table. */
VHC_API vhc_status vhc_report_gt_stats(const vhc_report* report, double* avg_width,
                                       double* avg_height, double* avg_area_ratio);
/* CSV with header metric,class,budget,threshold,value. */
VHC_API vhc_status vhc_report_save_csv(const vhc_report* report, const char* path);
/* Plain-text table; the string is owned by the report. */
VHC_API vhc_status vhc_report_summary(const vhc_report* report, const char** out);
VHC_API void vhc_report_free(vhc_report* report);

/* ---- geometry and statistics helpers ---- */

/* Intersection area over union area; boxes must have positive area. */
VHC_API vhc_status vhc_iou(vhc_box a, vhc_box b, double* out);
/* Means over all annotations of box width, box height, and box area divided
 * by image area. */
VHC_API vhc_status vhc_gt_stats(const vhc_annotations* gts, const vhc_size_table* sizes,
                                double* avg_width, double* avg_height, double* avg_area_ratio);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VHCONNECT_H */
