#ifndef HVD_HVD_H
#define HVD_HVD_H

/* C interface to the hyperbolic Voronoi library. Every call returns a status;
 * on failure hvd_last_error() holds a message for the calling thread. Strings
 * handed out by the library are released with hvd_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HVD_API __declspec(dllexport)
#else
#define HVD_API __attribute__((visibility("default")))
#endif

typedef enum {
  HVD_OK = 0,
  HVD_ERR_DOMAIN = 1,
  HVD_ERR_COINCIDENT = 2,
  HVD_ERR_EMPTY = 3,
  HVD_ERR_DEGENERATE = 4,
  HVD_ERR_INVALID_ARGUMENT = 5,
  HVD_ERR_PARSE = 6,
  HVD_ERR_NUMERIC = 7,
  HVD_ERR_INTERNAL = 8
} hvd_status;

typedef enum { HVD_MODEL_KLEIN = 0, HVD_MODEL_POINCARE = 1, HVD_MODEL_HALFPLANE = 2 } hvd_model;

typedef enum { HVD_FORMAT_JSON = 0, HVD_FORMAT_SVG = 1 } hvd_format;

/* Sites plus the viewpoint they are shown from. A freshly loaded set has its
 * focus at the origin; hvd_recenter derives new sets that remember the
 * original coordinates, so repeated recentering never accumulates error. */
typedef struct hvd_pointset hvd_pointset;
typedef struct hvd_diagram hvd_diagram;

HVD_API const char* hvd_version(void);
HVD_API const char* hvd_last_error(void);
HVD_API void hvd_string_free(char* s);

HVD_API hvd_status hvd_model_parse(const char* name, hvd_model* out);

HVD_API hvd_status hvd_pointset_load(const char* path, hvd_pointset** out);
HVD_API hvd_status hvd_pointset_parse(const char* text, size_t len, hvd_pointset** out);
/* xy holds n interleaved Klein coordinates; labels may be NULL. */
HVD_API hvd_status hvd_pointset_from_klein(const double* xy, size_t n, const char* const* labels,
                                           hvd_pointset** out);
HVD_API void hvd_pointset_free(hvd_pointset* ps);
HVD_API size_t hvd_pointset_size(const hvd_pointset* ps);
/* Site i in the requested model's coordinates. */
HVD_API hvd_status hvd_pointset_get(const hvd_pointset* ps, size_t i, hvd_model model, double* x, double* y);
/* Label of site i, "" when unlabeled; owned by the set. */
HVD_API const char* hvd_pointset_label(const hvd_pointset* ps, size_t i);
/* Current focus in the original Klein coordinates. */
HVD_API void hvd_pointset_focus(const hvd_pointset* ps, double* x, double* y);

/* New set with the point (x, y), given in `model` coordinates of ps, moved to
 * the origin. */
HVD_API hvd_status hvd_recenter(const hvd_pointset* ps, double x, double y, hvd_model model, hvd_pointset** out);

HVD_API hvd_status hvd_diagram_build(const hvd_pointset* ps, hvd_diagram** out);
HVD_API void hvd_diagram_free(hvd_diagram* d);
HVD_API size_t hvd_diagram_edge_count(const hvd_diagram* d);
HVD_API size_t hvd_diagram_vertex_count(const hvd_diagram* d);
HVD_API hvd_status hvd_diagram_render(const hvd_diagram* d, hvd_model model, hvd_format format, uint64_t seed,
                                      char** out);
/* Site whose cell holds the point (x, y) given in `model` coordinates. */
HVD_API hvd_status hvd_diagram_locate(const hvd_diagram* d, double x, double y, hvd_model model, size_t* site);

HVD_API hvd_status hvd_delaunay_render(const hvd_pointset* ps, hvd_model model, hvd_format format, uint64_t seed,
                                       char** out);

/* Nearest site by hyperbolic distance; query in `model` coordinates. */
HVD_API hvd_status hvd_nearest(const hvd_pointset* ps, double x, double y, hvd_model model, size_t* index,
                               double* distance);

/* Smallest enclosing ball of the chosen sites (all when indices is NULL).
 * Center in Klein coordinates. */
HVD_API hvd_status hvd_seb(const hvd_pointset* ps, const size_t* indices, size_t count, uint64_t seed, double* cx,
                           double* cy, double* radius);
/* Report of the same ball: JSON with center in both disk models, radius and
 * the boundary locus in `model` coordinates, or an SVG of sites plus locus. */
HVD_API hvd_status hvd_seb_report(const hvd_pointset* ps, const size_t* indices, size_t count, hvd_model model,
                                  hvd_format format, uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif
