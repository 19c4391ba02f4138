#ifndef QVD_QVD_H
#define QVD_QVD_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  Nonzero values below 99 mirror the library error kinds. */
typedef enum qvd_status {
    QVD_OK = 0,
    QVD_E_INVALID_ARGUMENT = 1,
    QVD_E_DOMAIN = 2,
    QVD_E_WINDOW = 3,
    QVD_E_NON_CONVERGENT = 4,
    QVD_E_DIVERGENT_TAIL = 5,
    QVD_E_PRECISION_EXHAUSTED = 6,
    QVD_E_OVERFLOW = 7,
    QVD_E_CONSTANCY_VIOLATION = 8,
    QVD_E_INTEGRABILITY = 9,
    QVD_E_NO_WITNESS = 10,
    QVD_E_EMPTY_PATTERN = 11,
    QVD_E_PRECONDITION = 12,
    QVD_E_ILL_CONDITIONED = 13,
    QVD_E_DEGENERATE_LEADING = 14,
    QVD_E_IO = 15,
    QVD_E_PARSE = 16,
    QVD_E_INTERNAL = 99
} qvd_status;

typedef struct qvd_context qvd_context;
typedef struct qvd_gridfn qvd_gridfn;
typedef struct qvd_plan qvd_plan;

const char* qvd_version(void);
const char* qvd_status_name(qvd_status s);
/* message of the last failing call on this thread */
const char* qvd_last_error(void);
void qvd_string_free(char* s);

qvd_status qvd_validate_params(const char* q, const char* nu, int digits, const char* tol);

qvd_status qvd_context_create(const char* q, const char* nu, int digits, const char* tol,
                              qvd_context** out);
void qvd_context_destroy(qvd_context* ctx);

/* constants, d_nu on the window and the configuration */
qvd_status qvd_report_json(qvd_context* ctx, int n_min, int n_max, char** out_json);

/* fn: jnu | inu | knu | ga | gauss.  x is a decimal or "q^N"; knu and ga need a lattice point.
   param is a for ga and c for gauss, ignored otherwise. */
qvd_status qvd_eval(qvd_context* ctx, const char* fn, const char* x, const char* param,
                    char** out_json);

/* the file's q and nu must match the context */
qvd_status qvd_gridfn_read(qvd_context* ctx, const char* path, qvd_gridfn** out);
qvd_status qvd_gridfn_write(qvd_context* ctx, const qvd_gridfn* f, const char* path,
                            const char* format);
qvd_status qvd_gridfn_to_string(qvd_context* ctx, const qvd_gridfn* f, const char* format,
                                char** out);
/* NULL leaves a class unchanged */
qvd_status qvd_gridfn_set_decay(qvd_gridfn* f, const char* decay, const char* spectral);
/* static class names: rapid, integrable, bounded or unknown */
qvd_status qvd_gridfn_classes(const qvd_gridfn* f, const char** decay, const char** spectral);
qvd_status qvd_gridfn_window(const qvd_gridfn* f, int* n_min, int* n_max);
void qvd_gridfn_destroy(qvd_gridfn* f);

/* cache_dir may be NULL; otherwise a matching cached plan is loaded or a new one stored */
qvd_status qvd_plan_create(qvd_context* ctx, int n_min, int n_max, const char* cache_dir,
                           qvd_plan** out);
qvd_status qvd_plan_load(qvd_context* ctx, const char* path, qvd_plan** out);
qvd_status qvd_plan_save(const qvd_plan* plan, const char* path);
void qvd_plan_destroy(qvd_plan* plan);

qvd_status qvd_transform(const qvd_plan* plan, const qvd_gridfn* f, qvd_gridfn** out);
qvd_status qvd_convolve(const qvd_plan* plan, const qvd_gridfn* f, const qvd_gridfn* g,
                        qvd_gridfn** out);

/* spec file {"c": "...", "zeros": [...]}; *kernel may be requested as NULL */
qvd_status qvd_kernel_build(const qvd_plan* plan, const char* spec_path, char** report_json,
                            qvd_gridfn** kernel);

/* V[K*f] <= V[f] over a corpus; corpus_dir is a corpus root or one of its nu directories.
   *pass is 1 when no function is violated */
qvd_status qvd_vd_check(const qvd_plan* plan, const qvd_gridfn* kernel, const char* corpus_dir,
                        const char* zero_tol, char** report_json, int* pass);

/* acceptance suite over nu in {-0.5, 0, 0.5, 1}.  criterion 0 runs all.
   corpus_root may be NULL.  lines gets one PASS/FAIL line per criterion. */
qvd_status qvd_verify_suite(const char* q, int digits, const char* tol, int n_min, int n_max,
                            const char* corpus_root, int criterion, char** report_json,
                            char** lines, int* pass);

/* writes <root>/<nu dir>/manifest.json and one file per member */
qvd_status qvd_corpus_write(qvd_context* ctx, int n_min, int n_max, const char* root);

#ifdef __cplusplus
}
#endif

#endif
