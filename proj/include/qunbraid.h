#ifndef QUNBRAID_H
#define QUNBRAID_H

/* C interface of the qunbraid library. Every call returns a status code;
 * on failure qub_last_error() describes the problem (per thread). Strings
 * handed out by the library are released with qub_string_free. */

#if defined(QUB_BUILDING_LIBRARY) && defined(__GNUC__)
#define QUB_API __attribute__((visibility("default")))
#else
#define QUB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qub_status {
    QUB_OK = 0,
    QUB_CHECK_FAILED = 1, /* ran to completion, some check failed */
    QUB_USAGE = 2,        /* invalid configuration or unsupported request */
    QUB_DEGENERATE = 3,   /* pole, zero denominator or degenerate input */
    QUB_INTERNAL = 4      /* inconsistency, exhausted budget, out of memory */
} qub_status;

typedef struct qub_session qub_session;

/* config_json: {"family":"so","n":3,"m":2,"sign":"minus",...}; see README. */
QUB_API qub_status qub_session_new(const char* config_json, qub_session** out);
QUB_API void qub_session_free(qub_session* session);

/* Each command writes the rendered output (in the configured format) to
 * *rendered and the JSON report to *report; either pointer may be NULL. */
QUB_API qub_status qub_run_verify(qub_session* session, char** rendered, char** report);
QUB_API qub_status qub_run_unbraid(qub_session* session, char** rendered, char** report);
QUB_API qub_status qub_run_relations(qub_session* session, char** rendered, char** report);

QUB_API void qub_string_free(char* s);
QUB_API const char* qub_last_error(void);
QUB_API const char* qub_version(void);

#ifdef __cplusplus
}
#endif

#endif
