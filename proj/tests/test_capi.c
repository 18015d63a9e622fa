/* Exercises the shared library through its C header only. */
#include "qunbraid.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

static qub_status run(const char* config, qub_status (*fn)(qub_session*, char**, char**), char** rendered,
                      char** report)
{
    qub_session* s = NULL;
    qub_status st = qub_session_new(config, &s);
    if (st != QUB_OK) return st;
    st = fn(s, rendered, report);
    qub_session_free(s);
    return st;
}

int main(void)
{
    char* rendered = NULL;
    char* report = NULL;
    qub_session* s = NULL;

    EXPECT(strcmp(qub_version(), "0.1.0") == 0);

    EXPECT(run("{\"family\":\"so\",\"n\":3,\"suites\":[\"ybe\",\"minpoly\"]}", qub_run_verify, &rendered, &report) ==
           QUB_OK);
    EXPECT(rendered && strstr(rendered, "PASS") != NULL);
    EXPECT(report && strstr(report, "\"command\": \"verify\"") != NULL);
    qub_string_free(rendered);
    qub_string_free(report);

    rendered = report = NULL;
    EXPECT(run("{\"family\":\"so\",\"n\":3,\"m\":2,\"format\":\"latex\"}", qub_run_unbraid, &rendered, &report) ==
           QUB_OK);
    EXPECT(rendered && strstr(rendered, "\\begin{eqnarray}") != NULL);
    qub_string_free(rendered);
    qub_string_free(report);

    rendered = report = NULL;
    EXPECT(run("{\"family\":\"sl\",\"n\":2,\"kind\":\"heisenberg\",\"format\":\"json\"}", qub_run_relations, &rendered,
               &report) == QUB_OK);
    EXPECT(report && strstr(report, "\"mixed\": 4") != NULL);
    qub_string_free(rendered);
    qub_string_free(report);

    /* usage errors: malformed JSON, unknown key value, unsupported N */
    EXPECT(qub_session_new("{not json", &s) == QUB_USAGE);
    EXPECT(s == NULL);
    EXPECT(strlen(qub_last_error()) > 0);
    EXPECT(qub_session_new("{\"family\":\"xx\"}", &s) == QUB_USAGE);
    EXPECT(run("{\"family\":\"so\",\"n\":4,\"m\":2}", qub_run_unbraid, &rendered, &report) == QUB_USAGE);
    EXPECT(strstr(qub_last_error(), "even N") != NULL);
    EXPECT(run("{\"family\":\"sl\",\"n\":2,\"metric\":true}", qub_run_verify, &rendered, &report) == QUB_USAGE);

    /* a failing check is reported as such, with the report still produced */
    rendered = report = NULL;
    EXPECT(run("{\"family\":\"so\",\"n\":3,\"m\":2,\"reality\":\"trivial\",\"star\":true}", qub_run_unbraid, &rendered,
               &report) == QUB_CHECK_FAILED);
    EXPECT(report && strstr(report, "\"pass\": false") != NULL);
    qub_string_free(rendered);
    qub_string_free(report);

    /* a null configuration means all defaults; null handles are rejected */
    EXPECT(qub_session_new(NULL, &s) == QUB_OK);
    qub_session_free(s);
    EXPECT(qub_session_new("{}", NULL) == QUB_USAGE);
    EXPECT(qub_run_verify(NULL, &rendered, &report) == QUB_USAGE);
    qub_session_free(NULL);
    qub_string_free(NULL);

    if (failures) fprintf(stderr, "%d failures\n", failures);
    else printf("C API: all checks passed\n");
    return failures ? 1 : 0;
}
