#include <stdio.h>
#include <string.h>
#include "quiverloc.h"

int main(void) {
    size_t r[2] = {1, 0};
    QlRequest req = {0};
    req.r = r;
    req.r_len = 2;
    req.order = 3;
    req.mode = QL_MODE_EXACT;

    QlReport *rep = NULL;
    if (ql_verify("main1", &req, 0, &rep) != QL_STATUS_OK || ql_report_passed(rep) != 1) {
        fprintf(stderr, "verify: %s\n", ql_last_error());
        return 1;
    }
    char *json = ql_report_json(rep);
    printf("%s\n", json);
    ql_string_free(json);
    ql_report_free(rep);

    QlSeries *s = NULL;
    if (ql_compute("hs-z-adj", &req, -1, 1, &s) != QL_STATUS_OK) {
        fprintf(stderr, "compute: %s\n", ql_last_error());
        return 1;
    }
    uint32_t e[1] = {0};
    char *c = NULL;
    if (ql_series_coeff(s, e, 1, &c) != QL_STATUS_OK || strcmp(c, "1") != 0) return 1;
    ql_string_free(c);
    ql_series_free(s);

    if (ql_verify("bogus", NULL, 0, &rep) != QL_STATUS_INVALID_ARGUMENT || rep != NULL) return 1;
    return 0;
}
