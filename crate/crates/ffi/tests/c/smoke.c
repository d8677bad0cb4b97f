#include <stdio.h>
#include <string.h>

#include "lambda_dcs.h"

static int fails = 0;

static void expect(int ok, const char *what) {
    if (!ok) {
        const char *err = dcs_last_error();
        fprintf(stderr, "FAIL %s (%s)\n", what, err ? err : "no error");
        fails++;
    }
}

int main(void) {
    DcsKb *kb = NULL;
    expect(dcs_kb_demo(&kb) == DCS_STATUS_OK, "demo kb");

    char *json = NULL;
    expect(dcs_eval(kb, "PlaceOfBirth.Seattle", false, &json) == DCS_STATUS_OK, "eval");
    expect(json && strcmp(json, "[\"Alice\",\"Carol\"]") == 0, "eval result");
    dcs_string_free(json);

    expect(dcs_eval(kb, "PlaceOfBirth.(", false, &json) == DCS_STATUS_PARSE_ERROR, "parse error");
    expect(dcs_last_error() != NULL, "error message");

    char *lc = NULL;
    expect(dcs_to_lc("Seattle", false, &lc) == DCS_STATUS_OK, "lc");
    expect(lc && strcmp(lc, "lambda x . [x = Seattle]") == 0, "lc result");
    dcs_string_free(lc);

    char *q = NULL;
    expect(dcs_to_sparql("(mu x . Children.Influenced.x)", NULL, &q) == DCS_STATUS_UNSUPPORTED, "sparql unsupported");

    uint64_t mismatches = 99;
    expect(dcs_check(kb, 20, 3, 1, &mismatches) == DCS_STATUS_OK && mismatches == 0, "check");

    dcs_kb_free(kb);
    if (fails == 0) {
        printf("ok\n");
    }
    return fails;
}
