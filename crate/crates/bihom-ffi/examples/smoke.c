/* Minimal consumer of the C API: generate an instance, build the
 * derivation bundle, run two suites, and exercise the error path.
 *
 * Build (from the workspace root, after `cargo build -p bihom-ffi`):
 *   cc -o smoke crates/bihom-ffi/examples/smoke.c \
 *      -Icrates/bihom-ffi/include -Ltarget/debug -lbihom_ffi \
 *      -lpthread -ldl -lm
 *   LD_LIBRARY_PATH=target/debug ./smoke
 */
#include <assert.h>
#include <stdio.h>
#include <string.h>

#include "bihom.h"

int main(void) {
    BihomAlgebra *poly = NULL, *bundle = NULL;
    BihomStatus st = bihom_gen("truncated-poly", 3, "-1", "1", &poly);
    assert(st == BIHOM_STATUS_OK);
    assert(bihom_algebra_dim(poly) == 3);

    st = bihom_construct("derivation-bhnp", poly, NULL, "{\"verify\": true}", &bundle);
    assert(st == BIHOM_STATUS_OK);

    char *report = NULL;
    st = bihom_check(bundle, "bhnp", 0, &report);
    assert(st == BIHOM_STATUS_OK);
    assert(report != NULL && strstr(report, "\"passed\": true"));
    bihom_string_free(report);

    st = bihom_check(bundle, "left-bihom-assoc", 0, &report);
    assert(st == BIHOM_STATUS_CHECK_FAILED);
    bihom_string_free(report);

    st = bihom_check(bundle, "no-such-suite", 0, NULL);
    assert(st == BIHOM_STATUS_ERROR);
    char *msg = bihom_last_error_message();
    assert(msg != NULL && strstr(msg, "unknown suite"));
    bihom_string_free(msg);

    bihom_algebra_free(bundle);
    bihom_algebra_free(poly);
    puts("C smoke test passed");
    return 0;
}
