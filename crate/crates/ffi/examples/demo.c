/* cc demo.c -I../include ../../../target/debug/libgoodpair_ffi.a -lpthread -ldl -lm -o demo */
#include <stdio.h>
#include "goodpair.h"

int main(void) {
    GpDigraph *d = NULL;
    GpCert *cert = NULL;
    char *json = NULL;
    size_t lambda = 0;

    if (gp_digraph_parse("3\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n", &d) != GP_STATUS_OK) {
        fprintf(stderr, "%s\n", gp_last_error());
        return 3;
    }
    gp_arc_connectivity(d, &lambda);
    printf("lambda %zu\n", lambda);

    GpStatus s = gp_find_good_pair(d, -1, -1, 0, &cert);
    if (s == GP_STATUS_OK) {
        gp_cert_to_json(cert, &json);
        printf("%s\nverify %d\n", json, gp_verify(d, cert));
        gp_string_free(json);
    }
    gp_cert_free(cert);
    gp_digraph_free(d);
    return s;
}
