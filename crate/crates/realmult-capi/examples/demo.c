/* Demo for the realmult C ABI: the golden ratio with tau(q) = sqrt(5)-2.
 *
 * Build (from the repository root, after `cargo build -p realmult-capi`):
 *   cc crates/realmult-capi/examples/demo.c \
 *      -Icrates/realmult-capi/include \
 *      target/debug/librealmult_capi.a -lm -o demo
 */
#include <stdio.h>

#include "realmult.h"

int main(void) {
    RmTheta *golden = NULL;
    if (rm_theta_new(1, 1, -1, &golden) != RM_STATUS_OK) {
        fprintf(stderr, "theta construction failed\n");
        return 1;
    }

    char *disc = NULL;
    rm_theta_discriminant(golden, &disc);
    printf("discriminant: %s\n", disc);
    rm_string_free(disc);

    char *t = NULL;
    char *u = NULL;
    int norm = 0;
    if (rm_fundamental_unit(5, &t, &u, &norm) == RM_STATUS_OK) {
        printf("fundamental unit: (t,u) = (%s,%s), norm %d\n", t, u, norm);
        rm_string_free(t);
        rm_string_free(u);
    }

    char *json = NULL;
    if (rm_kgroups_json(golden, -3, NULL, &json) == RM_STATUS_OK) {
        printf("kgroups: %s\n", json);
        rm_string_free(json);
    }

    rm_theta_free(golden);
    return 0;
}
