#include <stdio.h>
#include "khi.h"

int main(void) {
    KhiDiagram *d = NULL;
    if (khi_diagram_named("m9_46", &d) != KHI_STATUS_OK) {
        fprintf(stderr, "%s\n", khi_last_error());
        return 1;
    }
    KhiInvariants inv;
    if (khi_s_invariants(d, 20, &inv) != KHI_STATUS_OK) {
        fprintf(stderr, "%s\n", khi_last_error());
        khi_diagram_free(d);
        return 1;
    }
    char *table = NULL;
    if (khi_homology(d, KHI_THEORY_BN, KHI_VARIANT_REDUCED, true, false, 20, &table) == KHI_STATUS_OK) {
        puts(table);
        khi_string_free(table);
    }
    printf("s_lower=%lld s_upper=%lld\n", (long long)inv.s_lower, (long long)inv.s_upper);
    khi_diagram_free(d);
    return 0;
}
