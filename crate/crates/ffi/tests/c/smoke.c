#include <math.h>
#include <stdio.h>

#include "conformal_cones.h"

#define CHECK(call)                                                  \
    do {                                                             \
        CcStatus s_ = (call);                                        \
        if (s_ != CC_STATUS_OK) {                                    \
            fprintf(stderr, "%s -> %d: %s\n", #call, (int)s_,       \
                    cc_last_error() ? cc_last_error() : "");         \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    CcCone *cone = NULL;
    double mu_plus = 0.0, mu_minus = 0.0;
    CHECK(cc_cone_gamma_k(4, 2, &cone));
    CHECK(cc_cone_mu_plus(cone, &mu_plus));
    CHECK(cc_cone_mu_minus(cone, &mu_minus));
    if (fabs(mu_plus - 1.0) > 1e-12 || !isinf(mu_minus)) {
        fprintf(stderr, "mu = (%g, %g)\n", mu_plus, mu_minus);
        return 1;
    }

    CcDirichlet *sol = NULL;
    CcRegularity reg;
    double v = 0.0;
    CHECK(cc_dirichlet_solve(cone, 1.0, 2.0, 0.0, -1.0, &sol));
    CHECK(cc_dirichlet_regularity(sol, &reg));
    CHECK(cc_dirichlet_value(sol, 2.0, &v));
    if (reg != CC_REGULARITY_SMOOTH || fabs(v + 1.0) > 1e-12) {
        fprintf(stderr, "regularity %d, v(b) = %g\n", (int)reg, v);
        return 1;
    }
    cc_dirichlet_free(sol);

    if (cc_cone_gamma_k(3, 7, &cone) != CC_STATUS_INVALID_ARGUMENT || cc_last_error() == NULL) {
        return 1;
    }
    cc_cone_free(cone);
    printf("ok %s\n", cc_version());
    return 0;
}
