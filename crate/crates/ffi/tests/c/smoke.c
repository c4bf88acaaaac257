#include <math.h>
#include <stdio.h>
#include <string.h>

#include "compbo.h"

static double sum(const double *values, size_t m, void *user_data) {
    (void)user_data;
    double s = 0.0;
    for (size_t i = 0; i < m; i++) s += values[i];
    return s;
}

int main(void) {
    CompboObjective *obj = NULL;
    if (compbo_task_open("identical-price", &obj) != COMPBO_STATUS_OK) return 1;
    if (compbo_objective_dim(obj) != 1 || compbo_objective_arity(obj) != 2) return 2;

    double x = 0.5, members[2], g;
    if (compbo_objective_evaluate(obj, &x, 1, members, 2, &g) != COMPBO_STATUS_OK) return 3;
    if (fabs(g - 0.5 * (members[0] + members[1])) > 1e-12) return 4;

    CompboRunOptions opts = compbo_run_options_default();
    opts.iterations = 3;
    opts.init_points = 3;
    CompboRun *run = NULL;
    if (compbo_run_bo(obj, &opts, &run) != COMPBO_STATUS_OK) return 5;
    if (compbo_run_len(run) != 6) return 6;
    compbo_run_free(run);

    double means[2] = {1.0, 2.0}, vars[2] = {1.0, 4.0}, ucb;
    if (compbo_c_ucb(means, vars, 2, sum, NULL, 1.0, 0, &ucb) != COMPBO_STATUS_OK || ucb != 6.0) return 7;

    CompboObjective *missing = NULL;
    if (compbo_task_open("nope", &missing) != COMPBO_STATUS_UNKNOWN_TASK) return 8;
    if (strstr(compbo_last_error_message(), "nope") == NULL) return 9;

    compbo_objective_free(obj);
    printf("ok %s\n", compbo_version());
    return 0;
}
