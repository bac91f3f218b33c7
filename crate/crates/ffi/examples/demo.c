/* Solves |x^3 - 4xy^2| <= 1 over Z[(1 + i sqrt 3)/2] and prints the solutions. */
#include <stdio.h>
#include "relthue.h"

int main(void) {
    const char *text = "coeffs = 0 -4 0 1\nm = 3\nK = 1\n";
    RtProblem *problem = NULL;
    RtSolutions *solutions = NULL;
    if (rt_problem_parse(text, &problem) != RT_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", rt_last_error_message());
        return 1;
    }
    int64_t bound = -1;
    rt_k1_range(problem, &bound);
    printf("|k1| <= %lld\n", (long long)bound);
    if (rt_solve(problem, 12, &solutions) != RT_STATUS_OK) {
        fprintf(stderr, "solve: %s\n", rt_last_error_message());
        rt_problem_free(problem);
        return 1;
    }
    size_t n = rt_solutions_len(solutions);
    size_t in_box = 0;
    for (size_t i = 0; i < n; i++) {
        int64_t row[5];
        if (rt_solutions_get(solutions, i, row) != RT_STATUS_OK) {
            return 1;
        }
        int inside = 1;
        for (int j = 0; j < 4; j++) {
            if (row[j] < -4 || row[j] > 4) {
                inside = 0;
            }
        }
        in_box += inside;
    }
    printf("solutions %zu, in [-4,4]^4 %zu\n", n, in_box);

    int64_t bad[5];
    RtStatus st = rt_solutions_get(solutions, n, bad);
    printf("out of range status %d: %s\n", (int)st, rt_last_error_message());

    rt_solutions_free(solutions);
    rt_problem_free(problem);
    return 0;
}
