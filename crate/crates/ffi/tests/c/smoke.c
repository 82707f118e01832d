#include <stdio.h>
#include <string.h>

#include "cherednik_lab.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed at line %d: %s (%s)\n",     \
                    __LINE__, #cond, cl_last_error());                \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    ClFiber *f = NULL;
    CHECK(cl_fiber_new("5/2", "0,1/3", "1,4/3", &f) == CL_STATUS_OK);
    CHECK(cl_fiber_is_generic(f) == 1);
    CHECK(cl_fiber_points(f) == 2);

    ClChain *c = NULL;
    CHECK(cl_chain_build(f, "t1", 0, 0, 0, &c) == CL_STATUS_OK);
    size_t rows = 0, cols = 0;
    CHECK(cl_chain_shape(c, &rows, &cols) == CL_STATUS_OK);
    CHECK(rows == 2 && cols == 2);
    char *e = NULL;
    CHECK(cl_chain_entry(c, 0, 0, &e) == CL_STATUS_OK);
    CHECK(strcmp(e, "-3/5") == 0);
    cl_string_free(e);
    CHECK(cl_chain_entry(c, 1, 0, &e) == CL_STATUS_OK);
    CHECK(strcmp(e, "2/5") == 0);
    cl_string_free(e);
    CHECK(cl_chain_entry(c, 5, 0, &e) == CL_STATUS_OUT_OF_RANGE);

    char *json = NULL;
    CHECK(cl_chain_to_json(c, &json) == CL_STATUS_OK);
    CHECK(strstr(json, "\"schema\": \"cherednik-lab/1\"") != NULL);
    cl_string_free(json);
    cl_chain_free(c);

    int passed = 0;
    CHECK(cl_verify_intertwining(f, "t0", 0, -1, 1, &passed) == CL_STATUS_OK);
    CHECK(passed == 1);
    cl_fiber_free(f);

    ClFiber *bad = NULL;
    CHECK(cl_fiber_new("7/3", "0,1/3", "1,4/3", &bad) == CL_STATUS_OK);
    CHECK(cl_chain_build(bad, "t1", 0, 0, 0, &c) == CL_STATUS_NON_GENERIC);
    CHECK(strlen(cl_last_error()) > 0);
    cl_fiber_free(bad);

    CHECK(cl_fiber_new("5/2", "0,1/3", "1/2,4/3", &bad) == CL_STATUS_INVALID_INPUT);
    printf("ok\n");
    return 0;
}
