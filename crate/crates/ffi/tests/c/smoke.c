#include <stdio.h>
#include <string.h>
#include "zimin.h"

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                \
        }                                                            \
    } while (0)

int main(void) {
    const uint8_t letters[] = {0, 1, 0, 2, 0, 1, 0};
    ZiminWord *w = NULL;
    CHECK(zimin_word_new(letters, 7, 3, &w) == ZIMIN_STATUS_OK);
    bool yes = false;
    CHECK(zimin_is_zimin_instance(w, 3, &yes) == ZIMIN_STATUS_OK && yes);

    ZiminPattern *p = NULL;
    CHECK(zimin_pattern_parse("xyx", &p) == ZIMIN_STATUS_OK);
    CHECK(zimin_is_instance(w, p, &yes) == ZIMIN_STATUS_OK && yes);
    zimin_pattern_free(p);
    zimin_word_free(w);

    ZiminBounds *b = NULL;
    CHECK(zimin_iz3(2, "1e-10", &b) == ZIMIN_STATUS_OK);
    char *lo = NULL, *hi = NULL;
    CHECK(zimin_bounds_decimal(b, 8, &lo, &hi) == ZIMIN_STATUS_OK);
    CHECK(strcmp(lo, "0.11944370") == 0 && strcmp(hi, "0.11944370") == 0);
    zimin_string_free(lo);
    zimin_string_free(hi);
    zimin_bounds_free(b);

    CHECK(zimin_iz2(1, "1e-5", &b) == ZIMIN_STATUS_PRECONDITION);
    CHECK(zimin_last_error() != NULL);
    printf("ok\n");
    return 0;
}
