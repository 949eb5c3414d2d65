#include <stdio.h>
#include <string.h>

#include "indecomp.h"

int main(void) {
    size_t edges[] = {0, 1, 1, 2, 2, 3};
    IndecGraph *g = NULL;
    if (indec_graph_from_edges(4, edges, 3, &g) != INDEC_STATUS_OK) return 1;
    bool prime = false;
    if (indec_is_indecomposable(g, &prime) != INDEC_STATUS_OK || !prime) return 2;
    char *g6 = NULL;
    if (indec_graph_to_graph6(g, &g6) != INDEC_STATUS_OK) return 3;
    printf("%s\n", g6);
    indec_string_free(g6);

    IndecGraph *ig = NULL;
    if (indec_indecomposability_graph(g, &ig) != INDEC_STATUS_OK) return 4;
    char *el = NULL;
    if (indec_graph_to_edge_list(ig, &el) != INDEC_STATUS_OK) return 5;
    printf("%s", el);
    indec_string_free(el);
    indec_graph_free(ig);

    IndecGraph *bad = NULL;
    if (indec_graph_parse("2 1\n1 3\n", &bad) != INDEC_STATUS_VERTEX_OUT_OF_RANGE) return 6;
    if (strstr(indec_last_error(), "out of range") == NULL) return 7;
    indec_graph_free(g);
    return 0;
}
