"""Graph codifferentials and their kernels, two ways.

A graph with optional self-connections and null edges yields a signed
incidence matrix d0 (one row per edge).  Its kernel has a closed-form
basis: the 0/1 indicator vectors of the connected components that
contain no self-connected vertex.  The demo builds both that basis and
the elimination-based one and confirms they generate the same lattice.
"""

from expansion_lab import (
    Graph,
    format_matrix,
    graph_complex,
    graph_d0,
    h1_is_trivial,
    incidence_kernel_basis,
    integer_kernel_basis,
    is_integrally_spanned,
    parse_graph,
)

text = """\
5 5
1 2
2 3
self 4
0 0
4 5
"""
print("graph file:")
print(text)
g = parse_graph(text)
a = graph_d0(g)
print("signed incidence matrix d0 (rows: edges, columns: vertices):")
print(format_matrix(a))

fast = incidence_kernel_basis(a)
eliminated = integer_kernel_basis(a)
print("kernel basis from connected components (no elimination):")
for row in fast.basis_rows():
    print(f"  {row}")
print("kernel basis from integer elimination:")
for row in eliminated.basis_rows():
    print(f"  {row}")
print(f"same lattice: {fast.hnf == eliminated.hnf}")
print()
print("vertices 1,2,3 form a free component (indicator in the kernel);")
print("vertices 4,5 are killed by the self-connection at 4.")
print()

print("Both the kernel and the image of an incidence matrix are")
print("integrally spanned, which is what transfers rational expansion")
print("values to integer ones:")
print(f"  kernel spanned: {is_integrally_spanned(eliminated.hnf).spanned}")
print()

tree = graph_complex(Graph(3, ((1, 2), (2, 3))))
print("A graph complex has an empty face row (d1 with zero rows), and a")
print(f"tree has trivial first cohomology: {h1_is_trivial(tree)}")
