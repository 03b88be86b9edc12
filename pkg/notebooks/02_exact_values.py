# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Exact values on small graphs
#
# `f_exact(F, H, n)` minimises alpha_F over all H-free graphs on n vertices,
# using an isomorph-free enumeration. With F = K2 and H = K3 this is the
# smallest independence number of a triangle-free graph, so it should track
# the Ramsey numbers R(3, k).

# %%
from erlab.graph import cycle_graph, empty_graph, graph6_encode, lexicographic_product
from erlab.solvers import alpha_F, f_exact

for n in range(2, 9):
    res = f_exact("K2", "K3", n)
    print(n, res.value, graph6_encode(res.witness).decode(), res.graphs_examined)

# %% [markdown]
# ## Products
#
# In the lexicographic product G·H each vertex of G is replaced by a copy
# of H. The largest F-free set is bounded by combining values from both
# factors; the table compares the exact value with that bound.

# %%
pairs = [(cycle_graph(5), cycle_graph(5)), (cycle_graph(5), empty_graph(3)), (empty_graph(2), cycle_graph(5))]
for G, H in pairs:
    P = lexicographic_product(G, H)
    aG = alpha_F(G, "K2").value
    exact = alpha_F(P, "K2,2").value
    bound = aG * alpha_F(H, "K2,2").value + alpha_F(G, "K2,2").value
    print(P.n, exact, bound)
