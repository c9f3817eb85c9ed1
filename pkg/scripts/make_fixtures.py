"""Regenerate the JSON fixtures bundled in src/embedlimit/fixtures.

Matrices and recurrences are transcribed constants; seeds that come from
enumeration are recomputed here with the brute-force enumerator.
Run: python3 scripts/make_fixtures.py
"""

import os

from embedlimit.documents import Construction, FamilyDocument, SeedGraph, dumps, family_to_doc, graph_to_doc
from embedlimit.enumerator import MultiGraph, genus_polynomial
from embedlimit.kinds import Kind
from embedlimit.poly import IntPolynomial as P
from embedlimit.polymatrix import ProductionMatrix

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "embedlimit", "fixtures")


def write(name, doc):
    with open(os.path.join(OUT, f"{name}.json"), "w") as fh:
        fh.write(dumps(doc))
    print("wrote", name)


# iterated claw Y_n: Y_1 is the claw; each step joins a new vertex to the three
# feet and hangs a new foot from each old foot
claw = MultiGraph(4, ((0, 1), (0, 2), (0, 3)))
claw_H = MultiGraph(7, ((0, 3), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6)))
claw_build = Construction(claw_H, (0, 1, 2), (4, 5, 6), (claw, (1, 2, 3)), None, -1)
claw_notes = "partial types: number of distinct faces met by the three feet (3, 2, 1); see scripts/derive_claw_matrix.py"

write("claw_genus", family_to_doc(FamilyDocument(
    "claw_genus", Kind.GENUS,
    matrix=ProductionMatrix([[P([0, 8]), P([0, 4]), P([0, 0, 16])], [6, P([0, 12]), 0], [2, 0, 0]]),
    initial_vector=(P([2]), P(), P()), construction=claw_build, notes=claw_notes)))
write("claw_euler", family_to_doc(FamilyDocument(
    "claw_euler", Kind.EULER,
    matrix=ProductionMatrix([
        [P([0, 6, 32]), P([0, 0, 8, 32]), P([0, 0, 0, 0, 64])],
        [P([6, 18]), P([0, 0, 24]), 0],
        [2, 0, 0]]),
    initial_vector=(P([2]), P(), P()), construction=claw_build, notes=claw_notes)))

# grid G_n = P_{n+1} x P_3: each copy of H adds one column of three vertices
grid_H = MultiGraph(6, ((0, 3), (1, 4), (2, 5), (3, 4), (4, 5)))
grid_build = Construction(grid_H, (0, 1, 2), (3, 4, 5), (MultiGraph(3, ((0, 1), (1, 2))), (0, 1, 2)), None, 0)
grid_genus_rec = (P([1, 30]), P([0, 42, -168]), P([0, 0, -72, -1008]), P([0, 0, 0, 0, 1728]))
grid_seeds = tuple(genus_polynomial(grid_build.build(n)) for n in range(1, 5))
write("grid_genus", family_to_doc(FamilyDocument(
    "grid_genus", Kind.GENUS, recurrence=grid_genus_rec, seeds=grid_seeds, construction=grid_build,
    notes="seeds G_1..G_4 enumerated; G_n = P_{n+1} x P_3")))
write("grid_euler", family_to_doc(FamilyDocument(
    "grid_euler", Kind.EULER,
    recurrence=(P([1, 11, 84]), P([0, 0, 84, 360, -336]), P([0, 0, 0, 0, -288, -1152, -9216]), P([0] * 8 + [27648])),
    construction=grid_build, notes="analysis only: no verified seeds")))

# Ringel, circular and Moebius ladders share these 7th-order recurrences
write("ladders_genus", family_to_doc(FamilyDocument(
    "ladders_genus", Kind.GENUS,
    recurrence=(P([4]), P([-5, 20]), P([2, -56]), P([0, 44, -128]), P([0, -8, 224]), P([0, 0, -96, 256]), P([0, 0, 0, -256])),
    notes="analysis only: seeds differ between the three ladder families")))
write("ladders_euler", family_to_doc(FamilyDocument(
    "ladders_euler", Kind.EULER,
    recurrence=(P([4, 12]), P([-5, -34, -12]), P([2, 26, -20, -240]), P([0, -4, 56, 512, 320]),
                P([0, 0, -16, -224, 128, 1792]), P([0, 0, 0, 0, -384, -2304, -1024]), P([0] * 6 + [-2048, -4096])),
    notes="analysis only: seeds differ between the three ladder families")))

# ladder graphs G_n = P_{n+1} x P_2; partial types split by whether the two
# sides of the last rung lie on different faces or the same face
ladder_H = MultiGraph(4, ((0, 2), (1, 3), (2, 3)))
ladder_build = Construction(ladder_H, (0, 1), (2, 3), (MultiGraph(2, ((0, 1),)), (0, 1)), None, 0)
ladder_seed = SeedGraph(ladder_build.build(1), root_edge=2)
write("ladder_genus", family_to_doc(FamilyDocument(
    "ladder_genus", Kind.GENUS, matrix=ProductionMatrix([[2, 4], [P([0, 2]), 0]]),
    seed_graph=ladder_seed, construction=ladder_build)))
write("ladder_euler", family_to_doc(FamilyDocument(
    "ladder_euler", Kind.EULER, matrix=ProductionMatrix([[2, 4], [P([0, 2, 4]), P([0, 4])]]),
    seed_graph=ladder_seed, construction=ladder_build)))

write("example_q3", family_to_doc(FamilyDocument(
    "example_q3", Kind.GENUS, matrix=ProductionMatrix([[P([1, 1]), 0], [0, P([0, 2])]]),
    initial_vector=(P([1]), P([1])), notes="imprimitive at x = 1")))
write("constant_two", family_to_doc(FamilyDocument(
    "constant_two", Kind.GENUS, matrix=ProductionMatrix([[2]]), initial_vector=(P([1, 1]),),
    notes="constant matrix: discrete limit")))

graphs = {
    "graph_c3": MultiGraph(3, ((0, 1), (1, 2), (2, 0))),
    "graph_b2": MultiGraph(1, ((0, 0), (0, 0))),
    "graph_d3": MultiGraph(2, ((0, 1), (0, 1), (0, 1)), (0, 1)),
    "graph_k4": MultiGraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    "graph_tree": MultiGraph(5, ((0, 1), (0, 2), (0, 3), (3, 4))),
    "graph_p2": MultiGraph(2, ((0, 1),)),
    "graph_y5": claw_build.build(5),
}
for name, G in graphs.items():
    write(name, graph_to_doc(G))
