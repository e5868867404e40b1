"""Named fields with their integral bases, seeds and published reference data.

Reference data are stored as plain coordinates.  Identification tables list
``(unit word, source face, target face, vertex map)`` with the unit written
as a product of named points, e.g. ``(("B", -1), ("F", 1))`` for ``B^-1 F``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import BiquadraticField
from .lattice import IntegralLattice, preset_lattice


def _pt(text: str) -> tuple:
    return tuple(Fraction(t) for t in text.split(","))


def _pts(**named) -> dict:
    return {k: _pt(v) for k, v in named.items()}


@dataclass(frozen=True)
class Pairing:
    """``unit * source = target`` with the vertex correspondence given by name."""

    unit: tuple
    source: tuple
    target: tuple
    vertex_map: tuple


def _pairing(word, source, target, arrows):
    word = tuple((w, 1) if isinstance(w, str) else w for w in word)
    vmap = tuple(tuple(a.split("->")) for a in arrows.split())
    return Pairing(word, tuple(source.split()), tuple(target.split()), vmap)


@dataclass(frozen=True)
class Preset:
    name: str
    two_a: int
    b: int
    lattice_name: str
    seed: tuple | None
    exploratory: bool = False
    description: str = ""
    source: str = ""
    points: dict = dc_field(default_factory=dict)

    def field(self) -> BiquadraticField:
        return BiquadraticField(self.two_a, self.b)

    def lattice(self) -> IntegralLattice:
        return preset_lattice(self.lattice_name)


# reference data ----------------------------------------------------------------

K1_POINTS = _pts(
    A1="-2,0,6,3", A2="-2,3,2,0", A3="-1,0,3,2", A4="-1,0,4,2", A5="-1,1,2,1",
    A6="-1,2,0,0", A7="-1,2,1,0", A8="0,0,0,1", A9="0,1,0,0",
    A10="0,0,-1,2", A11="-4,-2,15,8",
)
K1_FACET = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9")
K1_UNITS = ("A1", "A2", "A4", "A6", "A8", "A9")
K1_TETRA_1 = ((8, 5, 2, 2), 2, ("A1", "A3", "A6", "A8", "A10"))
# the printed equation k + l/2 + n = 1 misses A11; the listed points span 2k + 3l + 2n = 2
K1_TETRA_2 = ((2, 3, 0, 2), 2, ("A1", "A3", "A4", "A8", "A11"))
K1_TETRA_2_PRINTED = ((2, 1, 0, 2), 2)
K1_CELLS = (((1, 1, 0, 1), 1), K1_TETRA_1[:2], K1_TETRA_2[:2])
K1_FREE_AFTER_FIRST = (("A1", "A4", "A8"), ("A1", "A2", "A6"), ("A6", "A8", "A9"), ("A2", "A4", "A9"))
K1_PAIRINGS = (
    _pairing(["A9"], "A1 A8 A10", "A2 A6 A9", "A1->A2 A8->A9 A10->A6"),
    _pairing(["A4"], "A6 A8 A10", "A1 A2 A4", "A6->A2 A8->A4 A10->A1"),
    _pairing(["A10"], "A4 A8 A9", "A1 A6 A10", "A4->A1 A8->A10 A9->A6"),
    _pairing(["A9"], "A1 A8 A11", "A2 A4 A9", "A1->A2 A8->A9 A11->A4"),
    _pairing(["A6"], "A4 A8 A11", "A1 A2 A6", "A4->A2 A8->A6 A11->A1"),
    _pairing(["A11"], "A6 A8 A9", "A1 A4 A11", "A6->A1 A8->A11 A9->A4"),
)

K2_B_PRINTED = _pt("0,-2,0,-1")
K2_POINTS = _pts(
    A="0,0,0,1", B="0,2,0,-1", AB="0,1,0,0", C="1,0,-3,2", D="0,1,-2,1", E="-2,4,1,-2",
    F="-2,3,2,-1", G="-1,0,3,2", H="0,1,2,1", K="2,4,-1,-2", L="2,3,-2,-1",
    M="0,0,-1,2", N="-2,4,0,-1", X="-1,2,0,0",
)
K2_PLANES = (
    ((1, 2, 1, 2), 2, ("C", "D")),
    ((3, 4, 2, 4), 4, ("D", "E")),
    ((1, 2, 0, 2), 2, ("E", "F")),
    ((1, 4, -1, 4), 4, ("F", "G")),
    ((-1, 2, -1, 2), 2, ("G", "H")),
    ((-3, 4, -2, 4), 4, ("H", "K")),
    ((-1, 2, 0, 2), 2, ("K", "L")),
    ((-1, 4, 1, 4), 4, ("L", "C")),
)
K2_OCTAHEDRON = ((3, 2, 1, 1), 1, ("A", "D", "E", "F", "M", "N", "X"))
K2_CELLS = tuple(pl[:2] for pl in K2_PLANES) + (K2_OCTAHEDRON[:2],)
K2_UNITS = ("A", "B", "D", "F", "H", "L", "N")
K2_NORM_TWO = ("C", "E", "G", "K", "M")
K2_PAIRINGS = (
    _pairing(["H"], "A C D", "B H K", "A->H C->K D->B"),
    _pairing(["L"], "A F G", "B K L", "A->L F->B G->K"),
    _pairing(["D"], "A G H", "B D E", "A->D G->E H->B"),
    _pairing(["F"], "A L C", "B E F", "A->F C->E L->B"),
    _pairing(["N"], "A H K", "E F N", "A->N H->F K->E"),
    _pairing(["N"], "A K L", "N D E", "A->N K->E L->D"),
    _pairing(["H"], "A D M", "B G H", "A->H D->B M->G"),
    _pairing(["L"], "A F M", "B C L", "A->L F->B M->C"),
    _pairing([("B", -1), "F"], "B C D", "F M N", "B->F C->M D->N"),
    _pairing([("B", -1), "D"], "B F G", "D M N", "B->D F->N G->M"),
)

F15_POINTS = _pts(
    A="0,0,0,1", B="1/6,-1/3,-2,9/2", C="1/3,-1/2,-7/2,13/2", D="1/6,-1/6,-3/2,3",
    A1="0,1/3,0,-1", B1="0,1/6,-1/2,1/2", C1="1/6,1/6,-3/2,1", D1="1/6,1/3,-1,-1/2",
)
F15_BASES = (("A", "B", "C", "D"), ("A1", "B1", "C1", "D1"))
F15_CELLS = (((3, 6, 1, 1), 1),)
F15_PAIRINGS = (
    _pairing(["A1"], "A B C D", "A1 B1 C1 D1", "A->A1 B->B1 C->C1 D->D1"),
    _pairing(["D"], "A A1 B1", "C D D1", "A->D A1->D1 B1->C"),
    _pairing(["D1"], "A B B1", "C C1 D1", "A->D1 B->C B1->C1"),
    _pairing(["B"], "A A1 D1", "B C B1", "A->B A1->B1 D1->C"),
    _pairing(["B1"], "A D D1", "C B1 C1", "A->B1 D->C D1->C1"),
)

SHINTANI1_POINTS = _pts(
    A="0,0,0,1", A1="0,1,0,-1", B="0,0,-1,2", B1="-1,2,1,-2", C="2,-2,-8,9",
    C1="0,1,-2,1", D="2,-2,-7,8", D1="1,0,-3,2", E="1,-1,-4,5", E1="0,1,-1,0",
)
SHINTANI1_CENTERS = ("E", "E1")


def shintani_vertices(n: int) -> dict:
    """Closed-form unit vertices of the family decahedron for odd ``n = 2a + 1``."""
    a = Fraction(n - 1, 2)
    q = 2 * a + 1
    return {
        "A": (Fraction(0), Fraction(0), Fraction(0), Fraction(1)),
        "B": (2 * (a + 1) / q, -2 * (a + 1) / q, -(8 * a**3 + 16 * a**2 + 16 * a + 7) / q,
              (8 * a**3 + 16 * a**2 + 18 * a + 8) / q),
        "C": (Fraction(2), Fraction(-2), -(8 * a**2 + 8 * a + 8), 8 * a**2 + 8 * a + 9),
        "D": (2 * a / q, -2 * a / q, -(8 * a**3 + 8 * a**2 + 8 * a + 1) / q,
              (8 * a**3 + 8 * a**2 + 10 * a + 2) / q),
        "A1": (Fraction(0), Fraction(1), Fraction(0), Fraction(-1)),
        "B1": (1 / q, 2 * a / q, -(2 * a + 3) / q, 2 / q),
        "C1": (Fraction(0), Fraction(1), Fraction(-2), Fraction(1)),
        "D1": (-1 / q, (2 * a + 2) / q, -(2 * a - 1) / q, -2 / q),
    }


KLEIN9_POINTS = _pts(
    A="0,0,0,1", B="0,1/3,-1,1", C="-1/3,4/3,-1,0", D="-2/3,2,0,-1", E="-2/3,5/3,1,-1",
    F="-1/3,2/3,1,0", G="-1/3,1,0,0",
    A1="0,1/3,0,0", B1="-1/3,4/3,0,-1", C1="-4/3,4,1,-4", D1="-2,17/3,2,-6",
    E1="-5/3,14/3,2,-5", F1="-2/3,2,1,-2", G1="-1,3,1,-3",
    H="-1/3,0,2,2",
)
# printed with last coordinate +1, which is off the plane 6k + 3l + m + n = 1
KLEIN9_D_PRINTED = _pt("-2/3,2,0,1")
KLEIN9_HEXAGONS = (("A", "B", "C", "D", "E", "F"), ("A1", "B1", "C1", "D1", "E1", "F1"))
KLEIN9_SIDES = (
    "A B A1", "A1 B1 C B", "B1 C1 C", "C1 D1 C", "C D D1",
    "D E D1", "D1 E1 F E", "E1 F1 F", "F A A1", "F1 A1 F",
)
KLEIN9_TETRA = ((3, 3, 0, 1), 1, ("A", "A1", "F", "H"))
KLEIN9_CELLS = (((6, 3, 1, 1), 1), KLEIN9_TETRA[:2])
KLEIN9_PAIRINGS = (
    _pairing(["A1"], "A B C D E F", "A1 B1 C1 D1 E1 F1", "A->A1 B->B1 C->C1 D->D1 E->E1 F->F1"),
    _pairing(["F"], "A B A1", "E1 F1 F", "A->F B->E1 A1->F1"),
    _pairing([("A1", -1), "F"], "A1 B1 C B", "D1 E1 F E", "A1->F B1->E1 C->D1 B->E"),
    _pairing([("C", -1), "D"], "B1 C1 C", "D E D1", "B1->E C1->D1 C->D"),
    _pairing([("C", -1), "A"], "C1 D1 C", "A A1 H", "C1->A1 D1->H C->A"),
    _pairing([("C", -1), "A1"], "C D D1", "A1 F H", "C->A1 D->H D1->F"),
    _pairing([("A1", -1), "A"], "F1 A1 F", "F A H", "F1->F A1->A F->H"),
)

KLEIN25_PLANES = (((5, 5, 1, 1), 1, 14), ((-75, 20, -3, 1), 1, 4))


PRESETS = {
    "k1": Preset("k1", 4, 1, "k1", ((1, 1, 0, 1), 1), description="x^4 - 4x^2 + 1, Klein group",
                 source="x^4-4x^2+1 data", points=K1_POINTS),
    "k2": Preset("k2", 4, 2, "k2", ((1, 2, 1, 2), 2), description="x^4 - 4x^2 + 2, cyclic group",
                 source="x^4-4x^2+2 data", points=K2_POINTS),
    "f15_45": Preset("f15_45", 15, 45, "f15_45", ((3, 6, 1, 1), 1), description="x^4 - 15x^2 + 45, one-cell domain",
                     source="x^4-15x^2+45 data", points=F15_POINTS),
    "shintani1": Preset("shintani1", 5, 5, "shintani1", ((2, 2, 1, 1), 1), description="p_1 = x^4 - 5x^2 + 5",
                        source="family p_n, n=1", points=SHINTANI1_POINTS),
    "shintani3": Preset("shintani3", 13, 13, "shintani3", ((2, 2, 1, 1), 1), description="p_3 = x^4 - 13x^2 + 13",
                        source="family p_n, n=3"),
    "klein9": Preset("klein9", 9, 9, "klein9", ((6, 3, 1, 1), 1), description="x^4 - 9x^2 + 9, two-cell domain",
                     source="x^4-9x^2+9 data", points=KLEIN9_POINTS),
    "klein25": Preset("klein25", 25, 25, "klein25", ((5, 5, 1, 1), 1), description="x^4 - 25x^2 + 25",
                      source="x^4-25x^2+25 data"),
    "klein49": Preset("klein49", 49, 49, "klein49", None, exploratory=True,
                      description="x^4 - 49x^2 + 49, no reference values", source="x^4-49x^2+49 remark"),
    "k11": Preset("k11", 125, 125, "k11", None,
                  description="p_11 with its full ring of integers; closure and Euler characteristic only",
                  source="family p_n, n=11, integral basis"),
    "k11-identity": Preset("k11-identity", 5, 5, "shintani1", None,
                           description="y = -3x^3 + 5x in p_1 satisfies y^4 - 125y^2 + 125 = 0",
                           source="family p_n, coincidence of n=1 and n=11"),
    "lemma1": Preset("lemma1", 5, 5, "shintani1", None, description="irreducibility of p_n for odd n <= 15",
                     source="family p_n, irreducibility"),
}


def get_preset(name: str) -> Preset:
    key = name.strip().lower().replace(" ", "")
    key = {"shintani(1)": "shintani1", "shintani(3)": "shintani3", "shintani:1": "shintani1",
           "shintani:3": "shintani3"}.get(key, key)
    if key not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    return PRESETS[key]
