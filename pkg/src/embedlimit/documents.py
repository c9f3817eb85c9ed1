"""JSON documents for families, graphs and reports.

Polynomials are coefficient arrays (index = power of x).  Parsers accept
coefficients as JSON integers or decimal strings; emitters always write
decimal strings so that values beyond 2^53 survive any JSON reader.
Rationals are written as "p/q" strings.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Optional, Sequence, Union

from .distributions import ConvergenceRow, EmbeddingDistribution
from .enumerator import MultiGraph, amalgamate, partial_polynomials, genus_polynomial, euler_and_crosscap_polynomials
from .kinds import Kind
from .poly import IntPolynomial
from .polymatrix import ProductionMatrix
from .recurrence import FamilySpec, RecurrenceSpec
from .spectral import LimitCase, LimitReport, Primitivity

FIXTURE_PREFIX = "fixture:"


class DocumentError(ValueError):
    """Malformed document; the message starts with the offending JSON path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# --- scalars --------------------------------------------------------------


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise DocumentError(path, "expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise DocumentError(path, f"expected an integer or decimal string, got {value!r}")


def _fraction(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(path, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise DocumentError(path, f"expected a rational like \"p/q\", got {value!r}")


def _list(value: Any, path: str, length: Optional[int] = None) -> list:
    if not isinstance(value, list):
        raise DocumentError(path, f"expected an array, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise DocumentError(path, f"expected {length} entries, got {len(value)}")
    return value


def _obj(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(path, f"expected an object, got {type(value).__name__}")
    return value


def _kind(value: Any, path: str, allowed=(Kind.GENUS, Kind.EULER)) -> Kind:
    try:
        kind = Kind.parse(str(value))
    except ValueError:
        raise DocumentError(path, f"unknown kind {value!r}") from None
    if kind not in allowed:
        raise DocumentError(path, f"kind must be one of {[k.value for k in allowed]}")
    return kind


def fraction_str(q: Optional[Fraction]) -> Optional[str]:
    if q is None:
        return None
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decimal_str(q: Union[Fraction, int, float, None]) -> Optional[str]:
    """12 significant digits; informational only."""
    if q is None:
        return None
    return f"{float(q):.12g}"


# --- polynomials ----------------------------------------------------------


def poly_to_doc(p: IntPolynomial) -> list[str]:
    return [str(c) for c in p.coeffs]


def poly_from_doc(value: Any, path: str) -> IntPolynomial:
    return IntPolynomial([_int(c, f"{path}[{i}]") for i, c in enumerate(_list(value, path))])


def _polys_from_doc(value: Any, path: str, length: Optional[int] = None) -> tuple[IntPolynomial, ...]:
    return tuple(poly_from_doc(p, f"{path}[{i}]") for i, p in enumerate(_list(value, path, length)))


# --- graphs ---------------------------------------------------------------


def graph_to_doc(G: MultiGraph) -> dict:
    doc: dict = {"vertex_count": G.vertex_count, "edges": [list(e) for e in G.edges]}
    if G.roots is not None:
        doc["roots"] = list(G.roots)
    return doc


def graph_from_doc(value: Any, path: str = "$") -> MultiGraph:
    doc = _obj(value, path)
    if "vertex_count" not in doc:
        raise DocumentError(f"{path}.vertex_count", "missing")
    n = _int(doc["vertex_count"], f"{path}.vertex_count")
    edges = []
    for i, e in enumerate(_list(doc.get("edges", []), f"{path}.edges")):
        pair = _list(e, f"{path}.edges[{i}]", 2)
        u, v = (_int(x, f"{path}.edges[{i}][{j}]") for j, x in enumerate(pair))
        for j, w in enumerate((u, v)):
            if not 0 <= w < n:
                raise DocumentError(f"{path}.edges[{i}][{j}]", f"vertex {w} out of range 0..{n - 1}")
        edges.append((u, v))
    roots = None
    if doc.get("roots") is not None:
        r = _list(doc["roots"], f"{path}.roots", 2)
        roots = tuple(_int(x, f"{path}.roots[{j}]") for j, x in enumerate(r))
        for j, w in enumerate(roots):
            if not 0 <= w < n:
                raise DocumentError(f"{path}.roots[{j}]", f"vertex {w} out of range 0..{n - 1}")
    try:
        return MultiGraph(n, tuple(edges), roots)
    except ValueError as exc:
        raise DocumentError(path, str(exc)) from None


# --- families -------------------------------------------------------------


@dataclass(frozen=True)
class SeedGraph:
    """A graph whose partial polynomials give the initial vector.

    The split is by root vertices (graph.roots) or by the two sides of
    root_edge.  With neither, the graph's total polynomial is the single seed.
    """

    graph: MultiGraph
    root_edge: Optional[int] = None

    def initial_vector(self, kind: Kind, k: int, budget: Optional[int] = None) -> tuple[IntPolynomial, ...]:
        euler = kind is Kind.EULER
        if self.root_edge is None and self.graph.roots is None:
            if k != 1:
                raise ValueError(f"seed_graph without roots gives 1 seed, matrix dimension is {k}")
            total = euler_and_crosscap_polynomials(self.graph, budget)[0] if euler else genus_polynomial(self.graph, budget)
            return (total,)
        if k != 2:
            raise ValueError(f"a rooted seed_graph gives 2 partial polynomials, matrix dimension is {k}")
        return partial_polynomials(self.graph, self.graph.roots, root_edge=self.root_edge, euler=euler, budget=budget)


@dataclass(frozen=True)
class Construction:
    """How to build G_n explicitly: n + index_offset copies of H chained u -> v."""

    H: MultiGraph
    u: tuple[int, ...]
    v: tuple[int, ...]
    left_spider: Optional[tuple[MultiGraph, tuple[int, ...]]] = None
    right_spider: Optional[tuple[MultiGraph, tuple[int, ...]]] = None
    index_offset: int = 0

    def build(self, n: int) -> MultiGraph:
        return amalgamate(self.H, self.u, self.v, n + self.index_offset, self.left_spider, self.right_spider)[0]


@dataclass(frozen=True)
class FamilyDocument:
    name: str
    kind: Kind
    matrix: Optional[ProductionMatrix] = None
    initial_vector: Optional[tuple[IntPolynomial, ...]] = None
    spider_vector: Optional[tuple[IntPolynomial, ...]] = None
    recurrence: Optional[tuple[IntPolynomial, ...]] = None
    seeds: tuple[IntPolynomial, ...] = ()
    seed_graph: Optional[SeedGraph] = None
    construction: Optional[Construction] = None
    notes: str = ""

    @property
    def is_matrix(self) -> bool:
        return self.matrix is not None

    def family_spec(self, budget: Optional[int] = None) -> FamilySpec:
        if self.matrix is None:
            raise ValueError("family is given by a recurrence, not a matrix")
        init = self.initial_vector
        if init is None:
            if self.seed_graph is None:
                raise ValueError("family has neither initial_vector nor seed_graph")
            init = self.seed_graph.initial_vector(self.kind, self.matrix.k, budget)
        return FamilySpec(self.matrix, init, self.spider_vector, self.kind, self.name)

    def recurrence_spec(self) -> RecurrenceSpec:
        if self.recurrence is None:
            raise ValueError("family is given by a matrix, not a recurrence")
        return RecurrenceSpec(self.recurrence, self.seeds, self.kind, self.name)

    def spec(self, budget: Optional[int] = None) -> Union[FamilySpec, RecurrenceSpec]:
        return self.family_spec(budget) if self.is_matrix else self.recurrence_spec()

    def has_seeds(self) -> bool:
        if self.is_matrix:
            return self.initial_vector is not None or self.seed_graph is not None
        return bool(self.seeds)


def _spider_from_doc(value: Any, path: str) -> tuple[MultiGraph, tuple[int, ...]]:
    doc = _obj(value, path)
    G = graph_from_doc(doc.get("graph"), f"{path}.graph")
    roots = tuple(_int(x, f"{path}.roots[{i}]") for i, x in enumerate(_list(doc.get("roots"), f"{path}.roots")))
    return G, roots


def _construction_from_doc(value: Any, path: str) -> Construction:
    doc = _obj(value, path)
    H = graph_from_doc(doc.get("H"), f"{path}.H")
    u = tuple(_int(x, f"{path}.u[{i}]") for i, x in enumerate(_list(doc.get("u"), f"{path}.u")))
    v = tuple(_int(x, f"{path}.v[{i}]") for i, x in enumerate(_list(doc.get("v"), f"{path}.v")))
    if len(u) != len(v):
        raise DocumentError(path, "u and v must have the same length")
    left = _spider_from_doc(doc["left_spider"], f"{path}.left_spider") if doc.get("left_spider") else None
    right = _spider_from_doc(doc["right_spider"], f"{path}.right_spider") if doc.get("right_spider") else None
    offset = _int(doc.get("index_offset", 0), f"{path}.index_offset")
    return Construction(H, u, v, left, right, offset)


def family_from_doc(value: Any) -> FamilyDocument:
    doc = _obj(value, "$")
    name = str(doc.get("name", ""))
    kind = _kind(doc.get("kind", "genus"), "$.kind")
    has_m, has_r = "matrix" in doc, "recurrence" in doc
    if has_m == has_r:
        raise DocumentError("$", "exactly one of 'matrix' and 'recurrence' is required")
    matrix = init = spider = rec = None
    seeds: tuple[IntPolynomial, ...] = ()
    seed_graph = construction = None
    if has_m:
        rows = _list(doc["matrix"], "$.matrix")
        k = len(rows)
        if k == 0:
            raise DocumentError("$.matrix", "matrix is empty")
        entries = [_polys_from_doc(row, f"$.matrix[{i}]", k) for i, row in enumerate(rows)]
        try:
            matrix = ProductionMatrix(entries)
        except ValueError as exc:
            raise DocumentError("$.matrix", str(exc)) from None
        if doc.get("initial_vector") is not None:
            init = _polys_from_doc(doc["initial_vector"], "$.initial_vector", k)
        if doc.get("spider_vector") is not None:
            spider = _polys_from_doc(doc["spider_vector"], "$.spider_vector", k)
        if doc.get("seed_graph") is not None:
            sg = _obj(doc["seed_graph"], "$.seed_graph")
            root_edge = sg.get("root_edge")
            root_edge = None if root_edge is None else _int(root_edge, "$.seed_graph.root_edge")
            g = graph_from_doc(sg, "$.seed_graph")
            if root_edge is not None and not 0 <= root_edge < len(g.edges):
                raise DocumentError("$.seed_graph.root_edge", f"edge {root_edge} out of range")
            seed_graph = SeedGraph(g, root_edge)
    else:
        r = _obj(doc["recurrence"], "$.recurrence")
        rec = _polys_from_doc(r.get("coefficients"), "$.recurrence.coefficients")
        seeds = _polys_from_doc(r.get("seeds", []), "$.recurrence.seeds")
    if doc.get("construction") is not None:
        construction = _construction_from_doc(doc["construction"], "$.construction")
    out = FamilyDocument(name, kind, matrix, init, spider, rec, seeds, seed_graph, construction, str(doc.get("notes", "")))
    # validate eagerly so that errors carry a document position
    try:
        if has_m and init is not None:
            FamilySpec(matrix, init, spider, kind, name)
        if has_r:
            out.recurrence_spec()
    except ValueError as exc:
        raise DocumentError("$", str(exc)) from None
    return out


def family_to_doc(fam: FamilyDocument) -> dict:
    doc: dict = {"name": fam.name, "kind": fam.kind.value}
    if fam.notes:
        doc["notes"] = fam.notes
    if fam.matrix is not None:
        doc["matrix"] = [[poly_to_doc(e) for e in row] for row in fam.matrix.entries]
        if fam.initial_vector is not None:
            doc["initial_vector"] = [poly_to_doc(p) for p in fam.initial_vector]
        if fam.spider_vector is not None:
            doc["spider_vector"] = [poly_to_doc(p) for p in fam.spider_vector]
        if fam.seed_graph is not None:
            sg = graph_to_doc(fam.seed_graph.graph)
            if fam.seed_graph.root_edge is not None:
                sg["root_edge"] = fam.seed_graph.root_edge
            doc["seed_graph"] = sg
    else:
        doc["recurrence"] = {
            "coefficients": [poly_to_doc(b) for b in fam.recurrence],
            "seeds": [poly_to_doc(p) for p in fam.seeds],
        }
    c = fam.construction
    if c is not None:
        cd: dict = {"H": graph_to_doc(c.H), "u": list(c.u), "v": list(c.v), "index_offset": c.index_offset}
        for key, sp in (("left_spider", c.left_spider), ("right_spider", c.right_spider)):
            if sp is not None:
                cd[key] = {"graph": graph_to_doc(sp[0]), "roots": list(sp[1])}
        doc["construction"] = cd
    return doc


# --- reports --------------------------------------------------------------


def report_to_doc(r: LimitReport) -> dict:
    return {
        "type": "limit_report",
        "D": fraction_str(r.D),
        "e": fraction_str(r.e),
        "v": fraction_str(r.v),
        "decimal": {"D": decimal_str(r.D), "e": decimal_str(r.e), "v": decimal_str(r.v)},
        "case": r.case.value,
        "primitivity": r.primitivity.value,
        "dominant_simple": r.dominant_simple,
        "margin": r.margin,
        "lambda1_prime": fraction_str(r.lambda1_prime),
        "lambda1_doubleprime": fraction_str(r.lambda1_doubleprime),
        "constant_coefficients": r.constant_coefficients,
        "input_error": r.input_error,
        "diagnostics": list(r.diagnostics),
    }


def report_from_doc(value: Any) -> LimitReport:
    doc = _obj(value, "$")

    def opt(key):
        return None if doc.get(key) is None else _fraction(doc[key], f"$.{key}")

    try:
        case = LimitCase(doc["case"])
        prim = Primitivity(doc["primitivity"])
    except (KeyError, ValueError) as exc:
        raise DocumentError("$", f"bad case or primitivity: {exc}") from None
    margin = doc.get("margin")
    return LimitReport(
        opt("D"), opt("e"), opt("v"), bool(doc.get("dominant_simple")), prim, case,
        None if margin is None else float(margin), opt("lambda1_prime"), opt("lambda1_doubleprime"),
        bool(doc.get("constant_coefficients")), doc.get("input_error"), list(doc.get("diagnostics", [])),
    )


def distribution_to_doc(d: EmbeddingDistribution) -> dict:
    return {
        "type": "distribution",
        "kind": d.kind.value,
        "n": d.n,
        "weights": [str(w) for w in d.weights],
        "total": str(d.total),
        "probabilities": [fraction_str(p) for p in d.probabilities()],
    }


def distribution_from_doc(value: Any) -> EmbeddingDistribution:
    doc = _obj(value, "$")
    weights = tuple(_int(w, f"$.weights[{i}]") for i, w in enumerate(_list(doc.get("weights"), "$.weights")))
    kind = _kind(doc.get("kind"), "$.kind", tuple(Kind))
    n = doc.get("n")
    try:
        return EmbeddingDistribution(weights, _int(doc.get("total"), "$.total"), kind, None if n is None else _int(n, "$.n"))
    except ValueError as exc:
        raise DocumentError("$", str(exc)) from None


def rows_to_doc(rows: Sequence[ConvergenceRow]) -> dict:
    return {
        "type": "convergence",
        "rows": [{"n": r.n, "ks_distance": r.ks_distance, "mean_gap": r.mean_gap, "var_gap": r.var_gap} for r in rows],
    }


def rows_from_doc(value: Any) -> list[ConvergenceRow]:
    doc = _obj(value, "$")
    out = []
    for i, r in enumerate(_list(doc.get("rows"), "$.rows")):
        r = _obj(r, f"$.rows[{i}]")
        out.append(ConvergenceRow(_int(r["n"], f"$.rows[{i}].n"), float(r["ks_distance"]), float(r["mean_gap"]), float(r["var_gap"])))
    return out


CSV_HEADER = "n,ks_distance,mean_gap,var_gap"


def rows_to_csv(rows: Sequence[ConvergenceRow]) -> str:
    lines = [CSV_HEADER]
    lines += [f"{r.n},{r.ks_distance!r},{r.mean_gap!r},{r.var_gap!r}" for r in rows]
    return "\n".join(lines) + "\n"


# --- files ----------------------------------------------------------------


def _render(doc: Any, indent: int) -> str:
    # objects one key per line; arrays inline unless they hold objects
    pad = "  " * (indent + 1)
    if isinstance(doc, dict):
        if not doc:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(doc, list) and any(isinstance(x, dict) for x in doc):
        items = [pad + _render(x, indent + 1) for x in doc]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(doc, separators=(", ", ": "))


def dumps(doc: Any) -> str:
    return _render(doc, 0) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory and rename over the target."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fixture_names() -> list[str]:
    root = resources.files("embedlimit") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_json(source: str) -> Any:
    """Read a JSON file, or a bundled fixture when source is 'fixture:NAME'."""
    try:
        if source.startswith(FIXTURE_PREFIX):
            name = source[len(FIXTURE_PREFIX):]
            text = (resources.files("embedlimit") / "fixtures" / f"{name}.json").read_text()
        else:
            with open(source) as fh:
                text = fh.read()
    except (OSError, FileNotFoundError) as exc:
        raise DocumentError(source, f"cannot read: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(source, f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_family(source: str) -> FamilyDocument:
    return family_from_doc(load_json(source))


def load_graph(source: str) -> MultiGraph:
    return graph_from_doc(load_json(source))
