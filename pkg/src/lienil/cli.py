"""Command-line surface: build, inspect, serialize, scramble, and
identify nilradicals, plus a claim runner for the library's headline
guarantees.

Interchange is a small JSON schema (format_version 1) storing the
upper-triangular bracket table with lowest-term integer fractions, so
exactness survives serialization.  Exit codes are uniform across
subcommands: 0 success, 1 semantic rejection (not nilpotent, no type
matches, failed claims), 2 malformed input (bad arguments, unreadable
or invalid files, Jacobi violations, rank bound exceeded).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

from .chevalley import nilradical, verify_jacobi
from .exactlin import Matrix, Subspace, random_unimodular
from .fingerprint import (
    DEFAULT_MAX_RANK,
    UnrecognizedAlgebraError,
    fingerprint,
    identify,
    simple_dimension,
)
from .nilalg import (
    GradedAlgebra,
    NilpotentAlgebra,
    NotNilpotentError,
    change_basis,
    graded,
    graded_pairing,
    lower_central_series,
    right_kernel,
)
from .rootsys import (
    Root,
    SimpleType,
    all_types,
    build_root_system,
    degree_histogram,
    simple_predecessor,
)

FORMAT_VERSION = 1
ENV_MAX_RANK = "LIENIL_MAX_RANK"


class CliError(Exception):
    """Carries the exit code and message for a failed subcommand."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class AlgebraFileError(Exception):
    """The file does not satisfy the interchange schema."""


# ------------------------------------------------------------ serialization


def algebra_to_payload(a: NilpotentAlgebra, metadata: dict | None = None) -> dict:
    brackets = []
    for (i, j) in sorted(a.constants):
        terms = [
            {"k": k, "num": v.numerator, "den": v.denominator}
            for k, v in a.constants[(i, j)]
        ]
        brackets.append({"i": i, "j": j, "terms": terms})
    payload = {"format_version": FORMAT_VERSION, "dim": a.dim, "brackets": brackets}
    if metadata is not None:
        payload["metadata"] = metadata
    return payload


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise AlgebraFileError(message)


def _as_index(value, upper: int, what: str) -> int:
    _require(type(value) is int and 0 <= value < upper, f"{what} must be an integer in [0, {upper})")
    return value


def algebra_from_payload(payload) -> NilpotentAlgebra:
    _require(isinstance(payload, dict), "top level must be a JSON object")
    _require(
        set(payload) <= {"format_version", "dim", "brackets", "metadata"},
        "unknown top-level keys",
    )
    _require(payload.get("format_version") == FORMAT_VERSION,
             f"format_version must be {FORMAT_VERSION}")
    dim = payload.get("dim")
    _require(type(dim) is int and dim >= 1, "dim must be a positive integer")
    brackets = payload.get("brackets")
    _require(isinstance(brackets, list), "brackets must be a list")
    constants = {}
    for entry in brackets:
        _require(isinstance(entry, dict) and set(entry) == {"i", "j", "terms"},
                 "each bracket needs exactly the keys i, j, terms")
        i = _as_index(entry["i"], dim, "i")
        j = _as_index(entry["j"], dim, "j")
        _require(i < j, "brackets must be upper-triangular (i < j)")
        _require((i, j) not in constants, f"duplicate bracket ({i}, {j})")
        _require(isinstance(entry["terms"], list) and entry["terms"],
                 "terms must be a nonempty list")
        terms = []
        seen = set()
        for term in entry["terms"]:
            _require(isinstance(term, dict) and set(term) == {"k", "num", "den"},
                     "each term needs exactly the keys k, num, den")
            k = _as_index(term["k"], dim, "k")
            _require(k not in seen, f"duplicate output index {k} in bracket ({i}, {j})")
            seen.add(k)
            num, den = term["num"], term["den"]
            _require(type(num) is int and type(den) is int, "num and den must be integers")
            _require(num != 0, "zero terms must be omitted")
            _require(den >= 1, "den must be positive")
            _require(math.gcd(num, den) == 1, "fractions must be in lowest terms")
            terms.append((k, Fraction(num, den)))
        constants[(i, j)] = tuple(terms)
    return NilpotentAlgebra(dim, constants)


def save_algebra(path: str, a: NilpotentAlgebra, metadata: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_json(algebra_to_payload(a, metadata)))


def load_algebra(path: str) -> NilpotentAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"{path} is not valid JSON: {exc}") from None
    return algebra_from_payload(payload)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------------ helpers


def _rank_bound() -> int:
    raw = os.environ.get(ENV_MAX_RANK)
    if raw is None:
        return DEFAULT_MAX_RANK
    try:
        bound = int(raw)
    except ValueError:
        raise CliError(2, f"{ENV_MAX_RANK} must be an integer, got {raw!r}") from None
    if bound < 1:
        raise CliError(2, f"{ENV_MAX_RANK} must be at least 1")
    return bound


def _parse_type(family: str, rank: int, bound: int) -> SimpleType:
    try:
        t = SimpleType(family.strip().upper(), rank)
    except ValueError as exc:
        raise CliError(2, str(exc)) from None
    if not t.is_valid():
        raise CliError(2, f"no simple algebra of type {t}")
    if t.rank > bound:
        raise CliError(2, f"rank {t.rank} exceeds the bound {bound} "
                          f"(set {ENV_MAX_RANK} to raise it)")
    return t


def _load_or_die(path: str) -> NilpotentAlgebra:
    try:
        return load_algebra(path)
    except AlgebraFileError as exc:
        raise CliError(2, str(exc)) from None
    except (ValueError, TypeError) as exc:
        raise CliError(2, f"invalid algebra data: {exc}") from None


# -------------------------------------------------------------- subcommands


def cmd_table(args) -> int:
    bound = _rank_bound()
    if args.max_rank < 1 or args.max_rank > bound:
        raise CliError(2, f"--max-rank must be between 1 and {bound}")
    rows = [
        {
            "type": str(t),
            "family": t.family,
            "rank": t.rank,
            "dimension": simple_dimension(t),
            "nilradical_dim": (simple_dimension(t) - t.rank) // 2,
        }
        for t in all_types(args.max_rank)
    ]
    if args.format == "json":
        print(_json({"max_rank": args.max_rank, "rows": rows}), end="")
    else:
        print(f"{'type':<6}{'rank':>6}{'dim':>8}{'dim nil':>9}")
        for r in rows:
            print(f"{r['type']:<6}{r['rank']:>6}{r['dimension']:>8}{r['nilradical_dim']:>9}")
    return 0


def cmd_roots(args) -> int:
    t = _parse_type(args.family, args.rank, _rank_bound())
    rs = build_root_system(t)
    roots = [{"coeffs": list(r.coeffs), "degree": r.degree} for r in rs.positive_roots]
    if args.format == "json":
        print(_json({
            "type": str(t),
            "rank": t.rank,
            "count": len(roots),
            "degree_histogram": degree_histogram(rs),
            "roots": roots,
        }), end="")
    else:
        print(f"{t}: {len(roots)} positive roots")
        for r in roots:
            coeffs = " ".join(f"{c:>2}" for c in r["coeffs"])
            print(f"  [{coeffs}]  degree {r['degree']}")
    return 0


def cmd_invariants(args) -> int:
    bound = _rank_bound()
    t = _parse_type(args.family, args.rank, bound)
    rs = build_root_system(t)
    a = nilradical(rs)
    f = lower_central_series(a)
    fp = fingerprint(a, f)
    ident = identify(a, max_rank=bound, filtration=f)
    print(_json({
        "type": str(t),
        "nilradical_dim": a.dim,
        "rank": fp.rank,
        "simple_dim": fp.simple_dim,
        "nilpotency_class": fp.nilpotency_class,
        "lcs_dims": list(f.dims),
        "graded_dims": list(fp.graded_dims),
        "degree_histogram": degree_histogram(rs),
        "identification": {
            "canonical": str(ident.canonical),
            "aliases": [str(x) for x in ident.aliases],
        },
    }), end="")
    return 0


def cmd_emit(args) -> int:
    t = _parse_type(args.family, args.rank, _rank_bound())
    a = nilradical(build_root_system(t))
    save_algebra(args.out, a, metadata={"type": str(t)})
    print(f"wrote {t} nilradical (dim {a.dim}) to {args.out}")
    return 0


def cmd_obfuscate(args) -> int:
    a = _load_or_die(args.file)
    try:
        lower_central_series(a)
    except NotNilpotentError as exc:
        raise CliError(1, f"input is not nilpotent: {exc}") from None
    b = change_basis(a, random_unimodular(a.dim, args.seed))
    save_algebra(args.out, b, metadata={"seed": args.seed})
    print(f"wrote obfuscated algebra (dim {b.dim}, seed {args.seed}) to {args.out}")
    return 0


def cmd_identify(args) -> int:
    a = _load_or_die(args.file)
    report = verify_jacobi(a)
    if not report.ok:
        first = ", ".join(str(v) for v in report.violations[:3])
        raise CliError(2, f"Jacobi identity fails on {len(report.violations)} "
                          f"basis triples (first: {first})")
    bound = _rank_bound()
    try:
        f = lower_central_series(a)
        fp = fingerprint(a, f)
        ident = identify(a, max_rank=bound, filtration=f)
    except NotNilpotentError as exc:
        raise CliError(1, f"not nilpotent: {exc}") from None
    except UnrecognizedAlgebraError as exc:
        raise CliError(1, f"unrecognized: {exc}") from None
    if ident.canonical.family in ("B", "C") and ident.canonical.rank >= 3:
        fp = replace(fp, bc_family=ident.canonical.family)
    print(_json({
        "canonical": str(ident.canonical),
        "aliases": [str(x) for x in ident.aliases],
        "fingerprint": {
            "rank": fp.rank,
            "nil_dim": fp.nil_dim,
            "simple_dim": fp.simple_dim,
            "nilpotency_class": fp.nilpotency_class,
            "graded_dims": list(fp.graded_dims),
            "bc_family": fp.bc_family,
        },
    }), end="")
    return 0


# ------------------------------------------------------------ claim checks


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    ok: bool
    witness: str


def _degree_filtration(rs) -> list[Subspace]:
    """span{e_k : degree(root_k) >= i} for i = 1, 2, ..., then zero."""
    n = len(rs.positive_roots)
    top = max(r.degree for r in rs.positive_roots)
    out = []
    for i in range(1, top + 1):
        rows = [
            tuple(Fraction(1 if c == k else 0) for c in range(n))
            for k, r in enumerate(rs.positive_roots)
            if r.degree >= i
        ]
        out.append(Subspace(n, Matrix(tuple(rows), len(rows), n)))
    out.append(Subspace.zero(n))
    return out


def _graded_table(g: GradedAlgebra):
    """Structure constants of the graded algebra against the coset
    representatives, keyed like NilpotentAlgebra.constants."""
    pivots = [
        [next(c for c, x in enumerate(row) if x) for row in p.entries]
        for p in g.pieces
    ]
    cls = g.filtration.nilpotency_class
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(1, cls + 1):
        for j in range(i, cls - i + 1):
            p = graded_pairing(g, i, j)
            for ai in range(p.source_dims[0]):
                for bj in range(p.source_dims[1]):
                    ga, gb = pivots[i - 1][ai], pivots[j - 1][bj]
                    if ga == gb:
                        continue
                    for ck, val in enumerate(p.tensor[ai][bj]):
                        if val:
                            key, v = ((ga, gb), val) if ga < gb else ((gb, ga), -val)
                            out.setdefault(key, {})[pivots[i + j - 1][ck]] = v
    return {k: tuple(sorted(d.items())) for k, d in out.items()}


def _perturb_pieces(g: GradedAlgebra, degrees, rng) -> GradedAlgebra:
    """New coset representatives: each row plus a random element of the
    next filtration term (same cosets, different representatives)."""
    f = g.filtration
    pieces = list(g.pieces)
    for d in degrees:
        tail = f.terms[d]  # terms[d] = N^{d+1}
        rows = []
        for row in pieces[d - 1].entries:
            new = list(row)
            for trow in tail.basis.entries:
                c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                new = [x + c * y for x, y in zip(new, trow)]
            rows.append(tuple(new))
        pieces[d - 1] = Matrix(tuple(rows), len(rows), g.algebra.dim)
    return GradedAlgebra(g.algebra, f, tuple(pieces))


def _coset_coordinates(piece: Matrix, root_index: int):
    """Coordinates in a graded piece of the standard vector at a root
    index, assuming canonical (standard-basis) representatives."""
    coords = []
    hit = False
    for row in piece.entries:
        pivot = next(c for c, x in enumerate(row) if x)
        coords.append(Fraction(1) if pivot == root_index else Fraction(0))
        hit = hit or pivot == root_index
    if not hit:
        raise AssertionError("root index is not a representative pivot")
    return coords


def run_claims(max_rank: int) -> list[ClaimResult]:
    """Check the library's headline guarantees up to the rank bound."""
    types = all_types(max_rank)
    cache: dict[SimpleType, NilpotentAlgebra] = {}
    series: dict[SimpleType, object] = {}

    def nr(t: SimpleType) -> NilpotentAlgebra:
        if t not in cache:
            cache[t] = nilradical(build_root_system(t))
        return cache[t]

    def lcs(t: SimpleType):
        if t not in series:
            series[t] = lower_central_series(nr(t))
        return series[t]

    results: list[ClaimResult] = []

    def claim(claim_id: str, ok: bool, witness: str) -> None:
        results.append(ClaimResult(claim_id, ok, witness))

    # 2 * dim(nilradical) + rank reproduces the dimension table.
    bad = [str(t) for t in types if 2 * nr(t).dim + t.rank != simple_dimension(t)]
    claim("dimension-table", not bad, f"{len(types)} types checked" if not bad else f"mismatch: {bad}")

    # dim gr^1 equals the rank.
    bad = [str(t) for t in types if graded(nr(t), lcs(t)).dims[0] != t.rank]
    claim("rank-recovery", not bad, f"{len(types)} types checked" if not bad else f"mismatch: {bad}")

    # The abstract lower central series is the degree filtration.
    bad = [
        str(t) for t in types
        if list(lcs(t).terms) != _degree_filtration(build_root_system(t))
    ]
    claim("series-is-degree-filtration", not bad,
          f"{len(types)} types checked" if not bad else f"mismatch: {bad}")

    # B_n and C_n have identical degree histograms.
    if max_rank >= 2:
        bad = [
            n for n in range(2, max_rank + 1)
            if degree_histogram(build_root_system(SimpleType("B", n)))
            != degree_histogram(build_root_system(SimpleType("C", n)))
        ]
        claim("bc-histogram-equal", not bad,
              f"n = 2..{max_rank}" if not bad else f"differs at n = {bad}")

    # E6 has five degree-4 roots; B6 and C6 have four.
    if max_rank >= 6:
        counts = {
            name: graded(nr(SimpleType.parse(name)), lcs(SimpleType.parse(name))).dims[3]
            for name in ("E6", "B6", "C6")
        }
        claim("e6-degree4-count",
              counts["E6"] == 5 and counts["B6"] == 4 and counts["C6"] == 4,
              f"E6: {counts['E6']}, B6: {counts['B6']}, C6: {counts['C6']}")

    # Right kernel of gr^2 x gr^{2n-3} -> gr^{2n-1} splits B from C,
    # and for C_n it contains the coset of the long root 2e_2.
    if max_rank >= 3:
        ok = True
        notes = []
        for n in range(3, max_rank + 1):
            for fam in ("B", "C"):
                t = SimpleType(fam, n)
                g = graded(nr(t), lcs(t))
                ker = right_kernel(graded_pairing(g, 2, 2 * n - 3))
                if fam == "B" and ker.dim != 0:
                    ok = False
                    notes.append(f"B{n} kernel dim {ker.dim}")
                if fam == "C":
                    # 2e_2 in simple-root coordinates: (0, 2, ..., 2, 1).
                    coeffs = tuple(0 if i == 0 else (1 if i == n - 1 else 2) for i in range(n))
                    idx = build_root_system(t).index_of[Root(coeffs)]
                    coset = _coset_coordinates(g.piece(2 * n - 3), idx)
                    if ker.dim < 1 or not ker.contains(coset):
                        ok = False
                        notes.append(f"C{n} kernel misses the 2e2 coset")
        claim("bc-right-kernel-split", ok,
              f"n = 3..{max_rank}, C kernel contains 2e2" if ok else "; ".join(notes))

    # Identification round-trips through seeded unimodular basis changes.
    seeds = (101, 202, 303)
    trips = 0
    bad = []
    for t in types:
        expected = identify(nr(t), max_rank=max_rank, filtration=lcs(t))
        for seed in seeds:
            b = change_basis(nr(t), random_unimodular(nr(t).dim, seed))
            trips += 1
            if identify(b, max_rank=max_rank) != expected:
                bad.append(f"{t}@{seed}")
    claim("round-trip-identification", not bad,
          f"{trips} round trips" if not bad else f"failed: {bad}")

    # Every constructed table satisfies the Jacobi identity.
    bad = [str(t) for t in types if not verify_jacobi(nr(t)).ok]
    claim("jacobi-holds", not bad,
          f"{len(types)} types checked" if not bad else f"violations in {bad}")

    # Graded structure constants equal the nilradical's in the root basis.
    bad = [
        str(t) for t in types
        if _graded_table(graded(nr(t), lcs(t))) != nr(t).constants
    ]
    claim("graded-matches-nilradical", not bad,
          f"{len(types)} types checked" if not bad else f"mismatch: {bad}")

    # Pairings do not depend on the choice of coset representatives.
    rng = random.Random(20240801)
    checked = 0
    bad = []
    for t in [x for x in types if x.rank <= min(4, max_rank)]:
        g = graded(nr(t), lcs(t))
        cls = g.filtration.nilpotency_class
        for i in range(1, cls + 1):
            for j in range(1, cls - i + 1):
                base = graded_pairing(g, i, j).tensor
                for _ in range(3):
                    gp = _perturb_pieces(g, {i, j}, rng)
                    checked += 1
                    if graded_pairing(gp, i, j).tensor != base:
                        bad.append(f"{t} ({i},{j})")
    claim("pairing-well-defined", not bad,
          f"{checked} perturbed pairings" if not bad else f"changed: {bad}")

    # Every root of degree >= 2 has a simple-root predecessor.
    checked = 0
    bad = []
    for t in types:
        rs = build_root_system(t)
        for r in rs.positive_roots:
            if r.degree >= 2:
                checked += 1
                i = simple_predecessor(rs, r)
                below = list(r.coeffs)
                below[i] -= 1
                if below[i] < 0 or not rs.is_positive_root(Root(tuple(below))):
                    bad.append(f"{t} {r.coeffs}")
    claim("simple-predecessor-exists", not bad,
          f"{checked} roots checked" if not bad else f"missing: {bad}")

    return results


def cmd_verify_claims(args) -> int:
    bound = _rank_bound()
    if args.max_rank < 1 or args.max_rank > bound:
        raise CliError(2, f"--max-rank must be between 1 and {bound}")
    results = run_claims(args.max_rank)
    width = max(len(r.claim_id) for r in results)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.claim_id:<{width}}  {r.witness}")
    failed = sum(1 for r in results if not r.ok)
    print(f"{len(results) - failed}/{len(results)} claims passed (max rank {args.max_rank})")
    return 0 if failed == 0 else 1


# --------------------------------------------------------------- entrypoint


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lienil",
        description="Nilradicals of Borel subalgebras: construction, graded "
                    "invariants, and simple-type identification.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="rank/dimension table of the simple algebras")
    t.add_argument("--max-rank", type=int, default=8)
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("roots", help="positive roots of one simple type")
    r.add_argument("family")
    r.add_argument("rank", type=int)
    r.add_argument("--format", choices=("text", "json"), default="text")
    r.set_defaults(func=cmd_roots)

    i = sub.add_parser("invariants", help="graded invariants of one nilradical")
    i.add_argument("family")
    i.add_argument("rank", type=int)
    i.set_defaults(func=cmd_invariants)

    e = sub.add_parser("emit", help="write a nilradical to an algebra file")
    e.add_argument("family")
    e.add_argument("rank", type=int)
    e.add_argument("-o", "--out", required=True)
    e.set_defaults(func=cmd_emit)

    o = sub.add_parser("obfuscate", help="rewrite an algebra file in a scrambled basis")
    o.add_argument("file")
    o.add_argument("--seed", type=int, required=True)
    o.add_argument("-o", "--out", required=True)
    o.set_defaults(func=cmd_obfuscate)

    d = sub.add_parser("identify", help="name the simple type behind an algebra file")
    d.add_argument("file")
    d.set_defaults(func=cmd_identify)

    v = sub.add_parser("verify-claims", help="check the library's guarantees")
    v.add_argument("--max-rank", type=int, default=8)
    v.set_defaults(func=cmd_verify_claims)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    raise SystemExit(main())
