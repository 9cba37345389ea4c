"""Command-line driver.

Exit codes: 0 success, 1 invalid input, 2 a requested check failed its
verdict (CI gate), 3 internal assertion — the engine contradicted itself.

All JSON artifacts are emitted with sorted keys and fixed separators, so
identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import jsonio
from .amalgam import amalgamate
from .certify import (
    certify_by_transport,
    enumerate_seeds,
    frozen_sufficient,
    gmatrix_criterion,
    is_universally_monomial,
)
from .cgvectors import cg_along_path, check_sign_coherence, g_tilde
from .errors import (
    ConstructionFailed,
    DegenerateExchange,
    FrozenMutation,
    HypothesisViolated,
    InvalidFolding,
    InvalidGluing,
    NotInvariant,
    NotSubtractionFree,
    QClusterError,
    SeedMismatch,
)
from .jsonio import BadInput
from .seeds import Seed, make_seed, mutate_path
from .torus import QElement, monomial
from .transport import transport

__all__ = ["main"]


# -- plumbing -----------------------------------------------------------------


def _read_json(path: str | None):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _load_seed(path: str | None) -> Seed:
    return jsonio.seed_from_obj(_read_json(path))


def _parse_ints(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _emit(obj) -> None:
    sys.stdout.write(jsonio.dumps(obj))


def _print_matrix(m) -> None:
    cells = [[str(int(x)) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    for row in cells:
        print(" ".join(c.rjust(width) for c in row))


# -- plain seed commands --------------------------------------------------------


def cmd_mutate(args) -> int:
    seed = _load_seed(args.seed)
    path = [args.k] if args.k is not None else _parse_ints(args.path or "")
    if not path:
        raise BadInput("mutate needs -k or --path")
    _emit(jsonio.seed_to_obj(mutate_path(seed, path)))
    return 0


def cmd_enumerate(args) -> int:
    seed = _load_seed(args.seed)
    nodes, closed = enumerate_seeds(seed, args.depth, threads=args.threads)
    out = {
        "closed": closed,
        "count": len(nodes),
        "seed": jsonio.seed_to_obj(seed),
        "nodes": [
            {
                "index": n.index,
                "path": list(n.path),
                "parent": n.parent,
                "step": n.step_k,
                "c": jsonio.matrix_to_obj(n.cg.c),
                "g": jsonio.matrix_to_obj(n.cg.g),
                "g_tilde": jsonio.matrix_to_obj(g_tilde(n.cg)),
            }
            for n in nodes
        ],
    }
    _emit(out)
    return 0


def _matrix_cmd(args, pick) -> int:
    seed = _load_seed(args.seed)
    state = cg_along_path(seed, _parse_ints(args.path or ""))
    m = pick(state)
    if args.json:
        _emit(jsonio.matrix_to_obj(m))
    else:
        _print_matrix(m)
    return 0


def cmd_cvec(args) -> int:
    return _matrix_cmd(args, lambda st: st.c)


def cmd_gvec(args) -> int:
    return _matrix_cmd(args, lambda st: st.g)


def cmd_gtilde(args) -> int:
    return _matrix_cmd(args, g_tilde)


# -- certification commands ----------------------------------------------------


def cmd_check_mono(args) -> int:
    if args.exp:
        seed = _load_seed(args.seed)
        exps = [tuple(_parse_ints(args.exp))]
    else:
        seed, named = jsonio.parse_elements(_read_json(args.element))
        exps = sorted({e for f in named.values() for e in f.terms})
    if not exps:
        raise BadInput("check-mono needs --exp or an element with terms")
    results = [
        {"exp": list(v), "universally_monomial": is_universally_monomial(seed, v)}
        for v in exps
    ]
    ok = all(r["universally_monomial"] for r in results)
    _emit({"ok": ok, "per_exp": results})
    return 0 if ok else 2


def _check_one(args, seed, nodes, closed, f: QElement):
    if args.mode == "frozen":
        bad = [v for v in sorted(f.terms) if not frozen_sufficient(seed, v)]
        verdict = {
            "status": "universally_polynomial" if not bad else "up_to_depth",
            "depth": 0,
            "per_node": [{"node": 0, "criterion": "frozen_sufficient"}],
        }
        if bad:
            verdict["witness_monomial"] = list(bad[0])
        return verdict, not bad
    if args.mode == "gmatrix":
        v = gmatrix_criterion(f, nodes, closed)
    else:
        v = certify_by_transport(f, nodes, closed)
    return jsonio.verdict_to_obj(v), v.ok


def cmd_check_poly(args) -> int:
    seed, named = jsonio.parse_elements(_read_json(args.element))
    if not named:
        raise BadInput("no element to check")
    nodes = closed = None
    if args.mode in ("gmatrix", "transport"):
        nodes, closed = enumerate_seeds(seed, args.depth, threads=args.threads)
    results = {}
    all_ok = True
    for name, f in sorted(named.items()):
        verdict, ok = _check_one(args, seed, nodes, closed, f)
        results[name] = verdict
        all_ok = all_ok and ok
    if list(results) == ["element"]:
        _emit(results["element"])
    else:
        rank = ["fails_at", "up_to_depth", "universally_polynomial", "universally_monomial"]
        worst = min((r["status"] for r in results.values()), key=rank.index)
        _emit({"status": worst, "elements": results})
    return 0 if all_ok else 2


# -- assembly commands -----------------------------------------------------------


def cmd_fold(args) -> int:
    from .folding import fold, make_folding

    seed = _load_seed(args.seed)
    orbits = [_parse_ints(part) for part in args.orbits.split("|")]
    spec = make_folding(seed, orbits)
    _emit(jsonio.seed_to_obj(fold(spec)))
    return 0


def cmd_amalgamate(args) -> int:
    parts = [_load_seed(p) for p in args.seeds]
    groups = []
    for group in args.glue.split(";") if args.glue else []:
        members = []
        for m in group.split("="):
            p, _, i = m.partition(":")
            members.append((int(p), int(i)))
        groups.append(tuple(members))
    amal = amalgamate(parts, groups)
    _emit(jsonio.seed_to_obj(amal.seed))
    return 0


# -- scenario catalog ------------------------------------------------------------


def cmd_scenario(args) -> int:
    from . import scenarios as sc

    name = args.name
    if name == "sl2":
        if args.emit == "seed":
            _emit(jsonio.seed_to_obj(sc.standard_cycle_seed()))
            return 0
        g = sc.rank1_images()
        out = jsonio.elements_bundle(g.seed, g.as_dict())
        out["meta"] = {
            "f_support": list(g.f_support),
            "e_support": list(g.e_support),
            "passing": [[list(a), list(b)] for a, b in g.passing],
        }
        _emit(out)
        return 0
    if name == "an-chain":
        chain = sc.an_chain(args.n)
        if args.emit == "seed":
            _emit(jsonio.seed_to_obj(chain.seed))
            return 0
        out = jsonio.elements_bundle(
            chain.seed,
            {"telescoping": chain.telescoping, "full_monomial": chain.full_monomial},
        )
        out["meta"] = {"chain": list(chain.chain), "path": list(chain.path)}
        _emit(out)
        return 0
    if name == "markov":
        seed = sc.markov_seed()
        if args.emit == "seed":
            _emit(jsonio.seed_to_obj(seed))
            return 0
        _emit(jsonio.elements_bundle(seed, {"invariant": sc.markov_invariant(seed)}))
        return 0
    if name == "sl2-coproduct":
        cp = sc.sl2_coproduct()
        if args.emit == "seed":
            _emit(jsonio.seed_to_obj(cp.amalgamation.seed))
            return 0
        out = jsonio.elements_bundle(cp.amalgamation.seed, cp.images.as_dict())
        out["meta"] = {
            "convention": cp.convention,
            "matching": list(cp.matching),
            "passing": [[c, list(m)] for c, m in cp.passing],
        }
        _emit(out)
        return 0
    raise BadInput(f"unknown scenario {name!r}")


# -- self-check battery ----------------------------------------------------------


def _a2_seed() -> Seed:
    return make_seed([[0, 1], [-1, 0]], label="a2")


def _a3_seed() -> Seed:
    return make_seed([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], label="a3")


def _check_cycle_graph() -> None:
    from .scenarios import standard_cycle_seed

    nodes, closed = enumerate_seeds(standard_cycle_seed(), 8)
    assert closed and len(nodes) == 4, f"got {len(nodes)} nodes, closed={closed}"
    ident = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    row1 = ((1, 0, 0, 0), (1, -1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    row3 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 1, -1))
    both = ((1, 0, 0, 0), (1, -1, 0, 0), (0, 0, 1, 0), (0, 0, 1, -1))
    got = {tuple(tuple(int(x) for x in row) for row in g_tilde(n.cg)) for n in nodes}
    assert got == {ident, row1, row3, both}, f"g-tilde set differs: {sorted(got)}"


def _check_criterion_table() -> None:
    from .scenarios import ring_generators, standard_cycle_seed

    seed = standard_cycle_seed()
    nodes, closed = enumerate_seeds(seed, 8)
    for d0 in range(4):
        for d1 in range(4):
            for d2 in range(4):
                for d3 in range(4):
                    v = (d0, d1, d2, d3)
                    want = d0 >= d1 and d2 >= d3
                    f = monomial(seed, v)
                    got = gmatrix_criterion(f, nodes, closed).ok
                    assert got == want, f"gmatrix criterion at {v}: {got} != {want}"
    for f in ring_generators(seed):
        a = gmatrix_criterion(f, nodes, closed)
        b = certify_by_transport(f, nodes, closed)
        assert a.ok and b.ok, f"generator rejected: {sorted(f.terms)}"
        assert a.status == b.status, f"{a.status} != {b.status}"


def _check_rank1_relations() -> None:
    from .scenarios import rank1_images

    g = rank1_images()
    assert g.casimir.terms == {
        (1, 0, 1, 0): {0: 1},
        (1, 1, 1, 1): {0: 1},
    }, f"casimir shape: {g.casimir.terms}"
    assert len(g.passing) == 4, f"expected four raw assignments, got {g.passing}"


def _check_chain_replay() -> None:
    from .scenarios import an_chain

    for n in (3, 4, 5):
        chain = an_chain(n)
        tele = transport(chain.telescoping, chain.path)
        full = transport(chain.full_monomial, chain.path)
        unit = tuple(1 if i == 0 else 0 for i in range(n))
        pair = tuple(1 if i in (0, n - 1) else 0 for i in range(n))
        assert list(tele.terms) == [unit], f"telescope at n={n}: {list(tele.terms)}"
        assert list(full.terms) == [pair], f"full monomial at n={n}: {list(full.terms)}"
        final = mutate_path(chain.seed, chain.path)
        assert frozen_sufficient(final, unit) and frozen_sufficient(final, pair)


def _check_sign_coherence_battery() -> None:
    from .scenarios import markov_seed, standard_cycle_seed

    runs = [
        (_a2_seed(), 10, True),
        (_a3_seed(), 16, True),
        (standard_cycle_seed(), 8, None),
        (markov_seed(), 5, False),
    ]
    for seed, depth, want_closed in runs:
        nodes, closed = enumerate_seeds(seed, depth)
        if want_closed is not None:
            assert closed == want_closed, f"{seed.label}: closed={closed}"
        for n in nodes:
            rep = check_sign_coherence(n.cg)
            assert rep["ok"], f"{seed.label} at path {n.path}: {rep['violations']}"


def _check_cross_oracles() -> None:
    from .cgvectors import c_matrix_via_principal
    from .transport import classical_transport, principal_weight
    from .seeds import principal_extension

    for seed in (_a2_seed(), _a3_seed()):
        nodes, _ = enumerate_seeds(seed, 6)
        for n in nodes:
            assert c_matrix_via_principal(seed, n.path) == n.cg.c, n.path
            if len(n.path) > 4:
                continue
            ext = principal_extension(seed)
            for j in range(seed.rank):
                poly = classical_transport(ext, n.path, j)
                weights = {principal_weight(seed, e) for e in poly}
                assert len(weights) == 1, f"not an eigenvector at {n.path}"
                w = next(iter(weights))
                col = tuple(n.cg.g[i][j] for i in range(seed.rank))
                assert tuple(w[: seed.rank]) == col, f"{n.path}: {w} vs {col}"


def _check_folding_square() -> None:
    from .folding import fold, make_folding, orbit_mutate, symmetric_mutation_check

    fixtures = [
        (make_seed([[0, 1, 0], [-1, 0, -1], [0, 1, 0]], unfrozen={1}), [(0, 2), (1,)]),
        (
            make_seed(
                [[0, 1, 0, 1], [-1, 0, -1, 0], [0, 1, 0, 1], [-1, 0, -1, 0]],
                unfrozen={1, 3},
            ),
            [(0, 2), (1, 3)],
        ),
    ]
    for base, orbits in fixtures:
        spec = make_folding(base, orbits)
        unfrozen_orbits = [
            oi for oi, orb in enumerate(spec.orbits) if orb[0] in base.unfrozen
        ]
        for oi in unfrozen_orbits:
            for a in (-2, -1, 0, 1, 2):
                symmetric_mutation_check(spec, oi, a)
        for depth in range(1, 5):
            for seq_id in range(len(unfrozen_orbits) ** depth):
                seq, x = [], seq_id
                for _ in range(depth):
                    seq.append(unfrozen_orbits[x % len(unfrozen_orbits)])
                    x //= len(unfrozen_orbits)
                spec2 = spec
                for oi in seq:
                    spec2 = orbit_mutate(spec2, oi)
                assert fold(spec2) == mutate_path(fold(spec), seq), seq


def _check_markov() -> None:
    from .scenarios import markov_invariant, markov_seed

    seed = markov_seed()
    inv = markov_invariant(seed)
    for k in range(3):
        out = transport(inv, [k])
        assert out.terms == {(1, 1, 1): {0: 1}}, f"mutation {k}: {out.terms}"
    _, closed = enumerate_seeds(seed, 5)
    assert not closed, "markov graph closed unexpectedly"


def _check_coproduct() -> None:
    from .scenarios import sl2_coproduct

    cp = sl2_coproduct()
    nodes, closed = enumerate_seeds(cp.amalgamation.seed, 6)
    for name, f in cp.images.as_dict().items():
        v = certify_by_transport(f, nodes, closed)
        assert v.ok, f"{name}: {v.status}"
        assert v.coefficient_status == "positive_integral", (name, v.coefficient_status)


def _check_negative_controls() -> None:
    from .scenarios import standard_cycle_seed

    a2 = _a2_seed()
    nodes, closed = enumerate_seeds(a2, 10)
    for d0 in range(4):
        for d1 in range(4):
            if (d0, d1) == (0, 0):
                continue
            f = monomial(a2, (d0, d1))
            assert not gmatrix_criterion(f, nodes, closed).ok, (d0, d1)
    seed = standard_cycle_seed()
    nodes, closed = enumerate_seeds(seed, 8)
    bad = monomial(seed, (0, 1, 0, 0))
    for verdict in (
        gmatrix_criterion(bad, nodes, closed),
        certify_by_transport(bad, nodes, closed),
    ):
        assert verdict.status == "fails_at" and verdict.witness_path, verdict
    # A lone frozen generator passes the formal matrix test but is not even
    # universally Laurent; only the transport certificate can tell.
    lone = monomial(seed, (1, 0, 0, 0))
    assert gmatrix_criterion(lone, nodes, closed).ok
    v = certify_by_transport(lone, nodes, closed)
    assert v.status == "fails_at" and v.witness_path, v


_CHECKS = [
    ("cycle-graph", _check_cycle_graph),
    ("criterion-table", _check_criterion_table),
    ("rank1-relations", _check_rank1_relations),
    ("chain-replay", _check_chain_replay),
    ("sign-coherence", _check_sign_coherence_battery),
    ("cross-oracles", _check_cross_oracles),
    ("folding-square", _check_folding_square),
    ("markov", _check_markov),
    ("coproduct", _check_coproduct),
    ("negative-controls", _check_negative_controls),
]


def cmd_verify(args) -> int:
    failures = 0
    for name, fn in _CHECKS:
        t0 = time.perf_counter()
        try:
            fn()
        except AssertionError as exc:
            failures += 1
            print(f"FAIL - {name}: {exc}")
        else:
            print(f"ok - {name} ({time.perf_counter() - t0:.2f}s)")
    print(f"{len(_CHECKS) - failures}/{len(_CHECKS)} checks passed")
    return 0 if failures == 0 else 2


# -- performance smoke -----------------------------------------------------------


def _random_quiver(rng: random.Random, rank: int, frozen: int) -> Seed:
    # Sparse simply-laced quivers: about one arrow per vertex pair in two,
    # roughly the density of quivers coming from triangulated surfaces.
    while True:
        b = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            for j in range(i + 1, rank):
                b[i][j] = rng.choice((-1, 0, 0, 1))
                b[j][i] = -b[i][j]
        seed = make_seed(b, unfrozen=set(range(rank - frozen)), label="bench")
        if any(seed.eps_int(i, j) for i in seed.unfrozen for j in range(rank)):
            return seed


def _random_standard_monomials(rng, seed: Seed, count: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    unit = lambda i: tuple(1 if x == i else 0 for x in range(seed.rank))
    while len(out) < count:
        v = tuple(rng.randint(0, 2) for _ in range(seed.rank))
        if v in out:
            continue
        if all(seed.pairing_num(unit(i), v) >= 0 for i in seed.unfrozen):
            out.append(v)
    return out


def cmd_bench(args) -> int:
    rng = random.Random(args.rng)
    seed = _random_quiver(rng, args.rank, args.frozen)
    exps = _random_standard_monomials(rng, seed, args.terms)
    f = monomial(seed, exps[0])
    for v in exps[1:]:
        f = f + monomial(seed, v)
    path = []
    prev = None
    choices = sorted(seed.unfrozen)
    while len(path) < args.depth:
        k = rng.choice(choices)
        if k == prev and len(choices) > 1:
            continue
        path.append(k)
        prev = k
    t0 = time.perf_counter()
    from .transport import transport_step

    for s, k in enumerate(path):
        f = transport_step(f, k, verify=False)
        big = max(abs(c) for coeffs in f.terms.values() for c in coeffs.values())
        _emit(
            {
                "path_prefix": path[: s + 1],
                "term_count": f.term_count(),
                "max_abs_coeff": str(big),
            }
        )
    dt = time.perf_counter() - t0
    print(f"transported {args.terms} terms along depth {len(path)}: {dt:.2f}s", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.host, args.port)
    return 0


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadInput(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcluster", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(func=fn)
        return sp

    sp = add("mutate", cmd_mutate, help="mutate a seed at one index or along a path")
    sp.add_argument("--seed", help="seed JSON file ('-' or omit for stdin)")
    sp.add_argument("-k", type=int, help="single mutation index")
    sp.add_argument("--path", help="comma-separated mutation indices")

    sp = add("enumerate", cmd_enumerate, help="BFS the exchange graph")
    sp.add_argument("--seed")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--threads", type=int, default=1)

    for name, fn in (("cvec", cmd_cvec), ("gvec", cmd_gvec), ("gtilde", cmd_gtilde)):
        sp = add(name, fn, help=f"print the {name} matrix along a path")
        sp.add_argument("--seed")
        sp.add_argument("--path", default="")
        sp.add_argument("--json", action="store_true", help="emit JSON instead of a table")

    sp = add("check-mono", cmd_check_mono, help="test exponent vectors for universal monomiality")
    sp.add_argument("--seed")
    sp.add_argument("--exp", help="comma-separated exponent vector")
    sp.add_argument("--element", help="element/bundle JSON file ('-' for stdin)")

    sp = add("check-poly", cmd_check_poly, help="certify universal polynomiality")
    sp.add_argument("--element", help="element/bundle JSON file ('-' or omit for stdin)")
    sp.add_argument("--mode", choices=("frozen", "gmatrix", "transport"), default="gmatrix")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--threads", type=int, default=1)

    sp = add("fold", cmd_fold, help="fold a seed along orbits")
    sp.add_argument("--seed")
    sp.add_argument("--orbits", required=True, help="e.g. '0,2|1'")

    sp = add("amalgamate", cmd_amalgamate, help="glue seeds along frozen indices")
    sp.add_argument("--seeds", nargs="+", required=True)
    sp.add_argument("--glue", default="", help="e.g. '0:0=1:2;0:3=1:1'")

    sp = add("scenario", cmd_scenario, help="emit a built-in worked example")
    sp.add_argument("name", choices=("sl2", "an-chain", "markov", "sl2-coproduct"))
    sp.add_argument("--emit", choices=("seed", "elements"), default="elements")
    sp.add_argument("-n", type=int, default=5, help="chain length for an-chain")

    add("verify", cmd_verify, help="run the self-check battery")

    sp = add("bench", cmd_bench, help="performance smoke: random quiver transport")
    sp.add_argument("--rank", type=int, default=10)
    sp.add_argument("--frozen", type=int, default=4)
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--terms", type=int, default=5)
    sp.add_argument("--rng", type=int, default=1)

    sp = add("serve", cmd_serve, help="run the local HTTP session service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8421)

    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (
        BadInput,
        json.JSONDecodeError,
        OSError,
        ValueError,
        FrozenMutation,
        SeedMismatch,
        InvalidFolding,
        InvalidGluing,
        HypothesisViolated,
        NotInvariant,
        NotSubtractionFree,
        DegenerateExchange,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConstructionFailed, QClusterError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
