"""Command line interface.

Exit codes: 0 success (a false query answer included), 1 verification
failure, 2 invalid input, 3 enumeration bound exceeded.
"""

import argparse
import json
import os
import sys

from . import orbits as orb
from . import posets as pos
from .documents import dump_shape, load_shape
from .errors import BoundExceeded, InvalidInput, default_bound
from .linear import log_cardinality
from .module import UlmSequence, primary_decomposition, ulm_sequence
from .verify import run_all

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_BOUND = 0, 1, 2, 3


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj):
    return json.dumps(obj, indent=2) + "\n"


def _format_tuple(shape, t):
    return ";".join(",".join(shape.ring.format(x) for x in a) for a in t)


def _bound(args):
    return args.bound if args.bound is not None else default_bound()


def cmd_orbits(args):
    shape = load_shape(args.shape)
    orbits = orb.enumerate_tuple_orbits(shape, args.n, _bound(args))
    orbits.sort(key=lambda o: (-o.n_invariant, o.representative))
    rows = []
    for o in orbits:
        row = {
            "representative": [shape.element_to_json(a) for a in o.representative],
            "size": o.size,
            "n_invariant": o.n_invariant,
        }
        if args.n == 1:
            row["ulm_sequence"] = str(ulm_sequence(shape, o.representative[0]))
            row["ideal"] = str(pos.ideal_of(shape, o.representative[0]))
        else:
            row["height_table"] = [M.to_json() for M in o.fingerprint]
        rows.append((o, row))
    if args.json:
        _emit(_dumps({"shape": shape.describe(), "n": args.n, "orbits": [r for _, r in rows]}))
        return EXIT_OK
    lines = [f"# {shape.describe()}, n={args.n}: {len(rows)} orbits"]
    for i, (o, row) in enumerate(rows):
        extra = (
            f"ulm={row['ulm_sequence']} ideal={row['ideal']}"
            if args.n == 1
            else "M=" + " ".join(f"{log_cardinality(M)}" for M in o.fingerprint)
        )
        lines.append(
            f"{i}\tsize={o.size}\tN={o.n_invariant}\trep={_format_tuple(shape, o.representative)}\t{extra}"
        )
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_query(args):
    shape = load_shape(args.shape)
    a = shape.parse_tuple(args.a)
    b = shape.parse_tuple(args.b)
    bound = _bound(args)
    witness = None
    if args.kind == "same-orbit":
        result = orb.same_orbit(shape, a, b)
        if result:
            witness = {"automorphism": orb.build_automorphism(shape, a, b).to_json()}
        else:
            found = orb.degeneration_witness(shape, a, shape, b) or orb.degeneration_witness(
                shape, b, shape, a
            )
            r, h = found
            witness = {"coefficients": [shape.ring.to_json(x) for x in r], "height": h}
    elif args.kind == "degenerates":
        found = orb.degeneration_witness(shape, a, shape, b)
        result = found is None
        if result:
            witness = {"homomorphism": orb.extend_homomorphism(shape, shape, a, b).to_json()}
        else:
            r, h = found
            witness = {"coefficients": [shape.ring.to_json(x) for x in r], "height": h}
    elif args.kind == "submodule-degenerates":
        found = orb.submodule_degeneration_witness(shape, a, b, bound)
        result = found is not None
        if result:
            hom = orb.extend_homomorphism(shape, shape, *found)
            witness = {"homomorphism": hom.to_json()}
    else:
        result = orb.submodule_same_orbit(shape, a, b, bound)
        if result:
            witness = {"automorphism": orb.submodule_orbit_witness(shape, a, b, bound).to_json()}
    if args.json:
        _emit(_dumps({"query": args.kind, "result": result, "witness": witness}))
    else:
        text = "true\n" if result else "false\n"
        if witness is not None:
            text += _dumps(witness)
        _emit(text)
    return EXIT_OK


def _poset_for_view(shape, view, n, bound):
    if view == "Pf":
        return pos.build_Pf(shape), {}
    if view == "Hf":
        return pos.orbit_poset_elements(shape), {}
    if view == "ideals":
        H = pos.orbit_poset_elements(shape)
        ideals = [pos.ideal_from_sequence(s, shape) for s in H.elements]
        # node i pairs with node i of the Hf view
        P = pos.FinitePoset(ideals, lambda I, J: I <= J)
        return P, {I: str(pos.kappa(I)) for I in ideals}
    if view == "elements":
        return orb.element_orbit_poset(shape, bound), {}
    if view == "tuples":
        return orb.orbit_poset(shape, n, bound), {}
    raise InvalidInput(f"unknown view {view!r}")


def cmd_poset(args):
    shape = load_shape(args.shape)
    P, paired = _poset_for_view(shape, args.view, args.n, _bound(args))
    if args.json:
        doc = P.to_json()
        if paired:
            doc["paired"] = {P.label(x): label for x, label in paired.items()}
        _emit(_dumps(doc), args.dot)
        return EXIT_OK
    dot = P.to_dot(args.view)
    if paired:
        lines = dot.splitlines()
        for i, x in enumerate(P.elements):
            node = f'  n{i} [label="{P.label(x)}"];'
            lines[lines.index(node)] = f'  n{i} [label="{P.label(x)}", xlabel="{paired[x]}"];'
        dot = "\n".join(lines) + "\n"
    _emit(dot, args.dot)
    return EXIT_OK


def cmd_dictionary(args):
    shape = load_shape(args.shape)
    support = tuple(alpha for alpha, _ in shape.multiplicities)
    if args.direction == "kappa":
        ideal = pos.OrderIdeal.parse(args.input, support)
        value = pos.kappa(ideal)
        back = pos.ideal_from_sequence(value, shape)
        round_trip = back == ideal
    else:
        seq = UlmSequence.parse(args.input)
        value = pos.ideal_from_sequence(seq, shape)
        round_trip = pos.kappa(value) == seq
    if args.json:
        _emit(_dumps({"direction": args.direction, "value": str(value), "round_trip": round_trip}))
    else:
        _emit(f"{value}\nround_trip: {'true' if round_trip else 'false'}\n")
    return EXIT_OK


def cmd_verify(args):
    shape = load_shape(args.shape)
    results = run_all(shape, args.n, _bound(args), samples=args.samples, seed=args.seed)
    ok = all(r.passed for r in results)
    if args.json:
        doc = {"shape": shape.describe(), "n": args.n, "passed": ok}
        doc["suites"] = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
        _emit(_dumps(doc))
        return EXIT_OK if ok else EXIT_FAILED
    lines = [f"# verify {shape.describe()}, n={args.n}"] + [r.line() for r in results]
    lines.append("PASS all suites" if ok else "FAIL")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_decompose(args):
    shapes = primary_decomposition(args.orders)
    written = []
    for p, shape in shapes.items():
        text = dump_shape(shape)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            path = os.path.join(args.out, f"shape_p{p}.json")
            with open(path, "w") as fh:
                fh.write(text)
            written.append(path)
        else:
            sys.stdout.write(f"# p={p}: {shape.describe()}\n{text}")
    for path in written:
        sys.stdout.write(path + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ulm-orbits",
        description="Automorphism orbits and degenerations in finite modules over a DVR.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True):
        p.add_argument("--shape", required=True, help="ShapeDocument JSON file")
        if n:
            p.add_argument("-n", type=int, default=1, help="tuple length (default 1)")
        p.add_argument("--bound", type=int, default=None, help="enumeration cap")
        p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser("orbits", help="list the orbits of n-tuples")
    common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("query", help="same-orbit / degeneration queries")
    p.add_argument(
        "kind", choices=["same-orbit", "degenerates", "submodule-orbit", "submodule-degenerates"]
    )
    common(p, n=False)
    p.add_argument("a", help='tuple, elements separated by ";", e.g. "1,0;0,1"')
    p.add_argument("b", help="second tuple")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("poset", help="Hasse diagrams as DOT or JSON")
    common(p)
    p.add_argument("--view", choices=["elements", "ideals", "Hf", "Pf", "tuples"], default="elements")
    p.add_argument("--dot", metavar="FILE", help="write the output here instead of stdout")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("dictionary", help="kappa and ideal maps between J(P_f) and H_f")
    common(p, n=False)
    p.add_argument("direction", choices=["kappa", "ideal"])
    p.add_argument("input", help='an ideal "{(0,1),(1,3)}" or a sequence "0,2,inf"')
    p.set_defaults(func=cmd_dictionary)

    p = sub.add_parser("verify", help="run the oracle-equivalence suites")
    common(p)
    p.add_argument("--samples", type=int, default=20, help="constructive-extension samples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="primary decomposition of sum Z/n_i")
    p.add_argument("orders", nargs="+", type=int)
    p.add_argument("--out", metavar="DIR", help="write shape_p<p>.json files here")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
