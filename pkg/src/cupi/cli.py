"""Command-line surface.

Exit codes: 0 success / verdict positive, 1 verdict negative, 2 input error.
All reports are canonical JSON on stdout (byte-identical across runs for
identical inputs and flags).
"""

from __future__ import annotations

import argparse
import sys

from . import io as cio
from .chains import homology, normalized_chains
from .reconstruct import (BruteForceLimitError, enumerate_morphisms,
                          homology_square, is_steenrod_morphism,
                          lift_morphism, verify_reconstruction)
from .steenrod import (SteenrodStructure, structure_for, steenrod_squares,
                       verify_structure)


def _emit(obj):
    sys.stdout.write(cio.dumps(obj) + "\n")


def cmd_validate(args):
    X = cio.load_complex(args.complex)
    _emit({"ok": True, "f_vector": list(X.f_vector()), "dim": X.dim})
    return 0


def cmd_chains(args):
    X = cio.load_complex(args.complex)
    N = normalized_chains(X)
    out = {"ranks": [N.rank(n) for n in range(N.top_degree + 1)],
           "boundaries": {}}
    for n in range(1, N.top_degree + 1):
        triples = []
        for s in N.basis.get(n, ()):
            for face, c in sorted(N.boundary_of(s).items()):
                triples.append([list(face), list(s), c])
        out["boundaries"][str(n)] = triples
    _emit(out)
    return 0


def cmd_homology(args):
    X = cio.load_complex(args.complex)
    N = normalized_chains(X)
    _emit({"H": [h.as_json() for h in homology(N)]})
    return 0


def cmd_xi_dump(args):
    X = cio.load_complex(args.complex)
    struct = SteenrodStructure(X, max_i=args.max_i)
    for s in sorted(X.all_simplices(), key=lambda t: (len(t), t)):
        for i in range(struct.max_i + 1):
            value = [[c, list(a), list(b)]
                     for (a, b), c in struct.delta(i, s).coeffs]
            _emit({"i": i, "simplex": list(s), "value": value})
    return 0


def cmd_xi_check(args):
    X = cio.load_complex(args.complex)
    struct = SteenrodStructure(X, max_i=args.max_i)
    report = verify_structure(struct)
    _emit(report.as_json())
    return 0 if report.ok else 1


def cmd_squares(args):
    X = cio.load_complex(args.complex)
    sq = steenrod_squares(X, args.i)
    _emit({"i": args.i,
           "matrices": {str(j): m for j, m in sorted(sq.items())}})
    return 0


def cmd_enumerate(args):
    X = cio.load_complex(args.complex)
    morphisms = enumerate_morphisms(args.n, X, mode=args.mode, bound=args.bound)
    out = []
    for ms in morphisms:
        entry = {"surjection": list(ms.surjection) if ms.surjection else None,
                 "simplex": list(ms.simplex) if ms.simplex else None,
                 "vertex_map": {str(k): v for k, v in ms.vertex_map.mapping}
                 if ms.vertex_map else None}
        out.append(entry)
    _emit({"n": args.n, "count": len(morphisms), "morphisms": out})
    return 0


def cmd_reconstruct(args):
    X = cio.load_complex(args.complex)
    up_to = args.up_to if args.up_to is not None else X.dim + 2
    report = verify_reconstruction(X, up_to)
    _emit(report.as_json())
    return 0 if report.ok else 1


def _load_map_between(args):
    X = cio.load_complex(args.source)
    Y = cio.load_complex(args.target)
    f = cio.load_chain_map(args.map, structure_for(X).chains,
                           structure_for(Y).chains)
    return X, Y, f


def cmd_is_morphism(args):
    X, Y, f = _load_map_between(args)
    verdict = is_steenrod_morphism(f, X, Y)
    _emit(verdict.as_json())
    return 0 if verdict.ok else 1


def cmd_lift(args):
    X, Y, f = _load_map_between(args)
    verdict = is_steenrod_morphism(f, X, Y)
    if not verdict.ok:
        _emit(verdict.as_json())
        return 1
    lift = lift_morphism(f, verdict, X, Y)
    bij = lift.recovered_bijection()
    _emit({"status": "lifted",
           "vertex_map": {str(k): v for k, v in lift.vertex_map.mapping},
           "isomorphism": {str(k): v for k, v in bij.mapping} if bij else None})
    return 0


def cmd_homology_square(args):
    X, Y, f = _load_map_between(args)
    verdict = is_steenrod_morphism(f, X, Y)
    if not verdict.ok:
        _emit(verdict.as_json())
        return 1
    report = homology_square(f, verdict, X, Y, args.i_max)
    _emit(report.as_json())
    return 0 if report.ok else 1


def build_parser():
    p = argparse.ArgumentParser(prog="cupi",
                                description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *specs):
        sp = sub.add_parser(name)
        for spec in specs:
            flags, kw = spec
            sp.add_argument(*flags, **kw)
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, ((["complex"], {})))
    add("chains", cmd_chains, ((["complex"], {})))
    add("homology", cmd_homology, ((["complex"], {})))
    add("xi-dump", cmd_xi_dump, ((["complex"], {})),
        ((["--max-i"], {"dest": "max_i", "type": int, "default": None})))
    add("xi-check", cmd_xi_check, ((["complex"], {})),
        ((["--max-i"], {"dest": "max_i", "type": int, "default": None})))
    add("squares", cmd_squares, ((["complex"], {})),
        ((["--i"], {"dest": "i", "type": int, "required": True})))
    add("enumerate", cmd_enumerate, ((["complex"], {})),
        ((["--n"], {"dest": "n", "type": int, "required": True})),
        ((["--mode"], {"choices": ["guided", "brute"], "default": "guided"})),
        ((["--bound"], {"dest": "bound", "type": int, "default": 2})))
    add("reconstruct", cmd_reconstruct, ((["complex"], {})),
        ((["--up-to"], {"dest": "up_to", "type": int, "default": None})))
    add("is-morphism", cmd_is_morphism, ((["source"], {})), ((["target"], {})),
        ((["map"], {})))
    add("lift", cmd_lift, ((["source"], {})), ((["target"], {})),
        ((["map"], {})))
    add("homology-square", cmd_homology_square, ((["source"], {})),
        ((["target"], {})), ((["map"], {})),
        ((["--i-max"], {"dest": "i_max", "type": int, "default": 2})))
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (cio.InputError, BruteForceLimitError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
