"""Command-line front end.

Every subcommand prints one JSON document (``schema_version`` 1) or, for
``cayley``, DOT text.  Exit status is 0 on success, 1 when the computation
reports a mathematical failure (a non-extendible kernel, an invalid crossed
module, a non-identity) and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .cohomology import cohomology_group
from .extensions import (
    AbstractKernel,
    Extension,
    NotExtendible,
    baer_act,
    construct_extension,
    enumerate_extensions,
    obstruction,
    realize_all_classes,
    second_cohomology,
)
from .freexmod import FreeCrossedModule, PresentationKInvariant, identity_class, identity_module
from .grouprings import QModule
from .groups import GroupError
from .presentations import DEFAULT_MAX_COSETS, PresentationSyntaxError, cayley_graph, enumerate_presentation, graph_free_rank
from .topology import cover_complex, cover_homology, export_dot
from .words import format_word
from .xmod import (
    FiniteCrossedModule,
    characteristic_class,
    inner_crossed_module,
    power_map_crossed_module,
)

SCHEMA_VERSION = 1

log = logging.getLogger(__name__)


class InputError(Exception):
    """Unusable input; maps to exit status 2."""


class DomainFailure(Exception):
    """The computation ran and the answer is a failure; maps to exit status 1."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


# ------------------------------------------------------------ input helpers

def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _presentation_text(args, inline: str | None = None) -> str:
    inline = inline if inline is not None else getattr(args, "presentation", None)
    path = getattr(args, "file", None)
    if (inline is None) == (path is None):
        raise InputError("give exactly one presentation: inline or --file")
    return inline if inline is not None else _read_text(path).strip()


def _enumerate(args, inline: str | None = None):
    text = _presentation_text(args, inline)
    try:
        return enumerate_presentation(text, args.max_cosets)
    except PresentationSyntaxError as exc:
        raise InputError(f"bad presentation: {exc}") from None


def _load(builder: Callable, data, what: str):
    try:
        return builder(data)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed {what}: {exc}") from None


def _kernel(path: str) -> AbstractKernel:
    return _load(AbstractKernel.from_json, _read_json(path), "kernel")


def _crossed_module(args) -> FiniteCrossedModule:
    if (args.file is None) == (args.builtin is None):
        raise InputError("give exactly one crossed module: --file or --builtin")
    if args.file is not None:
        return _load(FiniteCrossedModule.from_json, _read_json(args.file), "crossed module")
    kind, _, arg = args.builtin.partition(":")
    try:
        if kind == "power":
            return power_map_crossed_module(int(arg))
        if kind == "power-trivial":
            return power_map_crossed_module(int(arg), twisted=False)
        if kind == "inner":
            _, G, _ = _enumerate(args, arg)
            return inner_crossed_module(G)
    except ValueError as exc:
        raise InputError(f"bad --builtin argument: {exc}") from None
    raise InputError(f"unknown builtin crossed module {kind!r} (power:n, power-trivial:n, inner:<presentation>)")


_MODULE = re.compile(r"trivial:Z(?:/(\d+))?\Z")


def _module(text: str, Q) -> QModule:
    m = _MODULE.match(text.replace(" ", ""))
    if not m or m.group(1) == "0":
        raise InputError(f"unsupported module {text!r}; use trivial:Z or trivial:Z/m")
    return QModule.trivial(Q, int(m.group(1) or 0))


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"{what} must be a comma-separated list of integers") from None


def _cyclic_subgroups(Q) -> list[tuple[int, ...]]:
    seen = {tuple(sorted(Q.generated([g]))) for g in range(1, Q.order)}
    return sorted(seen, key=lambda s: (len(s), s))


# ------------------------------------------------------------ subcommands

def cmd_group(args) -> dict:
    p, G, wm = _enumerate(args)
    return {
        "order": G.order,
        "generators": {name: wm.images[i] for i, name in enumerate(p.alphabet.names)},
        "normal_words": [format_word(w) for w in wm.normal_words],
        "table": [list(r) for r in G.table],
    }


def cmd_cayley(args) -> dict | str:
    _, G, wm = _enumerate(args)
    g = cayley_graph(G, wm)
    if args.format == "dot":
        return export_dot(g)
    return {
        "order": g.order,
        "edges": [[s, t, g.labels[x]] for s, t, x in g.edges],
        "free_rank": graph_free_rank(g),
    }


def cmd_identities(args) -> dict:
    p, G, wm = _enumerate(args)
    return identity_module(p, G, wm).to_json()


def cmd_verify_identity(args) -> dict:
    p, G, wm = _enumerate(args)
    if (args.identity is None) == (args.identity_file is None):
        raise InputError("give exactly one identity: --identity or --identity-file")
    try:
        raw = json.loads(args.identity) if args.identity is not None else _read_json(args.identity_file)
    except json.JSONDecodeError as exc:
        raise InputError(f"identity is not valid JSON ({exc})") from None
    fcm = FreeCrossedModule(p, G, wm)
    e = _load(lambda d: fcm.element([tuple(t) for t in d]), raw, "identity")
    out = {"identity": e.boundary.is_identity(), "boundary": format_word(e.boundary)}
    if not out["identity"]:
        raise DomainFailure("boundary does not reduce to the empty word", out)
    cls = identity_class(e, identity_module(fcm))
    out["class"] = cls
    out["zero"] = not any(cls)
    return out


def cmd_cohomology(args) -> dict:
    _, G, _ = _enumerate(args, args.group)
    H = cohomology_group(G, _module(args.module, G), args.degree, args.resolution)
    return {"degree": args.degree, "invariant_factors": list(H.invariant_factors), "order": H.order}


def cmd_xmod_check(args) -> dict:
    cm = _crossed_module(args)
    failures = cm.check()
    out = {"valid": not failures, "failures": failures}
    if failures:
        raise DomainFailure("crossed-module axioms fail", out)
    return out


def cmd_class(args) -> dict:
    if args.presentation is not None:
        p, G, wm = _enumerate(args, args.presentation)
        kinv = PresentationKInvariant(FreeCrossedModule(p, G, wm))
        subs = [tuple(_int_list(args.subgroup, "--subgroup"))] if args.subgroup else _cyclic_subgroups(G)
        rows = []
        for s in subs:
            try:
                cls = kinv.restricted_class(s)
            except GroupError as exc:
                raise InputError(str(exc)) from None
            rows.append({"subgroup": list(s), **cls.to_json()})
        return {"restrictions": rows, "nonzero": [r["subgroup"] for r in rows if not r["zero"]]}
    cm = _crossed_module(args)
    problems = cm.check()
    if problems:
        raise DomainFailure("not a crossed module", {"valid": False, "failures": problems})
    return characteristic_class(cm, args.seed).to_json()


def cmd_kernel_obstruct(args) -> dict:
    k = _kernel(args.file)
    cls = obstruction(k)
    return {**cls.to_json(), "extendible": cls.is_zero()}


def cmd_extend(args) -> dict:
    k = _kernel(args.file)
    try:
        if args.class_index is None:
            ext = construct_extension(k)
        else:
            options = realize_all_classes(k)
            if not 0 <= args.class_index < len(options):
                raise InputError(f"--class-index must be below {len(options)}")
            ext = options[args.class_index]
    except NotExtendible as exc:
        raise DomainFailure(str(exc), {"extendible": False, **obstruction(k).to_json()}) from None
    return ext.to_json(with_groups=True)


def cmd_baer(args) -> dict:
    E1 = _load(Extension.from_json, _read_json(args.extension), "extension")
    e = _load(Extension.from_json, _read_json(args.by), "extension")
    try:
        return baer_act(E1, e).to_json(with_groups=True)
    except ValueError as exc:
        raise DomainFailure(str(exc)) from None


def _enumerate_one(path: str, budget: int) -> dict:
    k = _kernel(path)
    classes = enumerate_extensions(k, budget)
    extendible = obstruction(k).is_zero()
    h2 = second_cohomology(k).order if extendible else None
    return {
        "file": path,
        "count": len(classes),
        "extendible": extendible,
        "h2_order": h2,
        "classes": [{"factor_set": list(c.factor_set), "orbit_size": c.orbit_size} for c in classes],
    }


def cmd_enumerate(args) -> dict:
    paths = args.file
    if args.threads > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_enumerate_one, paths, [args.budget] * len(paths)))
    else:
        results = [_enumerate_one(p, args.budget) for p in paths]
    return results[0] if len(results) == 1 else {"kernels": results}


def cmd_cover_homology(args) -> dict:
    p, G, wm = _enumerate(args)
    return cover_homology(cover_complex(p, G, wm)).to_json()


# ------------------------------------------------------------ parser

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


# Not set through set_defaults: parents share action objects with the
# subparsers, whose defaults would then overwrite flags given before the command.
GLOBAL_DEFAULTS = {"seed": None, "threads": 1, "max_cosets": DEFAULT_MAX_COSETS, "verbose": False}


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized section choices")
    common.add_argument("--threads", type=_positive, default=argparse.SUPPRESS,
                        help="worker processes for independent sub-jobs")
    common.add_argument("--max-cosets", type=_positive, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="crossmod", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    add_parser = sub.add_parser

    def add(name, **kw):
        return add_parser(name, parents=[common], **kw)

    sub.add_parser = add

    def pres(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("presentation", nargs="?", help='e.g. "<x,y | x^3, y^2, x*y*x*y>"')
        sp.add_argument("--file", help="read the presentation from a file")
        sp.set_defaults(func=func)
        return sp

    pres("group", cmd_group, "enumerate the group of a presentation")
    sp = pres("cayley", cmd_cayley, "Cayley graph")
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    pres("identities", cmd_identities, "module of identities among relations")
    sp = pres("verify-identity", cmd_verify_identity, "check a product of conjugated relators")
    sp.add_argument("--identity", help='JSON list of [conjugator, relator, sign] triples')
    sp.add_argument("--identity-file")
    pres("cover-homology", cmd_cover_homology, "homology of the universal cover of the presentation complex")

    sp = sub.add_parser("cohomology", help="H^n(Q, M) for a trivial module")
    sp.add_argument("--group", help="presentation of Q")
    sp.add_argument("--file", help="read the presentation of Q from a file")
    sp.add_argument("--module", default="trivial:Z", help="trivial:Z or trivial:Z/m")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--resolution", choices=("auto", "bar", "periodic"), default="auto")
    sp.set_defaults(func=cmd_cohomology)

    for name, func, help_text in (("xmod-check", cmd_xmod_check, "check the crossed-module axioms"),
                                  ("class", cmd_class, "characteristic class of a crossed module")):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--file", help="crossed module JSON {C, G, boundary, action}")
        sp.add_argument("--builtin", help="power:n, power-trivial:n or inner:<presentation>")
        sp.set_defaults(func=func)
    sp.add_argument("--presentation", help="restrict the k-invariant of a presentation instead")
    sp.add_argument("--subgroup", help="comma-separated elements (default: every cyclic subgroup)")

    sp = sub.add_parser("kernel-obstruct", help="obstruction class of an abstract kernel")
    sp.add_argument("--file", required=True)
    sp.set_defaults(func=cmd_kernel_obstruct)
    sp = sub.add_parser("extend", help="construct an extension realizing a kernel")
    sp.add_argument("--file", required=True)
    sp.add_argument("--class-index", type=int, help="pick one of the congruence classes")
    sp.set_defaults(func=cmd_extend)
    sp = sub.add_parser("baer", help="act on an extension by an extension of Q by the centre")
    sp.add_argument("--extension", required=True)
    sp.add_argument("--by", required=True)
    sp.set_defaults(func=cmd_baer)
    sp = sub.add_parser("enumerate", help="congruence classes by exhaustive factor-set search")
    sp.add_argument("--file", required=True, action="append")
    sp.add_argument("--budget", type=_positive, default=1 << 32)
    sp.set_defaults(func=cmd_enumerate)
    return ap


def _emit(result, stream) -> None:
    if isinstance(result, str):
        stream.write(result)
    else:
        stream.write(json.dumps({"schema_version": SCHEMA_VERSION, **result}, sort_keys=True, indent=2) + "\n")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=stderr)
    try:
        _emit(args.func(args), stdout)
        return 0
    except InputError as exc:
        print(f"crossmod: error: {exc}", file=stderr)
        return 2
    except DomainFailure as exc:
        if exc.payload is not None:
            _emit(exc.payload, stdout)
        print(f"crossmod: {exc}", file=stderr)
        return 1
    except GroupError as exc:
        print(f"crossmod: {exc}", file=stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
