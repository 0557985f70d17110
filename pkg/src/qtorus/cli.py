"""
Command-line front end.

Exit codes: 0 on success, 1 when a search finds nothing, 2 on invalid input.

"""

import argparse
import logging
import os
import sys

from . import conf
from .conf import SearchBounds
from .delta import (
    carrier_spaces,
    delta_module,
    delta_principal,
    exclude_certificate,
    strongly_holonomic_check,
)
from .exceptions import QTorusError
from .fans import fan_dimension
from .formats import (
    dump_algebra,
    dump_module,
    load_algebra,
    load_module,
    parse_vectors,
)
from .lattice import Sublattice
from .modules import gk_dimension, tensor_module
from .pairing import (
    alternating_block_decomposition,
    commuting_monomials,
    derived_unit_subgroup,
    is_simple,
    radical,
)
from .skew import (
    construct_simple_module,
    example_generator,
    presentation_automorphism,
    simplicity_probe,
)

logger = logging.getLogger(__name__)

OK, NONE_FOUND, INVALID = 0, 1, 2


def _vector(text):
    return "(" + ",".join(str(x) for x in text) + ")"


def _bounds(args):
    return SearchBounds.from_env(
        degree_bound=args.degree_bound,
        coeff_bound=args.coeff_bound,
        max_sublattices=args.max_sublattices,
        s_max=args.s_max,
        window=args.window,
    )


def cmd_algebra(args, out):
    algebra = load_algebra(args.file)
    P = algebra.presentation
    if args.action == "check":
        group = P.group
        out.write(f"rank: {P.rank}\n")
        out.write(f"scalar group: d={group.free_rank} m={group.torsion_modulus}\n")
        out.write(f"embedding: {algebra.embedding.kind}\n")
        out.write("valid: true\n")
    elif args.action == "center":
        center = radical(P)
        out.write(f"center rank: {center.rank}\n")
        for row in center.basis:
            out.write(f"  {_vector(row)}\n")
    elif args.action == "simple":
        out.write(f"simple: {'true' if is_simple(P) else 'false'}\n")
    elif args.action == "derived-units":
        subgroup = derived_unit_subgroup(P)
        out.write(f"derived units: {subgroup}\n")
        factors = ",".join(str(f) for f in subgroup.invariant_factors)
        out.write(f"invariant factors: [{factors}]\n")
    return OK


def cmd_delta(args, out):
    M = load_module(args.file).module
    if args.certify is not None:
        phi = tuple(args.certify.strip("()").split(","))
        witness = exclude_certificate(M, phi, args.bound)
        if witness is None:
            out.write(f"not excluded up to degree {args.bound}\n")
            return NONE_FOUND
        out.write(f"excluded, witness={witness}\n")
        return OK
    if args.principal:
        approximation = delta_principal(M)
    else:
        approximation = delta_module(M, _bounds(args))
    if approximation.exact:
        out.write(approximation.outer.dump() + "\n")
        out.write(f"dimension: {fan_dimension(approximation.outer)}\n")
    else:
        out.write("inner:\n" + approximation.inner.dump() + "\n")
        out.write("outer:\n" + approximation.outer.dump() + "\n")
    if args.carriers and approximation.exact and not approximation.zero_module:
        data = carrier_spaces(
            approximation.outer, fan_dimension(approximation.outer)
        )
        for space, subgroup in zip(data.spaces, data.subgroups):
            out.write(f"carrier: {space} subgroup: {subgroup}\n")
    return OK


def cmd_gk(args, out):
    result = gk_dimension(load_module(args.file).module, _bounds(args))
    out.write(f"{result}\n")
    if not result.exact:
        out.write(f"lower certificate: {result.lower_certificate}\n")
        return NONE_FOUND
    return OK


def cmd_tensor(args, out):
    M = tensor_module(load_module(args.first).module, load_module(args.second).module)
    out.write(dump_module(M))
    return OK


def cmd_decompose(args, out):
    P = load_algebra(args.file).presentation
    decomposition = alternating_block_decomposition(P)
    for index, ((v, w), d) in enumerate(decomposition.blocks, 1):
        out.write(f"block {index}: d={d} v={_vector(v)} w={_vector(w)}\n")
    n = decomposition.sublattice.ambient_rank
    index = decomposition.sublattice.index_in(Sublattice.full(n))
    out.write(f"index: {index}\n")
    return OK


def cmd_commuting(args, out):
    P = load_algebra(args.file).presentation
    C = Sublattice.span(parse_vectors(args.C), P.rank)
    ext = parse_vectors(args.ext)
    result = commuting_monomials(P, C, ext, args.smax or _bounds(args).s_max)
    if result is None:
        out.write("none found\n")
        return NONE_FOUND
    out.write(f"s: {result.s}\n")
    for monomial, vector in zip(result.monomials, result.commuting_vectors()):
        out.write(f"c={_vector(monomial)} commuting={_vector(vector)}\n")
    return OK


def cmd_simple_module(args, out):
    loaded = load_module(args.file).module
    algebra = loaded.algebra
    if args.gamma is not None:
        gamma = algebra.parse(args.gamma)
    elif loaded.principal:
        (gamma,) = loaded.relations
    else:
        raise QTorusError("give --gamma or a module file with one relation")
    module = construct_simple_module(gamma, algebra)
    sigma = presentation_automorphism(algebra.presentation, algebra.embedding)
    ring = sigma.ring
    betas = [ring.parse(text) for text in args.beta] or [
        ring.gens[0] - ring.one,
        ring.gens[0] + ring.one,
    ]
    report = simplicity_probe(module, betas, args.bound)
    out.write(module.dump() + "\n")
    out.write(f"gamma: {gamma}\n")
    for beta, ok in report.results:
        out.write(f"probe {ring.format(beta)}: {'pass' if ok else 'fail'}\n")
    out.write(f"status: {report.status}\n")
    return OK if report.passed else NONE_FOUND


def cmd_holonomy(args, out):
    if args.module is None:
        M = load_module(args.file).module
    else:
        M = load_module(args.module, load_algebra(args.file)).module
    verdict = strongly_holonomic_check(M, _bounds(args))
    out.write(f"{verdict.verdict}: {verdict.reason}\n")
    out.write(f"gk: {verdict.gk}\n")
    if verdict.witness is not None:
        sublattice, witness = verdict.witness
        out.write(f"witness over {sublattice}: {witness}\n")
    return OK


def cmd_example(args, out):
    primes = [int(p) for p in args.primes.split(",")]
    P, gamma = example_generator(args.t, primes, args.k, conf.get_seed(args.seed))
    algebra_text = dump_algebra(gamma.algebra)
    if args.output_dir is None:
        out.write(algebra_text)
        out.write(f"relation {gamma}\n")
        return OK
    os.makedirs(args.output_dir, exist_ok=True)
    with open(os.path.join(args.output_dir, "example.alg"), "w", encoding="utf-8") as f:
        f.write(algebra_text)
    with open(os.path.join(args.output_dir, "example.mod"), "w", encoding="utf-8") as f:
        f.write(f"algebra example.alg\nrelation {gamma}\n")
    out.write(f"wrote example.alg and example.mod to {args.output_dir}\n")
    return OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qtorus", description="Exact computations with quantum tori."
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--seed", type=int, default=None)

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--degree-bound", type=int)
    bounds.add_argument("--coeff-bound", type=int)
    bounds.add_argument("--max-sublattices", type=int)
    bounds.add_argument("--s-max", type=int)
    bounds.add_argument("--window", type=int)

    commands = parser.add_subparsers(dest="command", required=True)

    algebra = commands.add_parser("algebra", help="inspect an algebra file")
    algebra.add_argument(
        "action", choices=["check", "center", "simple", "derived-units"]
    )
    algebra.add_argument("file")
    algebra.set_defaults(handler=cmd_algebra)

    delta = commands.add_parser(
        "delta", parents=[bounds], help="compute Δ of a module"
    )
    delta.add_argument("file")
    delta.add_argument("--principal", action="store_true")
    delta.add_argument("--certify", metavar="PHI")
    delta.add_argument("--bound", type=int, default=4)
    delta.add_argument("--carriers", action="store_true")
    delta.set_defaults(handler=cmd_delta)

    gk = commands.add_parser("gk", parents=[bounds], help="bracket the GK dimension")
    gk.add_argument("file")
    gk.set_defaults(handler=cmd_gk)

    tensor = commands.add_parser("tensor", help="tensor two cyclic modules")
    tensor.add_argument("first")
    tensor.add_argument("second")
    tensor.set_defaults(handler=cmd_tensor)

    decompose = commands.add_parser("decompose", help="symplectic block basis")
    decompose.add_argument("file")
    decompose.set_defaults(handler=cmd_decompose)

    commuting = commands.add_parser(
        "commuting", parents=[bounds], help="solve for commuting monomials"
    )
    commuting.add_argument("file")
    commuting.add_argument("--C", required=True, metavar="BASIS")
    commuting.add_argument("--ext", required=True, metavar="BASIS")
    commuting.add_argument("--smax", type=int)
    commuting.set_defaults(handler=cmd_commuting)

    simple = commands.add_parser("simple-module", help="build F*A/γF*A over F*B")
    simple.add_argument("file")
    simple.add_argument("--gamma")
    simple.add_argument("--beta", action="append", default=[])
    simple.add_argument("--bound", type=int, default=2)
    simple.set_defaults(handler=cmd_simple_module)

    holonomy = commands.add_parser(
        "holonomy", parents=[bounds], help="probe strong holonomy"
    )
    holonomy.add_argument(
        "file", help="a module file, or the algebra file when MODULE is given"
    )
    holonomy.add_argument(
        "module", nargs="?", help="a module file over the algebra in FILE"
    )
    holonomy.set_defaults(handler=cmd_holonomy)

    example = commands.add_parser("example", help="generate an example instance")
    example.add_argument("--t", type=int, default=1)
    example.add_argument("--primes", default="2")
    example.add_argument("--k", type=int, default=1)
    example.add_argument("--output-dir")
    example.set_defaults(handler=cmd_example)

    return parser


def _configure_logging(verbose):
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = conf.get_log_level()
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s", level=level)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    logger.debug("running %s", args.command)
    try:
        return args.handler(args, out)
    except QTorusError as exc:
        err.write(f"error: {exc}\n")
        return INVALID
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return INVALID


__all__ = ["build_parser", "main"]
