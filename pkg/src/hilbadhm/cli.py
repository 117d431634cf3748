"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 domain precondition, 3 non-commuting
datum, 4 unstable datum, 5 clustering ambiguity. Diagnostics go to stderr.

Defaults for --order, --seed, --tolerance and --format can be overridden by
the environment variables HILBADHM_ORDER, HILBADHM_SEED, HILBADHM_TOLERANCE
and HILBADHM_FORMAT.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import serialize as ser
from .adhm import (
    AdhmDatum,
    are_equivalent,
    datum_from_points,
    datum_to_ideal,
    ideal_to_datum,
    krylov,
    require_commuting,
    stabilize_search,
)
from .cycle import hilbert_chow_approx, hilbert_chow_exact
from .errors import DomainError, HilbAdhmError, ParseError
from .monad import build_monad, check_complex, check_surjectivity_certificate, fiber_profile, random_fiber
from .poly import groebner, mono_str
from .variety import VarietyConstraint, induced_quotient_ideal, is_in_hilb_variety, variety_residuals

DEFAULT_SEED = 0
DEFAULT_TOLERANCE = 1e-8


@dataclass
class JobConfig:
    command: str
    inputs: list = field(default_factory=list)
    order: str = "grevlex"
    seed: int = DEFAULT_SEED
    tolerance: float = DEFAULT_TOLERANCE
    output_format: str = "text"
    emit_witness: bool = False

    @property
    def structured(self) -> bool:
        return self.output_format != "text"


def _env(name, default, cast=str):
    value = os.environ.get(name)
    return default if value is None else cast(value)


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load_datum(path: str) -> AdhmDatum:
    return ser.load_datum(_read(path))


def _load_ideal(path: str, order, nvars=None):
    gens = ser.load_ideal_text(_read(path), nvars)
    if not gens:
        raise ParseError(f"{path}: no generators")
    return groebner(gens, order)


def _looks_like_datum(text: str) -> bool:
    return text.lstrip().startswith("{")


def _matrix_text(m) -> list[str]:
    cells = [[str(a) for a in r] for r in m.rows]
    w = max((len(c) for r in cells for c in r), default=1)
    return ["[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells]


def _datum_text(x: AdhmDatum, basis=None) -> str:
    out = [f"n = {x.n}, c = {x.c}"]
    if basis is not None:
        out.append("basis: " + ", ".join(mono_str(m) for m in basis))
    for i, b in enumerate(x.B):
        out.append(f"B_{i} =")
        out.extend("  " + line for line in _matrix_text(b))
    out.append("I = " + " ".join(str(a) for a in x.i_vector))
    return "\n".join(out) + "\n"


def _ideal_text(ideal) -> str:
    lines = [g.format(ideal.order) for g in ideal.reduced_gb]
    out = "\n".join(lines) + "\n"
    out += f"# colength: {len(ideal.std_monomials)}\n"
    out += "# standard monomials: " + ", ".join(mono_str(m) for m in ideal.std_monomials) + "\n"
    return out


# commands


def cmd_ideal2adhm(cfg: JobConfig, args) -> str:
    ideal = _load_ideal(cfg.inputs[0], cfg.order, args.nvars)
    x = ideal_to_datum(ideal)
    if cfg.structured:
        return ser.dump_datum(x, ideal.std_monomials)
    return _datum_text(x, ideal.std_monomials)


def cmd_adhm2ideal(cfg: JobConfig, args) -> str:
    x = _load_datum(cfg.inputs[0])
    ideal = datum_to_ideal(x, cfg.order)
    if cfg.structured:
        return ser.dumps(ser.ideal_to_doc(ideal))
    return _ideal_text(ideal)


def cmd_roundtrip(cfg: JobConfig, args) -> str:
    text = _read(cfg.inputs[0])
    if _looks_like_datum(text):
        x = ser.load_datum(text)
        ideal = datum_to_ideal(x, cfg.order)
        y = ideal_to_datum(ideal)
        w = are_equivalent(x, y, cfg.order)
        doc = {"kind": "datum", "equivalent": w is not None, "ideal": ser.ideal_to_doc(ideal)}
        if cfg.emit_witness and w is not None:
            doc["witness"] = ser.matrix_to_doc(w.g)
        ok = w is not None
    else:
        ideal = groebner(ser.load_ideal_text(text, args.nvars), cfg.order)
        back = datum_to_ideal(ideal_to_datum(ideal), cfg.order)
        ok = back.reduced_gb == ideal.reduced_gb
        doc = {"kind": "ideal", "identical": ok, "ideal": ser.ideal_to_doc(ideal)}
    if cfg.structured:
        return ser.dumps(doc)
    return f"roundtrip ({doc['kind']}): {'ok' if ok else 'MISMATCH'}\n"


def cmd_equiv(cfg: JobConfig, args) -> str:
    x, y = _load_datum(cfg.inputs[0]), _load_datum(cfg.inputs[1])
    w = are_equivalent(x, y, cfg.order)
    if cfg.structured:
        doc = {"equivalent": w is not None}
        if w is not None and cfg.emit_witness:
            doc["witness"] = ser.matrix_to_doc(w.g)
        return ser.dumps(doc)
    out = f"equivalent: {'true' if w is not None else 'false'}\n"
    if w is not None and cfg.emit_witness:
        out += "g =\n" + "\n".join("  " + line for line in _matrix_text(w.g)) + "\n"
    return out


def cmd_stability(cfg: JobConfig, args) -> str:
    x = _load_datum(cfg.inputs[0])
    require_commuting(x)
    kr = krylov(x, cfg.order)
    stable = kr.rank == x.c
    if cfg.structured:
        return ser.dumps(
            {
                "stable": stable,
                "krylov_rank": kr.rank,
                "c": x.c,
                "basis_monomials": [mono_str(m) for m in kr.basis_monomials],
            }
        )
    return f"stable: {str(stable).lower()}, krylov rank {kr.rank}/{x.c}\n"


def cmd_hilbchow(cfg: JobConfig, args) -> str:
    x = _load_datum(cfg.inputs[0])
    if args.approx:
        cyc = hilbert_chow_approx(x, cfg.tolerance, cfg.seed)
    else:
        cyc = hilbert_chow_exact(x)
    if cfg.structured:
        doc = ser.cycle_to_doc(cyc, x.n)
        if args.approx:
            doc["seed"] = cfg.seed
        return ser.dumps(doc)
    out = ser.cycle_to_text(cyc, x.n)
    if args.approx:
        out = f"# seed={cfg.seed}\n" + out
    return out


def _on_subscheme(ideal, z) -> bool:
    n = ideal.nvars
    if z[n] == 0:
        return False
    pt = [a / z[n] for a in z[:n]]
    return all(g.evaluate(pt) == 0 for g in ideal.reduced_gb)


def cmd_monadcheck(cfg: JobConfig, args) -> str:
    x = _load_datum(cfg.inputs[0])
    monad = build_monad(x)
    ok, violations = check_complex(monad)
    ideal = datum_to_ideal(x, cfg.order)
    rng = random.Random(cfg.seed)
    worst_negative = 0
    deg0 = set()
    sampled = 0
    while sampled < args.fibers:
        z = random_fiber(x.n, rng)
        if _on_subscheme(ideal, z):
            continue
        prof = fiber_profile(monad, z)
        worst_negative = max([worst_negative] + [h for d, (_, h) in prof.items() if d < 0])
        deg0.add(prof[0][1])
        sampled += 1
    surj = check_surjectivity_certificate(x, args.fibers, cfg.seed)
    if cfg.structured:
        return ser.dumps(
            {
                "complex": ok,
                "violations": [str(v) for v in violations],
                "fibers_sampled": sampled,
                "max_negative_degree_cohomology": worst_negative,
                "degree0_cohomology": sorted(deg0),
                "alpha0_surjective_on_samples": surj,
                "dims": {str(d): k for d, k in monad.shape.dims.items()},
                "seed": cfg.seed,
            }
        )
    lines = [
        f"complex: {'ok' if ok else 'FAILED'}, fibers sampled: {sampled}, "
        f"negative-degree cohomology: {worst_negative}",
        "degree-0 cohomology: " + ", ".join(str(h) for h in sorted(deg0)),
        "dims: " + ", ".join(f"{d}:{k}" for d, k in monad.shape.dims.items()),
        f"seed: {cfg.seed}",
    ]
    lines.extend(f"violation: {v}" for v in violations)
    return "\n".join(lines) + "\n"


def cmd_monad(cfg: JobConfig, args) -> str:
    x = _load_datum(cfg.inputs[0])
    return ser.dump_monad(build_monad(x))


def cmd_variety(cfg: JobConfig, args) -> str:
    text = _read(cfg.inputs[0])
    vtext = _read(args.variety)
    if _looks_like_datum(text):
        x = ser.load_datum(text)
        y = VarietyConstraint.parse(vtext, x.n)
        member = is_in_hilb_variety(x, y)
        nonzero = [i for i, r in enumerate(variety_residuals(x, y)) if not r.is_zero()]
        doc = {"member": member, "nonzero_residuals": nonzero, "equations": y.equation_count(x.c)}
    else:
        ideal = _load_ideal(cfg.inputs[0], cfg.order, args.nvars)
        y = VarietyConstraint.parse(vtext, ideal.nvars)
        rep = induced_quotient_ideal(ideal, y)
        member = rep.contained
        doc = {"member": member, "residues": [r.format(ideal.order) for r in rep.residues]}
    if cfg.structured:
        return ser.dumps(doc)
    return f"on variety: {str(member).lower()}\n"


def _parse_points(text: str, n):
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            pts.append(tuple(ser.parse_rational(a.strip()) for a in chunk.split(",")))
    return datum_from_points(pts, n)


def cmd_sample(cfg: JobConfig, args) -> str:
    from .corpus import random_stable_datum

    if args.points:
        x = _parse_points(args.points, args.n)
        out = ser.datum_to_doc(x)
    else:
        if args.n is None or args.c is None:
            raise DomainError("random sampling needs --n and --c")
        x = random_stable_datum(args.n, args.c, random.Random(cfg.seed))
        out = ser.datum_to_doc(x)
        out["seed"] = cfg.seed
    return ser.dumps(out)


def cmd_stabilize(cfg: JobConfig, args) -> str:
    x = _load_datum(cfg.inputs[0])
    radius = ser.parse_rational(args.radius)
    y = stabilize_search(x, args.trials, cfg.seed, radius)
    doc = {"found": y is not None, "seed": cfg.seed, "trials": args.trials, "radius": str(radius)}
    if y is not None:
        doc["datum"] = ser.datum_to_doc(y)
    if cfg.structured:
        return ser.dumps(doc)
    if y is None:
        return f"no stable datum found (exploratory; seed {cfg.seed})\n"
    return f"found stable datum (seed {cfg.seed})\n" + _datum_text(y)


def _corpus_job(job):
    kind, payload, order = job
    try:
        if kind == "ideal":
            ideal = groebner(payload, order)
            back = datum_to_ideal(ideal_to_datum(ideal), order)
            ok = back.reduced_gb == ideal.reduced_gb
            label = str(ideal)
        else:
            x = payload
            ok = are_equivalent(ideal_to_datum(datum_to_ideal(x, order)), x, order) is not None
            label = f"datum n={x.n} c={x.c}"
        return f"{'ok  ' if ok else 'FAIL'} {kind:5s} {label}", ok
    except HilbAdhmError as e:
        return f"ERR  {kind:5s} {e}", False


def cmd_corpus(cfg: JobConfig, args) -> str:
    from .corpus import monomial_ideal_corpus, point_ideal_generators, random_points, random_stable_datum

    rng = random.Random(cfg.seed)
    jobs = []
    for n in (2, 3):
        jobs.extend(("ideal", g, cfg.order) for g in monomial_ideal_corpus(n, args.max_colength))
    for _ in range(args.points):
        n, k = rng.randint(1, 4), rng.randint(1, 6)
        jobs.append(("ideal", point_ideal_generators(random_points(n, k, rng), n, rng), cfg.order))
    for _ in range(args.data):
        jobs.append(("datum", random_stable_datum(rng.randint(1, 3), rng.randint(1, 4), rng), cfg.order))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_corpus_job, jobs))
    else:
        results = [_corpus_job(j) for j in jobs]
    passed = sum(ok for _, ok in results)
    if cfg.structured:
        return ser.dumps(
            {"seed": cfg.seed, "total": len(results), "passed": passed, "lines": [r for r, _ in results]}
        )
    body = "".join(r + "\n" for r, _ in results) if args.verbose else ""
    return body + f"corpus: {passed}/{len(results)} passed (seed {cfg.seed})\n"


COMMANDS = {
    "ideal2adhm": cmd_ideal2adhm,
    "adhm2ideal": cmd_adhm2ideal,
    "roundtrip": cmd_roundtrip,
    "equiv": cmd_equiv,
    "stability": cmd_stability,
    "hilbchow": cmd_hilbchow,
    "monadcheck": cmd_monadcheck,
    "monad": cmd_monad,
    "variety": cmd_variety,
    "sample": cmd_sample,
    "stabilize": cmd_stabilize,
    "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["grevlex", "lex", "deglex"],
                        default=_env("HILBADHM_ORDER", "grevlex"))
    common.add_argument("--seed", type=int, default=_env("HILBADHM_SEED", DEFAULT_SEED, int))
    common.add_argument("--tolerance", type=float,
                        default=_env("HILBADHM_TOLERANCE", DEFAULT_TOLERANCE, float))
    common.add_argument("--format", dest="output_format", choices=["text", "json"],
                        default=_env("HILBADHM_FORMAT", "text"))
    common.add_argument("--nvars", type=int, default=None,
                        help="number of variables for ideal files (default: max(2, highest index + 1))")
    common.add_argument("--emit-witness", action="store_true")

    p = argparse.ArgumentParser(prog="hilbadhm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("ideal2adhm", parents=[common], help="ideal file -> ADHM datum").add_argument("input")
    sub.add_parser("adhm2ideal", parents=[common], help="datum file -> reduced Groebner basis").add_argument("input")
    sub.add_parser("roundtrip", parents=[common], help="round-trip an ideal or datum file").add_argument("input")
    sp = sub.add_parser("equiv", parents=[common], help="decide GL(V)-equivalence of two data")
    sp.add_argument("input")
    sp.add_argument("other")
    sub.add_parser("stability", parents=[common], help="stability and Krylov rank").add_argument("input")
    sp = sub.add_parser("hilbchow", parents=[common], help="Hilbert-Chow support cycle")
    sp.add_argument("input")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", dest="approx", action="store_false")
    g.add_argument("--approx", dest="approx", action="store_true")
    sp.set_defaults(approx=False)
    sp = sub.add_parser("monadcheck", parents=[common], help="build and verify the extended monad")
    sp.add_argument("input")
    sp.add_argument("--fibers", type=int, default=20)
    sp = sub.add_parser("monad", parents=[common], help="monad utilities")
    sp.add_argument("action", choices=["dump"])
    sp.add_argument("input")
    sp = sub.add_parser("variety", parents=[common], help="membership in the Hilbert scheme of Y")
    sp.add_argument("input", help="datum (JSON) or ideal file")
    sp.add_argument("variety", help="variety file: one polynomial per line")
    sp = sub.add_parser("sample", parents=[common], help="emit a sample stable datum")
    sp.add_argument("--points", help='e.g. "0,0; 1,0"')
    sp.add_argument("--n", type=int)
    sp.add_argument("--c", type=int)
    sp = sub.add_parser("stabilize", parents=[common], help="exploratory stabilizing-deformation search")
    sp.add_argument("input")
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--radius", default="1")
    sp = sub.add_parser("corpus", parents=[common], help="batch round-trip runner")
    sp.add_argument("--max-colength", type=int, default=6)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--data", type=int, default=50)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = [getattr(args, k) for k in ("input", "other") if getattr(args, k, None)]
    cfg = JobConfig(
        command=args.command,
        inputs=inputs,
        order=args.order,
        seed=args.seed,
        tolerance=args.tolerance,
        output_format=args.output_format,
        emit_witness=args.emit_witness,
    )
    try:
        out = COMMANDS[args.command](cfg, args)
    except HilbAdhmError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
