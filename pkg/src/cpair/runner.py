"""Executing the checks of a document and rendering the report."""

import json
from dataclasses import dataclass, field

from . import sweeps
from .chern import GradedClass, cotangent_class, total_c_chern
from .covers import classify_cover, cyclic_adapted_cover, quotient_pair
from .curves import (
    cover_twist, curve_degree, curve_kappa, irregularity_bounds, kappa_scan,
    riemann_hurwitz_genus,
)
from .divisors import format_ext, standard_coefficient
from .errors import ChartMismatch, CPairError, IndeterminateInvariant, InvalidMorphism
from .geometry import restrict_pair
from .morphisms import (
    b_birational, compare_boundaries, local_orbifold_morphism, log_canonical_check,
    nc_cmorphism, orbifold_morphism, pluricanonical_pullback,
)
from .sheaves import (
    CoverSetup, adapted_differential_bound, basis_tensors, check_inclusions, compute_adapted,
    differential_is_adapted, functoriality_check, oracle_box_scan, oracle_thresholds,
    residue_kernel_p1, sym_product_degree,
)

__all__ = ["RunOptions", "CheckResult", "Report", "run", "REPORT_VERSION"]

REPORT_VERSION = 1
VERDICTS = ("pass", "fail", "error", "info")


@dataclass(frozen=True)
class RunOptions:
    max_tensors: int | None = None
    seed: int = 0
    strict: bool = False


@dataclass
class CheckResult:
    index: int
    line: int
    kind: str
    args: tuple
    verdict: str
    witnesses: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    error: dict | None = None

    def as_dict(self):
        return {
            "index": self.index,
            "line": self.line,
            "kind": self.kind,
            "args": list(self.args),
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "data": self.data,
            "error": self.error,
        }


@dataclass
class Report:
    file: str
    checks: list = field(default_factory=list)
    error: dict | None = None

    def summary(self):
        out = {"checks": len(self.checks)}
        for v in VERDICTS:
            out[v] = sum(c.verdict == v for c in self.checks)
        return out

    @property
    def exit_code(self):
        s = self.summary()
        if self.error or s["error"]:
            return 2
        return 1 if s["fail"] else 0

    def as_dict(self):
        out = {
            "version": REPORT_VERSION,
            "file": self.file,
            "summary": self.summary(),
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.error:
            out["error"] = self.error
        return out

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self):
        lines = []
        if self.error:
            lines.append(f"error: {self.error['message']}")
        for c in self.checks:
            head = f"[{c.index}] line {c.line}: check {' '.join((c.kind,) + c.args)} ... {c.verdict.upper()}"
            lines.append(head)
            if c.error:
                lines.append(f"    {c.error['type']}: {c.error['message']}")
            for w in c.witnesses:
                lines.append(f"    witness: {w['source']} over {w['target']}: {w['lhs']} < {w['rhs']}")
            for key, value in _flatten(c.data):
                lines.append(f"    {key}: {value}")
        s = self.summary()
        lines.append(
            f"{s['checks']} checks: {s['pass']} passed, {s['fail']} failed, "
            f"{s['error']} errors, {s['info']} informational")
        return "\n".join(lines) + "\n"


def _flatten(data, prefix=""):
    for key in sorted(data):
        value = data[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict) and value and all(not isinstance(v, (dict, list)) for v in value.values()):
            yield name, ", ".join(f"{k}={v}" for k, v in sorted(value.items())) or "{}"
        elif isinstance(value, dict):
            yield from _flatten(value, name + ".") if value else [(name, "{}")]
        elif isinstance(value, list):
            if not any(isinstance(v, dict) for v in value):
                yield name, "[" + ", ".join(map(str, value)) + "]"
                continue
            for v in value:
                if isinstance(v, dict):
                    yield name, ", ".join(f"{k}={v[k]}" for k in sorted(v))
                else:
                    yield name, v
        else:
            yield name, value


# canonical forms

def num(value):
    return format_ext(value)


def div(D):
    return {str(p): format_ext(c) for p, c in sorted(D.items(), key=lambda pc: str(pc[0]))}


def boundary(B):
    return {str(p): format_ext(m) for p, m in sorted(B.items(), key=lambda pm: str(pm[0]))}


def witnesses(verdict):
    return [{"source": str(w.source), "target": str(w.target), "lhs": num(w.lhs), "rhs": num(w.rhs)}
            for w in verdict.witnesses]


def _allowances(sheaf):
    axes = sheaf.axes or tuple(f"x{i}" for i in range(1, sheaf.dim + 1))
    rows = []
    for (t, a), gen in zip(sheaf.allowances.items(), sheaf.generator_strings()):
        rows.append({"tensor": t.render(axes), "allowance": list(a), "generator": gen})
    return rows


# handlers

class _Context:
    def __init__(self, env, options):
        self.env = env
        self.options = options

    def pair(self, name):
        return self.env.pairs[name]

    def setup(self, mono, pair):
        cover = self.env.monomials[mono]
        info = self.pair(pair)
        if info.chart is not None and info.chart != cover.target:
            raise ChartMismatch(f"pair {pair} lives on {info.chart.name}, the cover maps to {cover.target.name}")
        return CoverSetup(cover, info.boundary)

    def morph(self, name):
        return self.env.morphisms[name]


def _classify(ctx, mono, pair):
    c = classify_cover(ctx.env.monomials[mono], ctx.setup(mono, pair).boundary)
    return "info", [], {
        "adapted": c.is_adapted,
        "strongly_adapted": c.is_strongly_adapted,
        "uniformization": c.is_uniformization,
        "branch_in_support": c.branch_in_support,
        "pulled_orbifold_divisor": div(c.pulled_orbifold_divisor),
        "branch": [str(b) for b in c.branch],
    }


def _adapted_sheaf(ctx, n, p, mono, pair):
    s = ctx.setup(mono, pair)
    sheaf = compute_adapted(s, int(n), int(p), ctx.options.max_tensors)
    return "info", [], {"tensors": _allowances(sheaf)}


def _oracle(ctx, n, p, mono, pair):
    s = ctx.setup(mono, pair)
    n, p = int(n), int(p)
    if not s.is_diagonal():
        rows = []
        for t in basis_tensors(s.dim, n, p, ctx.options.max_tensors):
            a = oracle_thresholds(s, n, p, t)
            rows.append({"tensor": t.render(s.axes), "allowance": None if a is None else list(a)})
        return "info", [], {"diagonal": False, "tensors": rows}
    sheaf = compute_adapted(s, n, p, ctx.options.max_tensors)
    mismatched = []
    for t, a in sheaf.allowances.items():
        got = oracle_thresholds(s, n, p, t)
        if got != a:
            mismatched.append({"tensor": t.render(s.axes), "closed_form": list(a),
                               "oracle": None if got is None else list(got)})
    bad, total = oracle_box_scan(s, n, p, sheaf)
    verdict = "pass" if not mismatched and not bad else "fail"
    return verdict, [], {"diagonal": True, "mismatches": mismatched,
                         "box_points": total, "box_mismatches": bad}


def _inclusions(ctx, n, p, mono, pair):
    r = check_inclusions(ctx.setup(mono, pair), int(n), int(p), ctx.options.max_tensors)
    verdict = "pass" if all(r.holds.values()) else "fail"
    return verdict, [], {"holds": dict(sorted(r.holds.items())), "equal": dict(sorted(r.equal.items()))}


def _residue(ctx, mono, pair):
    s = ctx.setup(mono, pair)
    kernel, closed = residue_kernel_p1(s), compute_adapted(s, 1, 1)
    return ("pass" if kernel == closed else "fail"), [], {
        "residue_kernel": _allowances(kernel), "differences": len(kernel.differences(closed))}


def _sym_product(ctx, n1, n2, p, mono, pair):
    r = sym_product_degree(ctx.setup(mono, pair), int(n1), int(n2), int(p), ctx.options.max_tensors)
    ok = r.superadditive and r.sym_equal is not False
    return ("pass" if ok else "fail"), [], {
        "pairs": r.pairs, "superadditive_failures": len(r.failures),
        "adapted": r.adapted, "sym_equal": r.sym_equal}


def _functoriality(ctx, n, p, alpha, beta, pair):
    a, b = ctx.env.monomials[alpha], ctx.env.monomials[beta]
    s = ctx.setup(beta, pair)
    if a.target != b.source:
        raise ChartMismatch(f"{alpha} lands in {a.target.name}, {beta} starts at {b.source.name}")
    r = functoriality_check(a.diagonal_powers(), s.powers, s.mults, int(n), int(p),
                            max_tensors=ctx.options.max_tensors)
    axes = s.axes
    diffs = [{"tensor": t.render(axes), "pulled_back": list(x), "direct": list(y)}
             for t, x, y in r.differences]
    return ("pass" if r.inclusion else "fail"), [], {
        "equal": r.equal, "beta_adapted": r.beta_adapted, "differences": diffs}


def _differential(ctx, mono, pair, *v):
    s = ctx.setup(mono, pair)
    v = tuple(int(x) for x in v)
    if len(v) != s.dim:
        raise ValueError(f"need {s.dim} exponents, got {len(v)}")
    ok = differential_is_adapted(s, v)
    data = {"exponents": list(v), "adapted": ok}
    try:
        data["bound"] = adapted_differential_bound(s, v)
    except ValueError as exc:
        data["bound"] = f"n/a ({exc})"
    return ("pass" if ok else "fail"), [], data


def _cyclic_cover(ctx, pair):
    info = ctx.pair(pair)
    spec = cyclic_adapted_cover(info.boundary)
    data = {"degree": spec.degree,
            "exponents": {str(p): e for p, e in sorted(spec.exponents.items(), key=lambda x: str(x[0]))}}
    verdict = "info"
    if info.chart is not None:
        c = classify_cover(spec.local_model(info.chart, info.boundary), info.boundary)
        data.update(adapted=c.is_adapted, strongly_adapted=c.is_strongly_adapted)
        verdict = "pass" if c.is_strongly_adapted else "fail"
    return verdict, [], data


def _restrict(ctx, pair, axis):
    info = ctx.pair(pair)
    if info.chart is None:
        raise ChartMismatch(f"pair {pair} has no chart")
    chart, B = restrict_pair(info.chart, info.boundary, int(axis))
    return "info", [], {"chart": chart.name, "dim": chart.dim, "boundary": boundary(B)}


def _quotient(ctx, q, pair):
    if q in ctx.env.monomials:
        cover = ctx.env.monomials[q]
        info = ctx.pair(pair)
        if info.chart is not None and info.chart != cover.source:
            raise ChartMismatch(f"pair {pair} must live on the source chart {cover.source.name}")
        qmap = cover.as_divisorial()
    else:
        qmap = ctx.morph(q).phi
    D_Q, data = quotient_pair(ctx.pair(pair).boundary, qmap)
    rows = {str(H): {"ramification": e, "upstairs": format_ext(m_up), "m": format_ext(m)}
            for H, (e, m_up, m) in sorted(data.rows.items(), key=lambda x: str(x[0]))}
    verdict = "pass" if data.is_strongly_adapted else "fail"
    return verdict, [], {"boundary": boundary(D_Q), "coefficients": div(D_Q.as_qdivisor()),
                         "rows": rows, "adapted": data.is_adapted,
                         "strongly_adapted": data.is_strongly_adapted}


def _orbifold(ctx, *args):
    if len(args) == 1:
        m = ctx.morph(args[0])
        v = orbifold_morphism(m.phi, ctx.pair(m.source).boundary, ctx.pair(m.target).boundary)
    else:
        cover = ctx.env.monomials[args[0]]
        v = orbifold_morphism(cover.as_divisorial(), ctx.pair(args[1]).boundary,
                              ctx.pair(args[2]).boundary)
    return ("pass" if v.passed else "fail"), witnesses(v), {}


def _local_orbifold(ctx, name):
    m = ctx.morph(name)
    if not (m.target_splits or m.source_splits):
        raise InvalidMorphism(f"morphism {name} declares no local splits")
    v = local_orbifold_morphism(m.phi, ctx.pair(m.source).boundary, ctx.pair(m.target).boundary,
                                m.target_splits, m.source_splits, m.local_pullbacks)
    return ("pass" if v.passed else "fail"), witnesses(v), {}


def _nc(ctx, name, _at, prime):
    m = ctx.morph(name)
    S = next((s for s in m.phi.source_primes if str(s) == prime), None)
    if S is None:
        raise InvalidMorphism(f"{prime} is not a source prime of {name}")
    B_X, B_Y = ctx.pair(m.source).boundary, ctx.pair(m.target).boundary
    targets = [T for T in m.phi.target_primes if m.phi.pullback_prime(T).coefficient(S)]
    a = [int(m.phi.pullback_prime(T).coefficient(S)) for T in targets]
    v = nc_cmorphism(a, B_X.multiplicity(S), [B_Y.multiplicity(T) for T in targets])
    ws = [{"source": prime, "target": str(targets[w.target - 1]), "lhs": num(w.lhs), "rhs": num(w.rhs)}
          for w in v.witnesses]
    return ("pass" if v.passed else "fail"), ws, {
        "exponents": {str(T): e for T, e in zip(targets, a)},
        "source_multiplicity": format_ext(B_X.multiplicity(S))}


def _pluricanonical(ctx, m, name):
    mo = ctx.morph(name)
    v = pluricanonical_pullback(mo.phi, ctx.pair(mo.source).boundary, ctx.pair(mo.target).boundary, int(m))
    return ("pass" if v.passed else "fail"), [], {"defect": div(v.defect)}


def _compare(ctx, p1, p2):
    v = compare_boundaries(ctx.pair(p1).boundary, ctx.pair(p2).boundary)
    return ("pass" if v.passed else "fail"), witnesses(v), {}


def _log_canonical(ctx, name):
    m = ctx.morph(name)
    v = log_canonical_check(m.phi, ctx.pair(m.target).boundary, ctx.pair(m.source).boundary)
    return ("pass" if v.passed else "fail"), [], {
        "discrepancies": {str(E): format_ext(a) for E, a in v.discrepancies.items()},
        "defect": div(v.defect)}


def _b_birational(ctx, alpha, beta):
    a, b = ctx.morph(alpha), ctx.morph(beta)
    if a.source != b.source:
        raise InvalidMorphism(f"{alpha} and {beta} start from different pairs")
    K_Z = a.phi.k_source if a.phi.k_source is not None else b.phi.k_source
    if K_Z is None:
        raise InvalidMorphism("the common model needs K_source")
    v = b_birational(a.phi, b.phi, K_Z, ctx.pair(a.target).boundary, ctx.pair(b.target).boundary)
    return ("pass" if v.passed else "fail"), [], {"left": div(v.left), "right": div(v.right)}


def _chern(ctx, pair):
    info = ctx.pair(pair)
    comps = [(str(p), m) for p, m in sorted(info.boundary.items(), key=lambda x: str(x[0]))]
    dim = info.chart.dim if info.chart is not None else max(1, len(comps))
    c = cotangent_class(dim)
    total = total_c_chern(c, comps)
    expected = GradedClass.symbol("c1", dim, weights=c.weights)
    for sym, m in comps:
        expected = expected + GradedClass.symbol(sym, dim, weights=c.weights) * standard_coefficient(m)
    ok = total.part(1) == expected
    return ("pass" if ok else "fail"), [], {
        "dim": dim, "total": str(total),
        "parts": {str(k): str(total.part(k)) for k in range(dim + 1)}}


def _curve(ctx, name):
    C = ctx.env.curves[name]
    kappa = curve_kappa(C)
    data = {"genus": C.genus, "degree": format_ext(curve_degree(C)),
            "kappa": format_ext(kappa), "special": kappa < 1}
    if C.genus == 0:
        rows = kappa_scan(C)
        data["scan_limit"] = len(rows)
        data["sections"] = [[m, h] for m, _, h in rows if h]
    return "info", [], data


def _cover(ctx, name):
    curve_name, cover = ctx.env.covers[name]
    C = ctx.env.curves[curve_name]
    h = riemann_hurwitz_genus(C.genus, cover)
    data = {"genus": h, "twist": list(cover_twist(C, cover))}
    lo, hi = irregularity_bounds(C, cover)
    data["irregularity"] = lo if lo == hi else None
    data["irregularity_bounds"] = [lo, hi]
    if lo != hi:
        raise IndeterminateInvariant("irregularity depends on the position of the points", lo, hi)
    return "info", [], data


def _sweep(ctx, kind, count):
    r = sweeps.run_sweep(kind, int(count), ctx.options.seed)
    return ("pass" if r.passed else "fail"), [], {
        "instances": r.count, "failures": len(r.failures), "seed": ctx.options.seed,
        "notes": {k: v for k, v in sorted(r.notes.items())}}


HANDLERS = {
    "classify": _classify,
    "adapted-sheaf": _adapted_sheaf,
    "oracle": _oracle,
    "inclusions": _inclusions,
    "residue": _residue,
    "sym-product": _sym_product,
    "functoriality": _functoriality,
    "differential": _differential,
    "cyclic-cover": _cyclic_cover,
    "restrict": _restrict,
    "quotient": _quotient,
    "orbifold": _orbifold,
    "local-orbifold": _local_orbifold,
    "nc-cmorphism": _nc,
    "pluricanonical": _pluricanonical,
    "compare": _compare,
    "log-canonical": _log_canonical,
    "b-birational": _b_birational,
    "chern": _chern,
    "curve": _curve,
    "cover": _cover,
    "sweep": _sweep,
}


class StrictAbort(Exception):
    """Raised by :func:`run` in strict mode at the first check that errors."""

    def __init__(self, report):
        super().__init__("check error in strict mode")
        self.report = report


def run(doc, options=None, file="-"):
    """Run every check of a parsed document in order."""
    options = options or RunOptions()
    ctx = _Context(doc.env, options)
    report = Report(file)
    for i, check in enumerate(doc.checks, start=1):
        result = CheckResult(i, check.loc[0], check.kind, check.args, "error")
        try:
            verdict, ws, data = HANDLERS[check.kind](ctx, *check.args)
            result.verdict, result.witnesses, result.data = verdict, ws, data
        except (CPairError, ValueError, ZeroDivisionError) as exc:
            result.error = {"type": getattr(exc, "kind", type(exc).__name__), "message": str(exc)}
            if isinstance(exc, IndeterminateInvariant):
                result.data = {"bounds": [exc.lower, exc.upper]}
        report.checks.append(result)
        if options.strict and result.verdict == "error":
            raise StrictAbort(report)
    return report

