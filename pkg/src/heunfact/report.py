"""Problem files, result documents, golden tables and the verification audit.

Everything here is deterministic: records follow mask enumeration order and
every expression is printed by the kernel's canonical printer, so two runs
on the same input produce byte-identical output.
"""

from __future__ import annotations

import csv
import difflib
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from heunfact import __version__
from heunfact.errors import CoincidentSingularities, InvalidProblem, NonZeroResidual
from heunfact.factorization import (
    SINGULAR,
    FailedSplitting,
    Factorization,
    SplittingMask,
    adjoint_factorization,
    lame_antisymmetry_holds,
    lame_swap_check,
    solve_splitting,
)
from heunfact.kernel import RationalFunction, XPoly, parse_coeff, parse_xpoly, parse_xpoly_env
from heunfact.kernel.expr import evaluate, parse
from heunfact.operators import (
    Accessory,
    Factor,
    FamilySpec,
    HeunParams,
    build_heun,
    expand_factors,
    make_family,
    operator_equal,
    residue_exponents,
)
from heunfact.solutions import residual_rational, right_solution

ENGINE_VERSION = __version__
FORMATS = ("table", "json", "csv")
TABLE_IDS = range(1, 8)


# -- problem files ---------------------------------------------------------


@dataclass
class ProblemFile:
    k: int
    singularities: list[str]
    exponents: str | list[str]
    include_trivial: bool = False
    format: str = "json"

    def family(self, allow_coincident: bool = False) -> FamilySpec:
        return make_family(self.k, self.singularities, self.exponents,
                           allow_coincident=allow_coincident)

    def echo(self) -> dict:
        return {"k": self.k, "singularities": list(self.singularities),
                "exponents": self.exponents if isinstance(self.exponents, str)
                else list(self.exponents),
                "include_trivial": self.include_trivial}


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidProblem(f"cannot read {path}: {exc.strerror}") from None
    if not text.strip():
        raise InvalidProblem(f"{path} is empty")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidProblem(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                             f"{exc.msg}") from None
    if not isinstance(data, dict):
        raise InvalidProblem(f"{path}: expected a JSON object")
    return data


def parse_problem(data: dict) -> ProblemFile:
    k = data.get("k")
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidProblem(f"'k' must be a positive integer, got {k!r}")
    sing = data.get("singularities")
    if not isinstance(sing, list) or not all(isinstance(s, (str, int)) for s in sing):
        raise InvalidProblem("'singularities' must be a list of expression strings")
    if len(sing) not in (k, k + 2):
        raise InvalidProblem(f"'singularities' needs {k} (or {k + 2}) entries, got {len(sing)}")
    exps = data.get("exponents", "lame")
    if isinstance(exps, str):
        if exps != "lame":
            raise InvalidProblem(f"'exponents' must be \"lame\" or a list, got {exps!r}")
    elif not isinstance(exps, list) or len(exps) != k + 2:
        raise InvalidProblem(f"'exponents' needs {k + 2} entries")
    include = data.get("include_trivial", False)
    if not isinstance(include, bool):
        raise InvalidProblem("'include_trivial' must be a boolean")
    fmt = data.get("format", "json")
    if fmt not in FORMATS:
        raise InvalidProblem(f"'format' must be one of {', '.join(FORMATS)}")
    return ProblemFile(k, [str(s) for s in sing],
                       exps if isinstance(exps, str) else [str(e) for e in exps],
                       include, fmt)


def load_problem(path) -> ProblemFile:
    return parse_problem(_read_json(path))


# -- result documents ------------------------------------------------------


def _s(value) -> str | None:
    return None if value is None else str(value)


def factorization_record(item: Factorization | FailedSplitting, family: FamilySpec) -> dict:
    if isinstance(item, FailedSplitting):
        left = [s for s, b in zip(family.singularities, item.mask.bits) if b]
        right = [s for s, b in zip(family.singularities, item.mask.bits) if not b]
        return {"mask": str(item.mask),
                "L": str(XPoly.from_roots(left, family.symbols)),
                "M": None,
                "Lbar": str(XPoly.from_roots(right, family.symbols)),
                "Mbar": None, "alpha_beta": None, "rho": None, "q": None,
                "nu_infinity": None, "nu_other": None,
                "status": item.status, "reason": item.reason}
    return {"mask": str(item.mask),
            "L": str(item.L), "M": str(item.M),
            "Lbar": str(item.Lbar), "Mbar": str(item.Mbar),
            "alpha_beta": str(item.alpha_beta),
            "rho": [str(r) for r in item.rho],
            "q": _s(item.q_value),
            "nu_infinity": str(item.index_pair[0]),
            "nu_other": str(item.index_pair[1]),
            "status": item.status}


def build_document(problem: ProblemFile, family: FamilySpec, results) -> dict:
    doc = problem.echo()
    doc["factorizations"] = [factorization_record(r, family) for r in results]
    doc["engine_version"] = ENGINE_VERSION
    return doc


def adjoint_record(f: Factorization, twice: bool = False) -> dict:
    g = adjoint_factorization(f)
    if twice:
        g = adjoint_factorization(g)
    rec = factorization_record(g, g.family)
    rec["source_mask"] = str(f.mask)
    op = g.pinned_operator
    rec["operator"] = {"q_top": str(op.q_top), "q_mid": str(op.q_mid), "q_low": str(op.low())}
    rec["adjoint_exponents"] = [str(e) for e in g.family.exponents]
    return rec


def build_adjoint_document(problem: ProblemFile, family: FamilySpec, results,
                           twice: bool = False) -> dict:
    doc = problem.echo()
    doc["adjoint"] = True
    records = []
    for r in results:
        if isinstance(r, FailedSplitting):
            records.append(factorization_record(r, family))
        else:
            records.append(adjoint_record(r, twice))
    doc["factorizations"] = records
    doc["engine_version"] = ENGINE_VERSION
    return doc


def result_schema() -> dict:
    text = resources.files("heunfact.data").joinpath("result.schema.json").read_text()
    return json.loads(text)


def validate_document(doc: dict) -> None:
    """Raise InvalidProblem when ``doc`` does not follow the result schema."""
    try:
        jsonschema.validate(doc, result_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InvalidProblem(f"result document invalid at {where}: {exc.message}") from None


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


CSV_FIELDS = ("mask", "L", "M", "Lbar", "Mbar", "alpha_beta", "rho", "q",
              "nu_infinity", "nu_other", "status")


def render_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in doc["factorizations"]:
        row = []
        for key in CSV_FIELDS:
            value = rec.get(key)
            if key == "rho" and value is not None:
                value = "; ".join(value)
            row.append("" if value is None else value)
        writer.writerow(row)
    return buf.getvalue()


def render_table(doc: dict) -> str:
    """Plain aligned text; one line per record."""
    headers = ["mask", "L", "Lbar", "M", "Mbar", "alpha*beta"]
    k = doc["k"]
    headers += ["q"] if k == 1 else [f"rho{i}" for i in range(1, k + 1)]
    headers += ["nu_inf", "nu_other", "status"]
    rows = []
    for rec in doc["factorizations"]:
        tail = [rec["q"]] if k == 1 else list(rec["rho"] or [None] * k)
        cells = [rec["mask"], rec["L"], rec["Lbar"], rec["M"], rec["Mbar"], rec["alpha_beta"],
                 *tail, rec["nu_infinity"], rec["nu_other"], rec["status"]]
        rows.append(["-" if c is None else c for c in cells])
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("-+-".join("-" * w for w in widths))
    for r in rows:
        lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "csv":
        return render_csv(doc)
    if fmt == "table":
        return render_table(doc)
    raise ValueError(f"unknown format {fmt!r}")


# -- verification ----------------------------------------------------------


@dataclass
class CheckResult:
    mask: str
    check: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        text = f"{mark} {self.mask} {self.check}"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = [c.line() for c in self.checks]
        lines += [f"SKIP {m}" for m in self.skipped]
        passed = sum(c.passed for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


def _check_round_trip(f: Factorization) -> CheckResult:
    ok = operator_equal(expand_factors(f.left, f.right), f.pinned_operator)
    return CheckResult(str(f.mask), "round-trip", ok,
                       "" if ok else "(L D + M)(Lbar D + Mbar) differs from the operator")


def _check_fuchs(f: Factorization) -> CheckResult:
    problems = []
    fam = f.family
    op = expand_factors(f.left, f.right)
    if op.q_low.degree > fam.k:
        problems.append(f"deg Q_low = {op.q_low.degree} > k")
    # local exponents are residues at simple roots; repeated points are skipped
    dtop = op.q_top.derivative()
    simple = [i for i, s in enumerate(fam.singularities) if not dtop.evaluate(s).is_zero()]
    exps = residue_exponents(op.q_top, op.q_mid, [fam.singularities[i] for i in simple])
    if any(e != fam.exponents[i] for e, i in zip(exps, simple)):
        problems.append("local exponents differ from the family")
    nu_r, nu_o = f.index_pair
    if nu_r != f.Mbar.coeff(f.Lbar.degree - 1):
        problems.append("nu_infinity is not the leading coefficient of Mbar")
    if nu_r + nu_o != fam.sigma:
        problems.append("index sum differs from the Fuchs relation")
    if nu_r * nu_o != f.alpha_beta:
        problems.append("index product differs from alpha*beta")
    return CheckResult(str(f.mask), "fuchs", not problems, "; ".join(problems))


def _check_residual(f: Factorization) -> CheckResult | None:
    try:
        y = right_solution(f)
    except CoincidentSingularities:
        return None
    try:
        residual_rational(f, y)
    except NonZeroResidual as exc:
        return CheckResult(str(f.mask), "residual", False, f"residual {exc.polynomial}")
    return CheckResult(str(f.mask), "residual", True)


def _check_lame(f: Factorization, partner: Factorization | None) -> CheckResult:
    problems = []
    if not lame_antisymmetry_holds(f):
        problems.append("antisymmetry identity fails")
    if partner is None:
        problems.append(f"complement {f.mask.complement()} missing")
    elif not lame_swap_check(f, partner):
        problems.append(f"negate-swap with {partner.mask} fails")
    return CheckResult(str(f.mask), "lame-symmetry", not problems, "; ".join(problems))


def verify_factorizations(items) -> VerificationReport:
    """Round-trip, Fuchs and residual checks for each factorization, plus
    the symmetry check for Lame families."""
    report = VerificationReport()
    by_mask = {str(f.mask): f for f in items if isinstance(f, Factorization)}
    for f in items:
        if isinstance(f, FailedSplitting):
            report.skipped.append(f"{f.mask} ({f.status})")
            continue
        report.checks.append(_check_round_trip(f))
        report.checks.append(_check_fuchs(f))
        residual = _check_residual(f)
        if residual is None:
            report.skipped.append(f"{f.mask} residual (Lbar has a repeated root)")
        else:
            report.checks.append(residual)
        if f.family.is_lame():
            report.checks.append(_check_lame(f, by_mask.get(str(f.mask.complement()))))
    return report


def factorization_from_record(rec: dict, family: FamilySpec) -> Factorization:
    """Rebuild a Factorization from a result record without recomputing it."""
    symbols = family.symbols
    mask = SplittingMask.from_string(rec["mask"])
    if mask.size != family.k + 2:
        raise InvalidProblem(f"mask {rec['mask']} has the wrong length")
    left_roots = tuple(s for s, b in zip(family.singularities, mask.bits) if b)
    right_roots = tuple(s for s, b in zip(family.singularities, mask.bits) if not b)
    try:
        left = Factor(parse_xpoly(rec["L"], symbols), parse_xpoly(rec["M"], symbols), left_roots)
        right = Factor(parse_xpoly(rec["Lbar"], symbols), parse_xpoly(rec["Mbar"], symbols),
                       right_roots)
        ab = parse_coeff(rec["alpha_beta"], symbols)
        rho = tuple(parse_coeff(r, symbols) for r in rec["rho"])
        pair = (parse_coeff(rec["nu_infinity"], symbols), parse_coeff(rec["nu_other"], symbols))
        params = HeunParams(family.k, family.singularities, family.exponents,
                            family.allow_coincident, accessory=Accessory(ab, rho))
    except (ValueError, ArithmeticError) as exc:
        raise InvalidProblem(f"record {rec['mask']}: {exc}") from None
    if left.l_poly != XPoly.from_roots(left_roots, symbols) or \
            right.l_poly != XPoly.from_roots(right_roots, symbols):
        raise InvalidProblem(f"record {rec['mask']}: L or Lbar does not match the mask")
    return Factorization(mask, left, right, ab, rho, pair, build_heun(params), family,
                         rec["status"])


def verify_document(doc: dict) -> VerificationReport:
    validate_document(doc)
    if doc.get("adjoint"):
        raise InvalidProblem("adjoint documents cannot be verified; verify the source family")
    problem = parse_problem({key: doc[key] for key in ("k", "singularities", "exponents")})
    try:
        family = problem.family(allow_coincident=True)
    except ValueError as exc:
        raise InvalidProblem(str(exc)) from None
    items = []
    for rec in doc["factorizations"]:
        if rec["status"] == SINGULAR:
            items.append(FailedSplitting(SplittingMask.from_string(rec["mask"]), SINGULAR,
                                         rec.get("reason", "")))
        else:
            items.append(factorization_from_record(rec, family))
    return verify_factorizations(items)


def verify_path(path) -> VerificationReport:
    """Audit a problem file (factorized afresh) or a stored result document."""
    from heunfact.factorization import factorize_all

    data = _read_json(path)
    if "factorizations" in data:
        return verify_document(data)
    problem = parse_problem(data)
    try:
        family = problem.family()
    except ValueError as exc:
        raise InvalidProblem(str(exc)) from None
    return verify_factorizations(factorize_all(family, problem.include_trivial))


# -- golden tables ---------------------------------------------------------


def load_golden(table_id: int) -> dict:
    if table_id not in TABLE_IDS:
        raise InvalidProblem(f"table id must be in 1..7, got {table_id}")
    text = resources.files("heunfact.data").joinpath(f"table{table_id}.json").read_text()
    return json.loads(text)


def golden_family(tab: dict) -> FamilySpec:
    return make_family(tab["k"], tab["singularities"], tab["exponents"])


_FIXED_KEYS = {"M", "Mbar", "alpha", "beta", "q"}


def _is_rho(key: str) -> bool:
    return key.startswith("rho") and key[3:].isdigit()


def canonical_line(mask, L, Lbar, M, Mbar, alpha, beta, tail) -> str:
    cells = [str(mask), str(L), str(Lbar), str(M), str(Mbar), str(alpha), str(beta)]
    cells += [str(t) for t in tail]
    return " | ".join(cells)


def golden_row_values(tab: dict, row: dict, family: FamilySpec) -> dict:
    """Evaluate a golden row: template letters first, then M, Mbar, alpha,
    beta and the accessory entries (which may refer to the letters)."""
    symbols = family.symbols
    values = dict(tab.get("constants", {}))
    values.update(row["values"])
    env = {s: RationalFunction.generator(s, symbols) for s in symbols}

    def const(c):
        return RationalFunction.from_value(c, symbols)

    letters = {}
    for key, text in values.items():
        if key not in _FIXED_KEYS and not _is_rho(key):
            letters[key] = evaluate(parse(text), env, const, text)
    env.update(letters)
    templates = tab.get("templates", {})
    out = {"L": parse_xpoly(row["L"], symbols), "Lbar": parse_xpoly(row["Lbar"], symbols)}
    for name in ("M", "Mbar"):
        text = templates.get(name, values.get(name))
        out[name] = parse_xpoly_env(text, symbols, letters)
    for key, text in values.items():
        if key in ("alpha", "beta", "q") or _is_rho(key):
            out[key] = evaluate(parse(text), env, const, text)
    return out


def _tail_keys(tab: dict) -> list[str]:
    k = tab["k"]
    return ["q"] if k == 1 else [f"rho{i}" for i in range(1, k + 1)]


def golden_lines(tab: dict) -> list[str]:
    family = golden_family(tab)
    lines = []
    for row in tab["rows"]:
        v = golden_row_values(tab, row, family)
        lines.append(canonical_line(row["mask"], v["L"], v["Lbar"], v["M"], v["Mbar"],
                                    v["alpha"], v["beta"], [v[t] for t in _tail_keys(tab)]))
    return lines


def computed_lines(tab: dict) -> list[str]:
    family = golden_family(tab)
    lines = []
    for row in tab["rows"]:
        f = solve_splitting(family, SplittingMask.from_string(row["mask"]))
        nu_r, nu_o = f.index_pair
        alpha, beta = (nu_r, nu_o) if row["orientation"] == "right" else (nu_o, nu_r)
        tail = [f.q_value] if tab["k"] == 1 else list(f.rho)
        lines.append(canonical_line(row["mask"], f.L, f.Lbar, f.M, f.Mbar, alpha, beta, tail))
    return lines


@dataclass
class TableComparison:
    table_id: int
    computed: list[str]
    golden: list[str]

    @property
    def matches(self) -> bool:
        return self.computed == self.golden

    def diff(self) -> str:
        return "".join(difflib.unified_diff(
            [s + "\n" for s in self.golden], [s + "\n" for s in self.computed],
            fromfile=f"golden/table{self.table_id}", tofile=f"computed/table{self.table_id}"))


def compare_table(table_id: int) -> TableComparison:
    tab = load_golden(table_id)
    return TableComparison(table_id, computed_lines(tab), golden_lines(tab))
