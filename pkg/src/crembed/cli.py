"""Command-line entry point.

    crembed <command> (<file> | --catalog <name>) [--format text|json|latex]
            [--normalized] [--chart <grouping>] [--m-chart <grouping>]

Exit codes: 0 success, 1 algebra invalid, 2 CR structure invalid,
3 computation failure, 4 verification failure, 5 I/O or schema error.
The document is assembled in full before anything is written to stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import catalog as cat
from .cr import CRStructure, validate_cr
from .embedding import compute_embedding, normalize_embedding, verify_cr_identity, verify_injectivity
from .errors import AlgebraInvalid, CREmbedError, CRStructureInvalid, SchemaError
from .group_law import star_product, verify_homomorphism, verify_left_holomorphic, verify_section
from .latex import display_latex, field_latex, map_latex
from .lie.algebra import LieAlgebra, validate_algebra
from .lie.coordinates import CoordinateSystem, left_invariant_fields
from .quotient import hypersurface_check, projected_fields, quotient_embedding, quotient_model

COMMANDS = ("check", "embed", "product", "vfields", "quotient", "catalog")
FORMATS = ("text", "json", "latex")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    catalog: str | None = None
    format: str = "text"
    normalized: bool = False
    chart: str | None = None
    m_chart: str | None = None


@dataclass
class Output:
    data: dict
    text: list[str] = field(default_factory=list)
    latex: list[str] = field(default_factory=list)
    code: int = 0

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        lines = self.latex if fmt == "latex" else self.text
        return "\n".join(lines) + "\n"


def _load(cfg: RunConfig) -> dict:
    if cfg.catalog is not None:
        return cat.catalog_get(cfg.catalog).cr.to_json()
    try:
        with open(cfg.input, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {cfg.input}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{cfg.input} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")
    return data


def _load_cr(cfg: RunConfig) -> CRStructure:
    return CRStructure.from_json(_load(cfg))


def _chart(text: str | None) -> CoordinateSystem | None:
    if text is None:
        return None
    try:
        return CoordinateSystem.parse(text)
    except ValueError as exc:
        raise SchemaError(f"bad chart {text!r}: {exc}") from exc


def _charts(cfg: RunConfig, cr: CRStructure) -> tuple[CoordinateSystem | None, CoordinateSystem | None]:
    chart, m_chart = _chart(cfg.chart), _chart(cfg.m_chart)
    if chart is not None and chart.dim != cr.algebra.dim:
        raise SchemaError(f"chart {chart} does not cover all {cr.algebra.dim} basis indices")
    if m_chart is not None and m_chart.dim != cr.n + cr.k:
        raise SchemaError(f"m-chart {m_chart} does not cover all {cr.n + cr.k} m-frame positions")
    return chart, m_chart


def _status(ok: bool) -> str:
    return "pass" if ok else "FAIL"


# -- commands ---------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> Output:
    data = _load(cfg)
    if "horizontal" not in data:
        L = LieAlgebra.from_json(data)
        rep = validate_algebra(L)
        out = Output({"algebra": rep.to_json()}, code=0 if rep.valid else AlgebraInvalid.exit_code)
        out.text = [f"algebra: dim {L.dim}, step {rep.step}, {'valid' if rep.valid else 'INVALID'}"]
        out.text += [f"  {m}" for m in rep.messages]
        out.latex = [f"% algebra valid: {rep.valid}"]
        return out
    cr = CRStructure.from_json(data)
    rep = validate_cr(cr)
    code = 0
    if not rep.algebra.valid:
        code = AlgebraInvalid.exit_code
    elif not rep.valid:
        code = CRStructureInvalid.exit_code
    out = Output({"cr": rep.to_json()}, code=code)
    n, k = rep.type
    out.text = [
        f"type (n,k) = ({n},{k})",
        f"algebra valid: {rep.algebra.valid} (step {rep.algebra.step})",
        f"J^2 = -I: {rep.j_squared}",
        f"integrable: {rep.integrable}",
        f"h01 abelian: {rep.h01_abelian}",
        f"homogeneous: {rep.homogeneous}",
        f"valid: {rep.valid}",
    ] + [f"  {m}" for m in rep.messages]
    out.latex = [f"% CR structure of type ({n},{k}); valid: {rep.valid}"]
    return out


def cmd_embed(cfg: RunConfig) -> Output:
    cr = _load_cr(cfg)
    chart, m_chart = _charts(cfg, cr)
    emb = compute_embedding(cr, chart=chart, m_chart=m_chart)
    crid = verify_cr_identity(emb)
    inj = verify_injectivity(emb)
    report = None
    if cfg.normalized:
        emb, report = normalize_embedding(emb)
    data = emb.to_json()
    data["vars"] = list(emb.vars)
    data["cr_identity"] = crid.to_json()
    data["injectivity"] = inj.to_json()
    if report is not None:
        data["normal_form"] = report.to_json()
    out = Output(data, code=0 if crid.passed else 4)
    out.text = [f"embedding of type {tuple(cr.type)} in chart {emb.chart}"]
    for j, (lab, c) in enumerate(zip(emb.frame_labels, emb.components)):
        out.text.append(f"  [{j + 1}] ({lab}) {c.to_text()}")
    out.text.append(f"CR identity: {_status(crid.passed)}")
    out.text.append(f"triangular injectivity: {_status(inj.passed)} order {','.join(inj.order)}")
    if report is not None:
        out.text.append(f"normal form: {_status(report.passed)}")
    out.latex = [map_latex(emb.vars, emb.components)]
    return out


def cmd_product(cfg: RunConfig) -> Output:
    cr = _load_cr(cfg)
    sp = star_product(cr)
    sec = verify_section(cr)
    hol = verify_left_holomorphic(sp)
    emb = compute_embedding(cr, validate=False)
    hom = verify_homomorphism(cr, emb, sp)
    data = sp.to_json()
    data["section"] = sec.to_json()
    data["left_holomorphic"] = hol.to_json()
    data["homomorphism"] = hom.to_json()
    ok = sec.passed and hom.passed
    out = Output(data, code=0 if ok else 4)
    out.text = ["m * m' ="]
    out.text += [f"  [{j + 1}] {c.to_text()}" for j, c in enumerate(sp.map)]
    out.text += [
        f"section Phi(sigma(m)) = m: {_status(sec.passed)}",
        f"left holomorphic: {_status(hol.passed)}",
        f"iota(g g') = iota(g) * iota(g'): {_status(hom.passed)} {'' if hom.passed else hom.detail}".rstrip(),
    ]
    z = sp.names()[0]
    out.latex = [map_latex([*z, *sp.names()[2]], sp.map).replace(r"\mapsto", r"\mapsto_{\ast}")]
    return out


def cmd_vfields(cfg: RunConfig) -> Output:
    cr_data = _load(cfg)
    L = LieAlgebra.from_json(cr_data)
    rep = validate_algebra(L)
    if not rep.valid:
        raise AlgebraInvalid("; ".join(rep.messages))
    cs = _chart(cfg.chart) or CoordinateSystem.first_kind(L.dim)
    if cs.dim != L.dim:
        raise SchemaError(f"chart {cs} does not cover all {L.dim} basis indices")
    fields = left_invariant_fields(L, cs)
    bad = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            want = fields[0].scale(0)
            for k, c in L.bracket_basis(i, j).items():
                want = want + fields[k].scale(c)
            if fields[i].commutator(fields[j]) != want:
                bad.append([i + 1, j + 1])
    data = {"chart": str(cs), "fields": [f.to_json() for f in fields], "structure_constants_ok": not bad,
            "failures": bad}
    out = Output(data, code=0 if not bad else 4)
    out.text = [f"left-invariant fields in chart {cs}"]
    out.text += [f"  {lab}: {f.to_text()}" for lab, f in zip(L.labels, fields)]
    out.text.append(f"commutators match structure constants: {_status(not bad)}")
    out.latex = [rf"\overleftarrow{{{lab}}} = {field_latex(f.vars, f.coeffs)}" for lab, f in zip(L.labels, fields)]
    return out


def cmd_quotient(cfg: RunConfig) -> Output:
    cr = _load_cr(cfg)
    try:
        model = quotient_model(cr, chart=_charts(cfg, cr)[0])
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if not model.report.valid:
        out = Output({"subgroup": model.report.to_json()}, code=CRStructureInvalid.exit_code)
        out.text = ["subgroup rejected"] + [f"  {m}" for m in model.report.messages]
        out.latex = ["% subgroup rejected"]
        return out
    q = quotient_embedding(model)
    pf = projected_fields(model, q)
    hs = hypersurface_check(q)
    data = q.to_json()
    data["subgroup"] = model.report.to_json()
    data["projected_fields"] = pf.to_json()
    data["hypersurface"] = hs.to_json()
    ok = pf.cr_identity and pf.independent_of_p
    out = Output(data, code=0 if ok else 4)
    out.text = [f"quotient by p = span{{{', '.join(f'X{i}' for i in q.dropped)}}}: type ({cr.n},{q.k_prime})"]
    out.text += [f"  [{j + 1}] {c.to_text()}" for j, c in enumerate(q.components)]
    hidx = [j for j, i in enumerate(model.surviving_indices) if i in cr.horizontal]
    for j in hidx:
        i = model.surviving_indices[j]
        out.text.append(f"  projected X{i + 1}: {pf.fields[i].to_text()}")
    out.text.append(f"projected CR identity: {_status(pf.cr_identity)}")
    if hs.applicable:
        out.text.append(f"hypersurface: Im w = {hs.relation.to_text()}")
    else:
        out.text.append(f"hypersurface: {hs.message}")
    out.latex = [map_latex(q.vars, q.components)]
    if hs.applicable:
        out.latex.append(rf"\operatorname{{Im}} w = {display_latex(hs.relation)}")
    return out


def cmd_catalog(cfg: RunConfig) -> Output:
    if cfg.catalog is None and cfg.input is None:
        entries = [cat.catalog_get(n) for n in cat.NAMES]
        out = Output({"entries": [{"name": e.name, "description": e.description} for e in entries]})
        out.text = [f"{e.name}: {e.description}" for e in entries]
        out.latex = [rf"% {e.name}" for e in entries]
        return out
    name = cfg.catalog or cfg.input
    e = cat.catalog_get(name)
    out = Output(e.to_json())
    out.text = [json.dumps(e.cr.to_json(), indent=2)]
    out.latex = [rf"% {e.name}: {e.description}"]
    return out


DISPATCH = {
    "check": cmd_check,
    "embed": cmd_embed,
    "product": cmd_product,
    "vfields": cmd_vfields,
    "quotient": cmd_quotient,
    "catalog": cmd_catalog,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit code, document for stdout)."""
    try:
        out = DISPATCH[cfg.command](cfg)
    except CREmbedError as exc:
        print(f"crembed: {exc}", file=sys.stderr)
        return exc.exit_code, ""
    if out.code:
        print(f"crembed: {cfg.command} finished with exit code {out.code}", file=sys.stderr)
    return out.code, out.render(cfg.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crembed", description="Polynomial CR embeddings of nilpotent Lie groups.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="CR structure JSON file")
    p.add_argument("--catalog", metavar="NAME", help="use a built-in structure instead of a file")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--normalized", action="store_true", help="rescale horizontal components (embed)")
    p.add_argument("--chart", metavar="GROUPING", help='coordinate grouping on G, e.g. "{3,4,5},{1,2},{6}"')
    p.add_argument("--m-chart", metavar="GROUPING", help="grouping of m-frame positions for second-kind M coordinates")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.command, args.input, args.catalog, args.format, args.normalized, args.chart, args.m_chart)
    if args.command != "catalog" and (cfg.input is None) == (cfg.catalog is None):
        print("crembed: give exactly one of <file> or --catalog", file=sys.stderr)
        return 5
    code, doc = run(cfg)
    sys.stdout.write(doc)
    return code


if __name__ == "__main__":
    sys.exit(main())
