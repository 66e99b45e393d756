"""Command line: check, construct, lambda, enumerate, classify.

Exit status 0 on success, 1 when a parameter set is rejected or fails
verification, 2 on malformed input.
"""
from __future__ import annotations

import json
import os
import sys

import click

from . import sieve
from .realize import ConstructionError, SignChoice, construct, verify_transition
from .spectrum import character_table, parse_params, validate
from .taxonomy import (
    center_profile,
    classify_mphi1,
    closed_subsets,
    evenness_filter,
    kernel_phi,
    literature_notes,
    match_family,
    rank4_fusion_profiles,
)
from .tensor import lambda_tensor

SCHEMA = 1


class ParamsType(click.ParamType):
    name = "PARAMS"

    def convert(self, value, param, ctx):
        try:
            return parse_params(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class SignsType(click.ParamType):
    name = "SIGNS"

    def convert(self, value, param, ctx):
        try:
            return SignChoice.parse(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


params_option = click.option("--params", "params", type=ParamsType(), required=True,
                             help='Parameter set "d1,d2,d3,d4;p1,p2,p3,p4".')
signs_option = click.option("--signs", type=SignsType(), default="+,+,+", show_default=True,
                            help="Sign choices for the three rank-one rows.")
approx_option = click.option("--approx", is_flag=True, help="Add decimal renderings (approximate).")
format_option = click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text",
                             show_default=True)


def _emit(doc: dict, fmt: str, text_lines):
    if fmt == "json":
        click.echo(json.dumps({"schema": SCHEMA, **doc}, indent=1, ensure_ascii=False))
    else:
        for line in text_lines:
            click.echo(line)


def _approx(x) -> str:
    return f"~{float(x):.12g}"


def _reject(params, reason, fmt):
    _emit({"ok": False, "params": str(params), "reason": reason}, fmt, [f"reject {params}: {reason}"])
    sys.exit(1)


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Exact construction and census of noncommutative rank-6 reality-based algebras."""


@cli.command()
@params_option
@approx_option
@format_option
def check(params, approx, fmt):
    """Validate a parameter set and print its character table."""
    reason = validate(params)
    if reason is not None:
        _reject(params, reason, fmt)
    table = character_table(params)
    doc = {"ok": True, "params": str(params), "table": table.to_json()}
    lines = [f"ok {params}", f"n={table.n} (m_phi,m_chi)=({table.m_phi},{table.m_chi})"]
    labels = ["delta", "phi", "chi"]
    for name, row in zip(labels, table.rows()):
        lines.append(f"{name:>5}: " + " ".join(str(x) for x in row))
    if approx:
        doc["approx"] = {"m_phi": _approx(table.m_phi), "m_chi": _approx(table.m_chi)}
        lines.append(f"approx: m_phi {_approx(table.m_phi)}, m_chi {_approx(table.m_chi)}")
    _emit(doc, fmt, lines)


def _build(params, signs, fmt):
    reason = validate(params)
    if reason is not None:
        _reject(params, reason, fmt)
    try:
        return construct(params, signs)
    except ConstructionError as exc:
        _reject(params, str(exc), fmt)


@cli.command("construct")
@params_option
@signs_option
@approx_option
@format_option
def construct_cmd(params, signs, approx, fmt):
    """Build and verify the transition matrix and the matrices B_i."""
    basis = _build(params, signs, fmt)
    report = verify_transition(basis.transition, basis.table)
    doc = {"ok": report.ok, "basis": basis.to_json(), "violations": report.violations}
    lines = [f"params {basis.params}  signs {basis.signs}  permutation {list(basis.perm)}"]
    lines.append("transition matrix (rows delta, phi, r, u, s, t):")
    lines += ["  [" + ", ".join(row) + "]" for row in basis.transition.to_text()]
    for i, m in enumerate(basis.B):
        lines.append(f"B{i} = {m.to_text()}")
    lines.append("verified" if report.ok else "FAILED: " + "; ".join(report.violations))
    if approx:
        doc["approx"] = {"B": [[[_approx(x) for x in r] for r in m.rows()] for m in basis.B]}
        for i, m in enumerate(basis.B):
            lines.append(f"B{i} approx = {[[_approx(x) for x in r] for r in m.rows()]}")
    _emit(doc, fmt, lines)
    sys.exit(0 if report.ok else 1)


@cli.command("lambda")
@params_option
@signs_option
@approx_option
@format_option
def lambda_cmd(params, signs, approx, fmt):
    """Structure constants lambda_ijk in the input labeling."""
    basis = _build(params, signs, fmt)
    tensor = lambda_tensor(basis).relabel(basis.perm)
    doc = {"params": str(params), "tensor": tensor.to_json()}
    lines = tensor.products_text()
    lines.append(f"integral={tensor.is_integral} table_algebra={tensor.is_table_algebra}")
    if approx:
        doc["approx"] = [[i, j, k, _approx(v)] for i, j, k, v in tensor.entries() if v]
        lines += [f"lambda[{i}][{j}][{k}] {_approx(v)}" for i, j, k, v in tensor.entries() if v and len(v.terms) > 1]
    _emit(doc, fmt, lines)


@cli.command("enumerate")
@click.option("--max-order", type=click.IntRange(min=6), required=True, help="Largest order n.")
@click.option("--require-ta", is_flag=True, help="Keep only table algebras (all constants >= 0).")
@click.option("--jobs", type=click.IntRange(min=1), default=lambda: int(os.environ.get("RBA6_JOBS", "1") or 1),
              show_default="RBA6_JOBS or 1", help="Worker processes.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "md"]), default="json", show_default=True)
@click.option("--reference-view", is_flag=True,
              help="List circle products E∘K only up to order 50, as the published census does.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None)
def enumerate_cmd(max_order, require_ta, jobs, fmt, reference_view, output):
    """Enumerate integral parameter sets up to MAX_ORDER."""
    records = sieve.enumerate_census(max_order, require_ta=require_ta, jobs=jobs)
    if reference_view:
        records = sieve.reference_view(records)
    text = sieve.format_census(records, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@cli.command()
@params_option
@format_option
def classify(params, fmt):
    """Family label, closed subsets and feasibility checks."""
    basis = _build(params, SignChoice(), fmt)
    tensor = lambda_tensor(basis).relabel(basis.perm)
    table = character_table(params)
    closed = closed_subsets(tensor)
    label = match_family(params, tensor, closed)
    profile = center_profile(params)
    rank4 = rank4_fusion_profiles(params)
    literature = literature_notes(profile)
    for _, p in rank4:
        literature += [x for x in literature_notes(p) if x not in literature]
    doc = {
        "params": str(params),
        "n": str(table.n),
        "multiplicities": [str(table.m_phi), str(table.m_chi)],
        "integral": tensor.is_integral,
        "table_algebra": tensor.is_table_algebra,
        "primitive": all(c.is_trivial for c in closed),
        "closed_subsets": [c.to_json() for c in closed],
        "family": label.to_json(),
        "kernel_phi": kernel_phi(params, tensor).to_json(),
        "evenness": evenness_filter(tensor).to_json() if tensor.is_integral else None,
        "center_fusion": profile.to_json() if profile else None,
        "rank4_fusions": [{"K": list(K), "profile": p.to_json()} for K, p in rank4],
        "literature": literature,
        "mphi1": classify_mphi1(params, table, tensor).to_json() if table.m_phi == 1 else None,
    }
    lines = [
        f"params {params}  n={table.n}  (m_phi,m_chi)=({table.m_phi},{table.m_chi})",
        f"family: {label.text} [{label.tag}]" + (" (best effort)" if label.best_effort else ""),
        f"integral={doc['integral']} table_algebra={doc['table_algebra']} primitive={doc['primitive']}",
        "closed subsets: " + " ".join("{" + ",".join(map(str, c.indices)) + "}" for c in closed),
    ]
    if doc["evenness"] is not None:
        lines.append(f"evenness: {'pass' if doc['evenness']['passed'] else 'fail'} {doc['evenness']['witnesses']}")
    if profile:
        lines.append(f"center fusion: degrees {doc['center_fusion']['degrees']} "
                     f"multiplicities {doc['center_fusion']['multiplicities']}")
    for K, p in rank4:
        lines.append(f"rank-4 fusion K={list(K)}: degrees {[str(d) for d in p.degrees]} "
                     f"multiplicities {[str(m) for m in p.multiplicities]}")
    for note in doc["literature"]:
        lines.append(f"literature: {note['kind']} {note['degrees']}: {note['status']} ({note['source']})")
    _emit(doc, fmt, lines)


def main():
    cli()


if __name__ == "__main__":
    main()
