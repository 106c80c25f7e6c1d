"""Command-line interface.

Subcommands build the stretched products, enumerate valid schedules,
generate and verify blow-down certificates, and run the self-check
suites that cross-validate the rule tables against brute-force oracles.
Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time

import click

from . import __version__
from . import engine, oracles, projections, spaces
from .boundary_diagonals import (
    HCollection,
    generate_all,
    is_chain_order,
    is_fc_closed,
    is_intersection_closed,
)
from .diagonals import diagonal_of, enumerate_families, oracle_diagonal_meet, transversal_union
from .errors import CornercalcError
from .faces import DEFAULT_LABEL, relation_from_code
from .orders import FaceCollection, enumerate_intersection_orders
from ._rel import USING_COMPILED, transition_code


def _report(data: dict, out=None) -> None:
    data = {"version": __version__, **data}
    text = json.dumps(data, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _fail(exc: Exception) -> None:
    click.echo(
        json.dumps({"ok": False, "version": __version__,
                    "error": str(exc), "type": type(exc).__name__}),
        err=True,
    )
    sys.exit(1)


def _build_state(n: int, space: str, labels):
    if space == "bo":
        return spaces.build_bo(n, labels)
    if space == "ob":
        return spaces.build_ob(n, labels)
    return spaces.build_scat(n)


@click.group()
@click.version_option(__version__)
def main():
    """Combinatorial calculus of iterated boundary blow-up."""


@main.command()
@click.option("--n", type=int, required=True, help="number of factors")
@click.option("--space", type=click.Choice(["bo", "ob", "scat"]), default="bo")
@click.option("--labels", multiple=True, default=(DEFAULT_LABEL,))
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json")
@click.option("--out", type=click.Path(), default=None)
def build(n, space, labels, fmt, out):
    """Build a stretched product and print its relation matrix or DOT graph."""
    try:
        state = _build_state(n, space, labels)
    except CornercalcError as exc:
        _fail(exc)
    if fmt == "dot":
        text = engine.export_dot(state)
        if out:
            open(out, "w").write(text + "\n")
        else:
            click.echo(text)
        return
    byid = state.tracked_map()
    _report(
        {
            "space": space,
            "n": n,
            "centers": [byid[cid].label(byid) for cid in state.history],
            "hypersurfaces": [
                h.face.key() if h.kind == "original"
                else f"ff({byid[h.center_id].label(byid)})"
                for h in engine.hypersurfaces(state)
            ],
            "matrix": engine.relation_matrix(state),
        },
        out,
    )


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--space", type=click.Choice(["bo", "scat"]), default="scat")
@click.option("--factor", type=int, default=None, help="factor projected off")
@click.option("--out", type=click.Path(), default=None)
def certify(n, space, factor, out):
    """Generate a blow-down certificate for the stretched projection."""
    try:
        if space == "scat":
            cert = projections.certify_pi_scat(n, factor)
        else:
            cert = projections.certify_pi_bo(n, {factor if factor else n})
    except CornercalcError as exc:
        _fail(exc)
    _report({"certificate": cert.to_json()}, out)


@main.command()
@click.argument("certificate", type=click.Path(exists=True), required=False)
@click.option("--suite", type=click.Choice(
    ["lemma-oracle", "order-independence", "diag-union", "fc-closure",
     "projection"]), default=None)
@click.option("--n", type=int, default=4)
@click.option("--seed", type=int, default=0)
@click.option("--samples", type=int, default=50)
@click.option("--budget-seconds", type=float, default=None,
              help="fail if the run exceeds this wall time")
@click.option("--out", type=click.Path(), default=None)
def verify(certificate, suite, n, seed, samples, budget_seconds, out):
    """Verify a certificate file, or run a named self-check suite."""
    if certificate is None and suite is None:
        click.echo("error: give a certificate file or --suite", err=True)
        sys.exit(2)
    t0 = time.time()
    try:
        if certificate:
            with open(certificate) as fh:
                data = json.load(fh)
            cert = projections.BlowdownCertificate.from_json(
                data.get("certificate", data)
            )
            rep = projections.verify_certificate(cert)
            rep["b_normal"] = projections.check_b_normality(cert)["ok"]
        else:
            rep = _run_suite(suite, n, seed, samples)
    except CornercalcError as exc:
        _fail(exc)
    elapsed = time.time() - t0
    if budget_seconds is not None and elapsed > budget_seconds:
        rep["ok"] = False
        rep["budget_exceeded"] = elapsed
    _report(rep, out)
    if not rep.get("ok"):
        sys.exit(1)


def _random_order(faces, rng) -> tuple:
    """Sample a uniform-ish valid blow-up schedule by greedy extension:
    a face may come next once every intersection it forms with an
    already-placed ncnt partner is itself already placed."""
    from .faces import Relation, intersect, relation_of

    placed: list = []
    remaining = list(faces)
    while remaining:
        rng.shuffle(remaining)
        for f in remaining:
            if all(
                relation_of(f, g) is not Relation.NCNT
                or intersect(f, g) in placed
                for g in placed
            ):
                placed.append(f)
                remaining.remove(f)
                break
        else:
            raise RuntimeError("schedule sampler dead-ended")
    return tuple(placed)


def _run_suite(suite: str, n: int, seed: int, samples: int) -> dict:
    rng = random.Random(seed)
    t0 = time.time()
    if suite == "lemma-oracle":
        n = min(n, 5)
        mismatches = 0
        total = 0
        masks = range(1, 2 ** n)
        for m1, m2, mc in itertools.permutations(masks, 3):
            total += 1
            got = relation_from_code(transition_code(m1, m2, mc))
            want = oracles.lift_relation_oracle(m1, m2, mc)
            if got is not want:
                mismatches += 1
        return {"ok": mismatches == 0, "suite": suite, "n": n,
                "triples": total, "mismatches": mismatches,
                "seconds": round(time.time() - t0, 2)}
    if suite == "order-independence":
        nn = min(n, 4)
        faces = spaces.bo_centers(nn)
        mats = set()
        count = 0
        if nn <= 3:
            orders = (o.faces for o in enumerate_intersection_orders(faces, nn))
        else:
            orders = (_random_order(faces, rng) for _ in range(samples))
        for order in orders:
            st = engine.init(nn, list(order))
            for f in order:
                st = engine.blow_up(st, st.find_face(f))
            mats.add(json.dumps(engine.relation_matrix(st), sort_keys=True))
            count += 1
        return {"ok": len(mats) == 1, "suite": suite, "n": nn, "orders": count,
                "distinct_matrices": len(mats),
                "seconds": round(time.time() - t0, 2), "seed": seed}
    if suite == "diag-union":
        bad = 0
        total = 0
        fams = list(enumerate_families(min(n, 5)))
        for f1, f2 in itertools.combinations(fams, 2):
            total += 1
            got = diagonal_of(transversal_union(f1, f2))
            want = oracle_diagonal_meet(f1, f2)
            if got != want:
                bad += 1
        return {"ok": bad == 0, "suite": suite, "pairs": total,
                "mismatches": bad, "seconds": round(time.time() - t0, 2)}
    if suite == "fc-closure":
        ctx = FaceCollection(3, tuple(spaces.bo_centers(3)))
        items = list(generate_all(ctx).items)
        bad = 0
        total = 0
        for k in range(len(items) + 1):
            for combo in itertools.combinations(items, k):
                total += 1
                g = HCollection(tuple(combo), ctx)
                if is_fc_closed(g) != is_intersection_closed(g):
                    bad += 1
        return {"ok": bad == 0, "suite": suite, "subsets": total,
                "mismatches": bad, "seconds": round(time.time() - t0, 2)}
    # projection
    cert = projections.certify_pi_scat(min(n, 4))
    rep = projections.verify_certificate(cert)
    rep["b_normal"] = projections.check_b_normality(cert)["ok"]
    rep["suite"] = suite
    rep["seconds"] = round(time.time() - t0, 2)
    return rep


@main.command("enumerate-orders")
@click.option("--n", type=int, default=3)
@click.option("--space", type=click.Choice(["bo", "scat"]), default="bo")
@click.option("--limit", type=int, default=100)
@click.option("--out", type=click.Path(), default=None)
def enumerate_orders(n, space, limit, out):
    """List valid schedules: intersection-orders of the face collection,
    or chain-orders of the boundary-diagonal collection."""
    orders = []
    if space == "bo":
        faces = spaces.bo_centers(n)
        for order in enumerate_intersection_orders(faces, n):
            orders.append([repr(f) for f in order.faces])
            if len(orders) >= limit:
                break
    else:
        faces, diags = spaces.scat_centers(n)
        ctx = FaceCollection(n, tuple(faces))
        for perm in itertools.permutations(diags):
            if is_chain_order(HCollection(perm, ctx)):
                orders.append([repr(h) for h in perm])
                if len(orders) >= limit:
                    break
    _report({"n": n, "space": space, "count": len(orders),
             "orders": orders}, out)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--space", type=click.Choice(["bo", "ob", "scat"]), default="bo")
@click.option("--labels", multiple=True, default=(DEFAULT_LABEL,))
def stats(n, space, labels):
    """Center and hypersurface counts plus build time."""
    t0 = time.time()
    state = _build_state(n, space, labels)
    _report(
        {
            "space": space,
            "n": n,
            "centers": len(state.history),
            "hypersurfaces": len(engine.hypersurfaces(state)),
            "compiled_kernel": USING_COMPILED,
            "seconds": round(time.time() - t0, 3),
        }
    )


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--space", type=click.Choice(["bo", "ob", "scat"]), default="bo")
@click.option("--labels", multiple=True, default=(DEFAULT_LABEL,))
@click.option("--out", type=click.Path(), default=None)
def export(n, space, labels, out):
    """Export the containment poset of the built space as DOT."""
    state = _build_state(n, space, labels)
    text = engine.export_dot(state)
    if out:
        open(out, "w").write(text + "\n")
    else:
        click.echo(text)
