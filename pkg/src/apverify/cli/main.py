"""apverify command line."""

from __future__ import annotations

import sys

import click

from ..curves import build_family, curve, reflection_check, sqrt2_split_check
from .pipeline import Config, Pipeline, exit_code, verify_all
from .report import dumps


def _emit(obj, out=None):
    text = dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Recompute the proof that (1,1,1,1) is the only primitive progression (a^2, b^2, c^2, d^5)."""


@cli.command()
@click.option("--j", "j", type=click.IntRange(-2, 2), required=True)
def construct(j):
    """Print g_j, h_j, f_j and the family checks."""
    fam = build_family(j)
    data = fam.to_json()
    data["sqrt2_split"] = sqrt2_split_check(j)
    if j:
        data["reflection"] = reflection_check(abs(j))
    _emit(data)


@cli.command()
@click.option("--curve", "j", type=click.IntRange(-2, 2), required=True)
@click.option("--p", "p", type=int, default=None, help="prime (omit for R and all p <= 100)")
@click.option("--depth", type=int, default=None)
def solubility(j, p, depth):
    """Local solubility over R and Q_p."""
    from ..solubility import has_qp_points, has_real_points
    C = curve(j)
    if p is None:
        from .pipeline import _primes_upto
        out = {"real": has_real_points(C).to_json(),
               "qp": {str(q): has_qp_points(C, q).to_json() for q in _primes_upto(100)}}
    else:
        out = has_qp_points(C, p, depth).to_json()
    _emit(out)


@cli.command()
@click.option("--curve", "j", type=click.IntRange(-2, 2), default=1)
@click.option("--p", "p", type=int, required=True)
@click.option("--k", "k", type=click.IntRange(1, 4), default=None,
              help="only #C(F_{p^k}); default prints the L-polynomial and #J")
def count(j, p, k):
    """Point counts and #J(F_p)."""
    from ..counting import count_points, l_polynomial
    C = curve(j)
    if k is not None:
        _emit({"curve": j, "p": p, "k": k, "count": count_points(C, p, k)})
        return
    L = l_polynomial(C, p)
    _emit({"curve": j, "p": p, "l_polynomial": [str(a) for a in L.coeffs], "order": L(1)})


@cli.command()
@click.option("--curve", "j", type=click.IntRange(-2, 2), default=1)
@click.option("--p", "p", type=int, required=True)
@click.option("--seed", type=int, default=0)
def structure(j, p, seed):
    """Invariant factors and generators of J(F_p)."""
    from ..counting import group_structure
    _emit(group_structure(curve(j), p, seed=seed).to_json())


def _run(stages, **kw):
    pl = Pipeline(Config(**kw))
    report = pl.run(stages)
    return pl, report


@cli.command()
@click.option("--primes", default="7,13")
def sieve(primes):
    """Mordell-Weil sieve (C_1, G = <Q1, Q2>)."""
    ps = tuple(int(x) for x in primes.split(","))
    if ps != (7, 13):
        raise click.BadParameter("the sieve is implemented for the primes 7,13")
    pl, rep = _run(["mumford", "count", "structure", "sieve"], primes=(7, 13), sieve_primes=ps)
    _emit(pl.stages["sieve"])
    sys.exit(0 if pl.stages["sieve"]["ok"] else 1)


@cli.command()
@click.option("--p", "p", type=int, default=7)
@click.option("--series-order", type=int, default=20)
@click.option("--precision", type=int, default=4)
def chabauty(p, series_order, precision):
    """Tiny integrals, annihilator and the per-disc bound at p = 7."""
    if p != 7:
        raise click.BadParameter("the Chabauty step is implemented for p = 7")
    pl, rep = _run(["mumford", "count", "structure", "sieve", "chabauty"], primes=(7, 13),
                   series_order=series_order, precision=precision)
    _emit(pl.stages["chabauty"])
    sys.exit(0 if pl.stages["chabauty"]["ok"] else 1)


@cli.command()
@click.option("--curve", "j", type=click.IntRange(-2, 2), required=True)
@click.option("--bound", type=int, default=1000)
def search(j, bound):
    """Rational points of small height."""
    from ..solubility import search_rational_points
    pts = search_rational_points(curve(j), bound)
    _emit({"curve": j, "bound": bound, "points": [P.to_json() for P in pts]})


@cli.command("verify-all")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--bound", type=int, default=1000)
@click.option("--no-assumptions", is_flag=True, help="drop the ledger (verdict becomes conditional)")
@click.option("--timings/--no-timings", default=True)
def verify_all_cmd(out, bound, no_assumptions, timings):
    """Run the full chain and print the JSON report."""
    report, times = verify_all(Config(height_bound=bound, use_assumptions=not no_assumptions))
    text = dumps(report, times if timings else None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    thm = report["theorem"]
    click.echo(f"verdict: {thm['verdict']} ({thm['status']})", err=True)
    sys.exit(exit_code(report))


def main():  # pragma: no cover
    cli()


if __name__ == "__main__":  # pragma: no cover
    main()
