"""Command line interface: ``verify run`` and ``verify replay``.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
configuration error.
"""

from __future__ import annotations

import sys

import click

from normlab.verify import CONSTANTS, SuiteConfig, replay, run, write_witness


def _parse_float_token(token: str) -> float:
    token = token.strip().lower()
    if token in ("inf", "infinity", "oo"):
        return float("inf")
    return float(token)


def _parse_list(text: str, cast) -> tuple:
    return tuple(cast(tok) for tok in text.split(",") if tok.strip())


@click.group()
def main() -> None:
    """Verification suites for the norms-and-dyadic-analysis laboratory."""


@main.command("run")
@click.option("--suites", default="all", show_default=True,
              help="Comma-separated: core,duality,operators,interpolation,"
                   "dyadic,seqspace or 'all'.")
@click.option("--seed", default=42, show_default=True, type=int)
@click.option("--trials", default=200, show_default=True, type=int)
@click.option("--dims", default="2,4,8,16", show_default=True)
@click.option("--levels", default="2,4,8", show_default=True)
@click.option("--p", "p_grid", default="1,1.5,2,3,inf", show_default=True)
@click.option("--override", "overrides", multiple=True,
              help="NAME=VALUE constant override (repeatable); names: "
                   + ", ".join(sorted(CONSTANTS)) + ", golden:<check-id>.")
@click.option("--out", default=None, type=click.Path(dir_okay=False),
              help="Write the report to this path (default: stdout).")
@click.option("--witness-dir", default=None, type=click.Path(file_okay=False),
              help="Write one replayable witness file per failing check.")
def run_command(suites, seed, trials, dims, levels, p_grid, overrides, out,
                witness_dir) -> None:
    """Run the selected verification suites and emit a report."""
    try:
        override_map = {}
        for item in overrides:
            name, _, value = item.partition("=")
            if not _:
                raise ValueError(f"override {item!r} is not NAME=VALUE")
            override_map[name.strip()] = float(value)
        config = SuiteConfig(
            suites=_parse_list(suites, str),
            seed=seed,
            trials=trials,
            dims=_parse_list(dims, int),
            levels=_parse_list(levels, int),
            p_grid=_parse_list(p_grid, _parse_float_token),
            overrides=override_map,
        )
    except (ValueError, TypeError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(2)

    report = run(config)
    text = report.to_text()
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)

    failing = [r for r in report.records if not r.passed]
    if witness_dir and failing:
        import os

        os.makedirs(witness_dir, exist_ok=True)
        constants = dict(CONSTANTS)
        constants.update(config.overrides)
        for record in failing:
            if record.witness is None:
                continue
            path = os.path.join(
                witness_dir, record.check_id.replace(".", "_") + ".witness.json"
            )
            write_witness(path, record, constants)
            click.echo(f"witness: {path}", err=True)

    for record in failing:
        click.echo(
            f"FAIL {record.check_id} margin={record.worst_margin:.3e}"
            + (f" error={record.error}" if record.error else ""),
            err=True,
        )
    sys.exit(0 if report.passed else 1)


@main.command("replay")
@click.option("--witness", required=True, type=click.Path(exists=False))
def replay_command(witness) -> None:
    """Re-run one check on the inputs stored in a witness file."""
    import os

    if not os.path.exists(witness):
        click.echo(f"witness file not found: {witness}", err=True)
        sys.exit(2)
    try:
        record = replay(witness)
    except (ValueError, KeyError) as exc:
        click.echo(f"malformed witness: {exc}", err=True)
        sys.exit(2)
    status = "PASS" if record.passed else "FAIL"
    click.echo(f"{status} {record.check_id} margin={record.worst_margin:.6e}")
    sys.exit(0 if record.passed else 1)


if __name__ == "__main__":
    main()
